// Copyright 2026 The ghzlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "ghzlab/protocol.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ghzlab/errors.hpp"

namespace ghzlab::protocol {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int parity(const std::vector<int>& bits) {
  int p = 0;
  for (int b : bits) p ^= b;
  return p;
}

Json bits_json(const std::vector<int>& bits) {
  Json arr = Json::array();
  for (int b : bits) arr.push_back(b);
  return arr;
}

Json amplitudes_json(const qsim::StateVector& state) {
  Json re = Json::array();
  Json im = Json::array();
  for (const Complex& a : state.amplitudes()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return Json{{"re", re}, {"im", im}};
}

// Nonzero amplitudes only; the dealt state lives on |0^n> and |1^n>.
Json support_json(const qsim::StateVector& state) {
  Json index = Json::array();
  Json re = Json::array();
  Json im = Json::array();
  const auto amps = state.amplitudes();
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    if (amps[k] == Complex(0.0)) continue;
    index.push_back(k);
    re.push_back(amps[k].real());
    im.push_back(amps[k].imag());
  }
  return Json{{"index", index}, {"re", re}, {"im", im}};
}

std::vector<int> read_bits(const Json& arr, const char* field) {
  if (!arr.is_array()) throw ArgumentError(std::string("transcript field '") + field + "' is not an array");
  std::vector<int> bits;
  for (const auto& v : arr) {
    const int b = v.get<int>();
    if (b != 0 && b != 1) throw ArgumentError(std::string("non-bit value in '") + field + "'");
    bits.push_back(b);
  }
  return bits;
}

}  // namespace

// --------------------------------------------------------------------- Secret

Secret::Secret(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > qsim::kAlgebraTol) {
    throw ArgumentError("secret is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(norm));
  }
}

Secret Secret::zero() { return {1.0, 0.0}; }
Secret Secret::one() { return {0.0, 1.0}; }
Secret Secret::plus() { return {kInvSqrt2, kInvSqrt2}; }
Secret Secret::minus() { return {kInvSqrt2, -kInvSqrt2}; }
Secret Secret::plus_i() { return {kInvSqrt2, Complex(0.0, kInvSqrt2)}; }

std::optional<Secret> Secret::preset(std::string_view name) {
  if (name == "zero") return zero();
  if (name == "one") return one();
  if (name == "plus") return plus();
  if (name == "minus") return minus();
  if (name == "i") return plus_i();
  return std::nullopt;
}

Secret Secret::haar_random(Rng& rng) {
  const double cos_polar = 2.0 * rng.uniform() - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * rng.uniform();
  const double half = 0.5 * std::acos(cos_polar);
  const Complex alpha = std::cos(half);
  const Complex beta = std::polar(std::sin(half), azimuth);
  // Renormalize away the last ulp so the 1e-12 check never trips.
  const double scale = 1.0 / std::sqrt(std::norm(alpha) + std::norm(beta));
  return {alpha * scale, beta * scale};
}

// ------------------------------------------------------------------ protocol

std::vector<int> ProtocolTranscript::y_bits() const {
  std::vector<int> ys;
  ys.reserve(messages.size());
  for (const auto& m : messages) ys.push_back(m.y_bit);
  return ys;
}

DealtState deal(const Secret& secret, std::size_t n, Rng& rng) {
  if (n < 1) throw ArgumentError("player count must be at least 1");
  if (n > qsim::qubit_cap()) {
    throw SizeError("player count " + std::to_string(n) + " exceeds qubit cap " +
                    std::to_string(qsim::qubit_cap()));
  }

  // Partial encryption: N swaps the amplitudes.
  const int x = rng.bit();
  const Complex a = x ? secret.beta() : secret.alpha();
  const Complex b = x ? secret.alpha() : secret.beta();

  // Expansion into a|0^n> + b|1^n>.
  std::vector<Complex> amps(std::size_t{1} << n);
  amps.front() = a;
  amps.back() = b;
  qsim::StateVector joint(std::move(amps));

  // Distribution: uniform x-string with XOR equal to x.
  std::vector<Share> shares;
  shares.reserve(n);
  int running = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const int bit = rng.bit();
    running ^= bit;
    shares.push_back({i, bit, i});
  }
  shares.push_back({n, running ^ x, n});

  return {n, std::move(joint), std::move(shares), x};
}

ProtocolTranscript reconstruct(const DealtState& dealt, std::size_t receiver, Rng& rng) {
  const std::size_t n = dealt.n;
  if (receiver < 1 || receiver > n) {
    throw ArgumentError("receiver " + std::to_string(receiver) + " outside [1, " + std::to_string(n) + "]");
  }

  const auto hadamard = qsim::Gate1Q::hadamard();
  qsim::StateVector state = dealt.joint_state;
  std::vector<Message> messages;
  std::vector<int> x_bits(n);
  for (const Share& share : dealt.shares) x_bits[share.player - 1] = share.x_bit;

  for (const Share& share : dealt.shares) {
    if (share.player == receiver) continue;
    state = qsim::apply_gate(state, hadamard, share.qubit);
    auto m = qsim::measure_qubit(state, share.qubit, rng.uniform());
    state = std::move(m.post_state);
    messages.push_back({share.player, 1, m.record.outcome, share.x_bit});
  }

  // Receiver side: parities of what arrived, plus its own x bit.
  int y_parity = 0;
  int x_parity = x_bits[receiver - 1];
  for (const Message& m : messages) {
    y_parity ^= m.y_bit;
    x_parity ^= m.x_bit;
  }
  const std::size_t own_qubit = dealt.shares[receiver - 1].qubit;
  if (y_parity) state = qsim::apply_gate(state, qsim::Gate1Q::phase_flip(), own_qubit);
  if (x_parity) state = qsim::apply_gate(state, qsim::Gate1Q::negation(), own_qubit);

  if (x_parity != parity(x_bits)) throw InternalError("x parity disagrees with the shares");

  return {n,
          0,
          receiver,
          dealt.dealer_x,
          std::move(x_bits),
          messages,
          y_parity,
          x_parity,
          messages.size() * kBitsPerMessage,
          qsim::single_qubit_factor(state, own_qubit),
          std::nullopt};
}

ProtocolTranscript run_protocol(const Secret& secret, std::size_t n, std::size_t receiver,
                                std::uint64_t seed) {
  if (n >= 1 && (receiver < 1 || receiver > n)) {
    throw ArgumentError("receiver " + std::to_string(receiver) + " outside [1, " + std::to_string(n) + "]");
  }
  Rng rng(seed);
  const DealtState dealt = deal(secret, n, rng);
  ProtocolTranscript t = reconstruct(dealt, receiver, rng);
  t.seed = seed;
  return t;
}

BaselineResources teleport_baseline_resources(std::uint64_t n) {
  if (n < 1) throw ArgumentError("player count must be at least 1");
  if (n > 0xffffffffULL) throw SizeError("player count too large for exact resource counts");
  return {n * (n - 1) / 2, n * n};
}

QsscrResources qsscr_resources(std::uint64_t n) {
  if (n < 1) throw ArgumentError("player count must be at least 1");
  return {n, kBitsPerMessage * (n - 1)};
}

// ------------------------------------------------------------- serialization

Json transcript_to_json(const ProtocolTranscript& t) {
  Json messages = Json::array();
  for (const Message& m : t.messages) {
    messages.push_back(Json{{"sender", m.sender}, {"round", m.round}, {"y", m.y_bit}, {"x", m.x_bit}});
  }
  Json doc{{"version", kReportVersion},
           {"n", t.n},
           {"seed", t.seed},
           {"receiver", t.receiver},
           {"dealer_x", t.dealer_x},
           {"x_bits", bits_json(t.x_bits)},
           {"y_bits", bits_json(t.y_bits())},
           {"y_parity", t.y_parity},
           {"x_parity", t.x_parity},
           {"classical_bits_sent", t.classical_bits_sent},
           {"reconstructed", amplitudes_json(t.reconstructed)},
           {"messages", messages}};
  if (t.fidelity_vs_secret) doc["fidelity_vs_secret"] = *t.fidelity_vs_secret;
  return doc;
}

ProtocolTranscript transcript_from_json(const Json& doc) {
  try {
    if (doc.at("version").get<int>() != kReportVersion) {
      throw ArgumentError("unsupported transcript version");
    }
    const auto n = doc.at("n").get<std::size_t>();
    const auto receiver = doc.at("receiver").get<std::size_t>();
    if (n < 1 || receiver < 1 || receiver > n) throw ArgumentError("transcript has invalid n/receiver");

    std::vector<int> x_bits = read_bits(doc.at("x_bits"), "x_bits");
    std::vector<int> y_bits = read_bits(doc.at("y_bits"), "y_bits");
    if (x_bits.size() != n || y_bits.size() != n - 1) {
      throw ArgumentError("transcript bit arrays have the wrong length");
    }

    std::vector<Message> messages;
    std::size_t next_y = 0;
    for (std::size_t p = 1; p <= n; ++p) {
      if (p == receiver) continue;
      messages.push_back({p, 1, y_bits[next_y++], x_bits[p - 1]});
    }

    const auto& rec = doc.at("reconstructed");
    const auto re = rec.at("re").get<std::vector<double>>();
    const auto im = rec.at("im").get<std::vector<double>>();
    if (re.size() != 2 || im.size() != 2) throw ArgumentError("reconstructed state must have 2 amplitudes");

    ProtocolTranscript t{n,
                         doc.at("seed").get<std::uint64_t>(),
                         receiver,
                         doc.at("dealer_x").get<int>(),
                         std::move(x_bits),
                         std::move(messages),
                         doc.at("y_parity").get<int>(),
                         doc.at("x_parity").get<int>(),
                         doc.at("classical_bits_sent").get<std::size_t>(),
                         qsim::make_qubit({re[0], im[0]}, {re[1], im[1]}),
                         std::nullopt};
    if (doc.contains("fidelity_vs_secret")) t.fidelity_vs_secret = doc["fidelity_vs_secret"].get<double>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed transcript: ") + e.what());
  }
}

Json dealt_to_json(const DealtState& dealt, std::uint64_t seed) {
  Json shares = Json::array();
  std::vector<int> x_bits;
  for (const Share& s : dealt.shares) {
    shares.push_back(Json{{"player", s.player}, {"x_bit", s.x_bit}, {"qubit", s.qubit}});
    x_bits.push_back(s.x_bit);
  }
  return Json{{"version", kReportVersion},
              {"n", dealt.n},
              {"seed", seed},
              {"dealer_x", dealt.dealer_x},
              {"x_bits", bits_json(x_bits)},
              {"shares", shares},
              {"joint_state", support_json(dealt.joint_state)}};
}

}  // namespace ghzlab::protocol
