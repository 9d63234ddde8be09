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
#pragma once

// ((n,n))-threshold quantum secret sharing where reconstruction needs only
// classical messages. The dealer hides a one-qubit secret behind a random
// bit flip, spreads it over an n-qubit cat state, and hands each player one
// qubit plus one bit of an XOR-sharing of the flip. To reconstruct, every
// non-receiver measures in the Hadamard basis and sends (y_i, x_i) to the
// receiver, who undoes the phase with Z and the flip with N.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ghzlab/json_format.hpp"
#include "ghzlab/qsim.hpp"
#include "ghzlab/rng.hpp"

namespace ghzlab::protocol {

using qsim::Complex;

/// Bits each non-receiver sends during reconstruction: y_i and x_i.
inline constexpr std::size_t kBitsPerMessage = 2;

class Secret {
 public:
  /// Throws ArgumentError unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
  Secret(Complex alpha, Complex beta);

  static Secret zero();
  static Secret one();
  static Secret plus();
  static Secret minus();
  /// (|0> + i|1>) / sqrt(2).
  static Secret plus_i();

  /// Looks up one of "zero", "one", "plus", "minus", "i".
  static std::optional<Secret> preset(std::string_view name);

  /// Uniform on the Bloch sphere: cos(polar) and azimuth drawn uniformly.
  static Secret haar_random(Rng& rng);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  qsim::StateVector state() const { return qsim::make_qubit(alpha_, beta_); }

 private:
  Complex alpha_;
  Complex beta_;
};

/// Names accepted by Secret::preset, in canonical order.
inline constexpr std::string_view kPresetNames[] = {"zero", "one", "plus", "minus", "i"};

struct Share {
  std::size_t player;  // 1..n
  int x_bit;
  std::size_t qubit;   // qubit of the joint state held by this player
};

struct DealtState {
  std::size_t n;
  qsim::StateVector joint_state;
  std::vector<Share> shares;
  // Dealer's flip bit. Never shown to players; kept so audits can check
  // the XOR-sharing against ground truth.
  int dealer_x;
};

struct Message {
  std::size_t sender;
  std::size_t round;
  int y_bit;
  int x_bit;
};

struct ProtocolTranscript {
  std::size_t n;
  std::uint64_t seed;
  std::size_t receiver;
  int dealer_x;
  std::vector<int> x_bits;  // indexed by player - 1, all n players
  std::vector<Message> messages;
  int y_parity;
  int x_parity;
  std::size_t classical_bits_sent;
  qsim::StateVector reconstructed;
  std::optional<double> fidelity_vs_secret;

  /// y_i in sender order.
  std::vector<int> y_bits() const;
};

// Dealer steps: flip, expansion, distribution. Draw order from rng is fixed:
// the flip bit x, then x_1 .. x_{n-1}; x_n closes the XOR to x.
// n = 1 is a degenerate pass-through with a single share.
DealtState deal(const Secret& secret, std::size_t n, Rng& rng);

// Reconstruction towards `receiver`. Non-receivers act in ascending player
// order, each drawing one uniform from rng for its measurement.
ProtocolTranscript reconstruct(const DealtState& dealt, std::size_t receiver, Rng& rng);

/// deal + reconstruct off a single generator seeded with `seed`.
ProtocolTranscript run_protocol(const Secret& secret, std::size_t n, std::size_t receiver,
                                std::uint64_t seed);

struct BaselineResources {
  std::uint64_t singlets;
  std::uint64_t total_qubits;
};

struct QsscrResources {
  std::uint64_t qubits;
  std::uint64_t classical_bits;
};

/// Teleportation-based reconstruction: ((n^2 - n) / 2, n^2).
BaselineResources teleport_baseline_resources(std::uint64_t n);

/// This scheme: (n, 2(n - 1)).
QsscrResources qsscr_resources(std::uint64_t n);

Json transcript_to_json(const ProtocolTranscript& t);
ProtocolTranscript transcript_from_json(const Json& doc);

/// Dealer-side report: the x-sharing, the flip bit and the joint state.
Json dealt_to_json(const DealtState& dealt, std::uint64_t seed);

}  // namespace ghzlab::protocol
