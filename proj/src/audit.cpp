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
#include "ghzlab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghzlab/errors.hpp"
#include "ghzlab/rng.hpp"

namespace ghzlab::audit {
namespace {

void check_subset(std::size_t n, std::span<const std::size_t> subset) {
  if (subset.empty()) throw ArgumentError("coalition must be nonempty");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t p : subset) {
    if (p < 1 || p > n) {
      throw ArgumentError("player " + std::to_string(p) + " outside [1, " + std::to_string(n) + "]");
    }
    if (seen[p]) throw ArgumentError("duplicate player " + std::to_string(p) + " in coalition");
    seen[p] = true;
  }
}

// Joint state the dealer hands out for flip bit x.
qsim::StateVector expanded_state(const protocol::Secret& secret, std::size_t n, int x) {
  std::vector<qsim::Complex> amps(std::size_t{1} << n);
  amps.front() = x ? secret.beta() : secret.alpha();
  amps.back() = x ? secret.alpha() : secret.beta();
  return qsim::StateVector(std::move(amps));
}

Json complex_json(qsim::Complex c) { return Json::array({c.real(), c.imag()}); }

Json subset_json(const std::vector<std::size_t>& subset) {
  Json arr = Json::array();
  for (std::size_t p : subset) arr.push_back(p);
  return arr;
}

}  // namespace

// -------------------------------------------------------------------- CqState

CqState::CqState(std::size_t s, std::vector<Eigen::MatrixXcd> blocks) : s_(s), blocks_(std::move(blocks)) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << s_);
  if (blocks_.size() != (std::size_t{1} << s_)) throw ArgumentError("cq state needs 2^s blocks");
  for (const auto& b : blocks_) {
    if (b.rows() != dim || b.cols() != dim) throw ArgumentError("cq block has the wrong shape");
  }
}

double CqState::trace() const {
  double t = 0.0;
  for (const auto& b : blocks_) t += b.trace().real();
  return t;
}

double CqState::min_eigenvalue() const {
  double lowest = 0.0;
  bool first = true;
  for (const auto& b : blocks_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(b, Eigen::EigenvaluesOnly);
    const double m = solver.eigenvalues().minCoeff();
    lowest = first ? m : std::min(lowest, m);
    first = false;
  }
  return lowest;
}

bool CqState::is_positive_semidefinite(double floor) const { return min_eigenvalue() >= floor; }

Eigen::MatrixXcd CqState::dense() const {
  if (s_ > kMaxSweepPlayers) throw SizeError("dense cq state limited to 6 qubits");
  const auto block_dim = static_cast<Eigen::Index>(std::size_t{1} << s_);
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t c = 0; c < blocks_.size(); ++c) {
    const auto offset = static_cast<Eigen::Index>(c) * block_dim;
    out.block(offset, offset, block_dim, block_dim) = blocks_[c];
  }
  return out;
}

qsim::DensityMatrix CqState::quantum_marginal() const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(blocks_.front().rows(), blocks_.front().cols());
  for (const auto& b : blocks_) sum += b;
  return qsim::DensityMatrix(std::move(sum));
}

double cq_trace_distance(const CqState& a, const CqState& b) {
  if (a.num_qubits() != b.num_qubits()) throw ArgumentError("cq_trace_distance: sizes differ");
  double total = 0.0;
  for (std::size_t c = 0; c < a.blocks().size(); ++c) {
    total += qsim::hermitian_trace_norm(a.blocks()[c] - b.blocks()[c]);
  }
  return std::clamp(0.5 * total, 0.0, 1.0);
}

// -------------------------------------------------------------- collusion view

CollusionView collusion_view(const protocol::Secret& secret, std::size_t n,
                             std::span<const std::size_t> subset) {
  if (n < 1) throw ArgumentError("player count must be at least 1");
  check_subset(n, subset);
  const std::size_t s = subset.size();

  // Player i holds qubit i, so the coalition's qubits are its player indices.
  const qsim::DensityMatrix branch[2] = {
      qsim::reduced_density(expanded_state(secret, n, 0), subset),
      qsim::reduced_density(expanded_state(secret, n, 1), subset),
  };

  const std::size_t visible_count = std::size_t{1} << s;
  const auto block_dim = static_cast<Eigen::Index>(visible_count);
  std::vector<double> classical(visible_count, 0.0);
  std::vector<Eigen::MatrixXcd> blocks(visible_count, Eigen::MatrixXcd::Zero(block_dim, block_dim));
  std::map<std::pair<std::uint64_t, int>, qsim::DensityMatrix> quantum_part;

  // Each flip value has weight 1/2 and each of its 2^(n-1) strings 2^-(n-1).
  const std::uint64_t free_strings = std::uint64_t{1} << (n - 1);
  const double weight = 0.5 / static_cast<double>(free_strings);
  for (int x = 0; x < 2; ++x) {
    for (std::uint64_t head = 0; head < free_strings; ++head) {
      // bits[i-1] = x_i; the first n-1 come from head, x_n closes the parity.
      std::vector<int> bits(n);
      int running = 0;
      for (std::size_t i = 1; i < n; ++i) {
        bits[i - 1] = static_cast<int>((head >> (n - 1 - i)) & 1U);
        running ^= bits[i - 1];
      }
      bits[n - 1] = running ^ x;

      std::uint64_t visible = 0;
      for (std::size_t p : subset) visible = (visible << 1) | static_cast<std::uint64_t>(bits[p - 1]);

      classical[visible] += weight;
      blocks[visible] += weight * branch[x].matrix();
      quantum_part.try_emplace({visible, x}, branch[x]);
    }
  }

  std::vector<std::size_t> members(subset.begin(), subset.end());
  return {std::move(members), std::move(classical), std::move(quantum_part), CqState(s, std::move(blocks))};
}

double privacy_distance(const protocol::Secret& a, const protocol::Secret& b, std::size_t n,
                        std::span<const std::size_t> subset) {
  return cq_trace_distance(collusion_view(a, n, subset).averaged_view,
                           collusion_view(b, n, subset).averaged_view);
}

CorrectnessResult correctness_check(const protocol::Secret& secret, std::size_t n,
                                    std::size_t receiver, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  CorrectnessResult result{1.0, {}};
  result.transcripts.reserve(trials);
  const qsim::StateVector original = secret.state();
  for (std::size_t k = 0; k < trials; ++k) {
    auto t = protocol::run_protocol(secret, n, receiver, derive_seed(seed, k));
    const double f = qsim::fidelity(t.reconstructed, original);
    t.fidelity_vs_secret = f;
    result.min_fidelity = std::min(result.min_fidelity, f);
    result.transcripts.push_back(std::move(t));
  }
  return result;
}

// ---------------------------------------------------------------------- sweep

bool AuditReport::passed() const {
  const bool privacy_ok = std::all_of(privacy.begin(), privacy.end(),
                                      [](const PrivacyCase& c) { return c.informational || c.passed; });
  const bool correctness_ok = std::all_of(correctness.begin(), correctness.end(),
                                          [](const CorrectnessCase& c) { return c.passed; });
  return privacy_ok && correctness_ok;
}

std::vector<std::pair<NamedSecret, NamedSecret>> secret_pairs(std::uint64_t seed, std::size_t random_pairs) {
  std::vector<NamedSecret> presets;
  for (std::string_view name : protocol::kPresetNames) {
    presets.push_back({std::string(name), *protocol::Secret::preset(name)});
  }
  std::vector<std::pair<NamedSecret, NamedSecret>> pairs;
  for (std::size_t i = 0; i < presets.size(); ++i) {
    for (std::size_t j = i + 1; j < presets.size(); ++j) pairs.emplace_back(presets[i], presets[j]);
  }
  Rng rng(derive_seed(seed, 0xa0d17));
  for (std::size_t k = 0; k < random_pairs; ++k) {
    NamedSecret a{"random" + std::to_string(k) + "a", protocol::Secret::haar_random(rng)};
    NamedSecret b{"random" + std::to_string(k) + "b", protocol::Secret::haar_random(rng)};
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

AuditReport run_audit(const AuditOptions& options) {
  const std::size_t n = options.n;
  if (n < 1) throw ArgumentError("player count must be at least 1");
  if (n > kMaxSweepPlayers) {
    throw SizeError("audit is limited to n <= " + std::to_string(kMaxSweepPlayers) +
                    " (coalition views grow as 4^s)");
  }
  if (options.subset) check_subset(n, *options.subset);

  AuditReport report{n, options.seed, {}, {}, {}, std::nullopt, true};
  const auto pairs = secret_pairs(options.seed, options.random_pairs);
  for (const auto& [a, b] : pairs) {
    for (const NamedSecret* s : {&a, &b}) {
      const bool known = std::any_of(report.secrets.begin(), report.secrets.end(),
                                     [&](const NamedSecret& e) { return e.label == s->label; });
      if (!known) report.secrets.push_back(*s);
    }
  }

  std::vector<std::vector<std::size_t>> coalitions;
  if (options.subset) {
    coalitions.push_back(*options.subset);
  } else {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      std::vector<std::size_t> members;
      for (std::size_t p = 1; p <= n; ++p) {
        if (mask & (std::uint64_t{1} << (p - 1))) members.push_back(p);
      }
      coalitions.push_back(std::move(members));
    }
  }

  for (const auto& coalition : coalitions) {
    const bool full = coalition.size() == n;
    for (const auto& [a, b] : pairs) {
      const double d = privacy_distance(a.secret, b.secret, n, coalition);
      report.privacy.push_back({coalition, a.label, b.label, d, full, full || d <= kPrivacyBound});
    }
  }

  std::vector<std::size_t> everyone(n);
  for (std::size_t p = 1; p <= n; ++p) everyone[p - 1] = p;
  report.complement_distance =
      privacy_distance(protocol::Secret::zero(), protocol::Secret::one(), n, everyone);
  report.complement_passed = std::abs(*report.complement_distance - 1.0) <= qsim::kEndToEndTol;

  std::size_t run = 0;
  for (const NamedSecret& s : report.secrets) {
    for (std::size_t receiver = 1; receiver <= n; ++receiver) {
      const auto result = correctness_check(s.secret, n, receiver, options.trials,
                                            derive_seed(options.seed, 0xc0de + run++));
      report.correctness.push_back({s.label, receiver, options.trials, result.min_fidelity,
                                    result.min_fidelity >= 1.0 - qsim::kEndToEndTol});
    }
  }
  return report;
}

Json audit_report_to_json(const AuditReport& report) {
  Json secrets = Json::array();
  for (const NamedSecret& s : report.secrets) {
    secrets.push_back(Json{{"label", s.label},
                           {"alpha", complex_json(s.secret.alpha())},
                           {"beta", complex_json(s.secret.beta())}});
  }
  Json privacy = Json::array();
  for (const PrivacyCase& c : report.privacy) {
    privacy.push_back(Json{{"subset", subset_json(c.subset)},
                           {"secret_a", c.secret_a},
                           {"secret_b", c.secret_b},
                           {"trace_distance", c.distance},
                           {"status", c.informational ? "informational" : (c.passed ? "pass" : "fail")}});
  }
  Json correctness = Json::array();
  for (const CorrectnessCase& c : report.correctness) {
    correctness.push_back(Json{{"secret", c.secret},
                               {"receiver", c.receiver},
                               {"trials", c.trials},
                               {"min_fidelity", c.min_fidelity},
                               {"status", c.passed ? "pass" : "fail"}});
  }
  Json doc{{"version", kReportVersion},
           {"n", report.n},
           {"seed", report.seed},
           {"privacy_bound", kPrivacyBound},
           {"secrets", secrets},
           {"privacy", privacy}};
  if (report.complement_distance) {
    Json everyone = Json::array();
    for (std::size_t p = 1; p <= report.n; ++p) everyone.push_back(p);
    doc["complement"] = Json{{"subset", everyone},
                             {"secret_a", "zero"},
                             {"secret_b", "one"},
                             {"trace_distance", *report.complement_distance},
                             {"expected", 1.0},
                             {"status", report.complement_passed ? "informational" : "unexpected"}};
  }
  doc["correctness"] = correctness;
  doc["passed"] = report.passed();
  return doc;
}

}  // namespace ghzlab::audit
