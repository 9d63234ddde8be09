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

// Exact audits of the secret sharing scheme. Correctness is checked by
// simulation; privacy by building the complete classical-quantum state a
// coalition holds (its qubits plus its x bits), averaged over every dealer
// random branch, and comparing those states for different secrets.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghzlab/json_format.hpp"
#include "ghzlab/protocol.hpp"
#include "ghzlab/qsim.hpp"

namespace ghzlab::audit {

/// Privacy bound on the trace distance between coalition views.
inline constexpr double kPrivacyBound = 1e-9;
/// Largest n the full-subset sweep accepts.
inline constexpr std::size_t kMaxSweepPlayers = 6;

// A classical-quantum state sum_c |c><c| (x) B_c on an s-bit register and s
// qubits, i.e. a 4^s-dimensional block-diagonal density matrix. Only the
// 2^s diagonal blocks B_c (each 2^s x 2^s, already weighted by p(c)) are
// stored.
class CqState {
 public:
  CqState(std::size_t s, std::vector<Eigen::MatrixXcd> blocks);

  std::size_t num_qubits() const { return s_; }
  std::size_t dimension() const { return std::size_t{1} << (2 * s_); }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }

  double trace() const;
  double min_eigenvalue() const;
  bool is_positive_semidefinite(double floor = qsim::kPsdFloor) const;

  /// Full 4^s matrix, register bits most significant. s <= 6.
  Eigen::MatrixXcd dense() const;

  /// Register traced out: sum_c B_c.
  qsim::DensityMatrix quantum_marginal() const;

 private:
  std::size_t s_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Trace distance of two cq states, computed block by block.
double cq_trace_distance(const CqState& a, const CqState& b);

struct CollusionView {
  std::vector<std::size_t> subset;
  // Probability of each visible x-bit string; bit order follows subset order
  // with subset[0] most significant.
  std::vector<double> classical_part;
  // Conditional quantum state for each reachable (visible string, dealer x).
  std::map<std::pair<std::uint64_t, int>, qsim::DensityMatrix> quantum_part;
  CqState averaged_view;
};

// Exact view of `subset` (player indices), enumerating both flip values and
// all 2^(n-1) x-strings of each with equal weight.
CollusionView collusion_view(const protocol::Secret& secret, std::size_t n,
                             std::span<const std::size_t> subset);

double privacy_distance(const protocol::Secret& a, const protocol::Secret& b, std::size_t n,
                        std::span<const std::size_t> subset);

struct CorrectnessResult {
  double min_fidelity;
  std::vector<protocol::ProtocolTranscript> transcripts;
};

/// Runs `trials` protocol instances with seeds derived from `seed`.
CorrectnessResult correctness_check(const protocol::Secret& secret, std::size_t n,
                                    std::size_t receiver, std::size_t trials, std::uint64_t seed);

// ----------------------------------------------------------- audit sweep

struct NamedSecret {
  std::string label;
  protocol::Secret secret;
};

struct PrivacyCase {
  std::vector<std::size_t> subset;
  std::string secret_a;
  std::string secret_b;
  double distance;
  bool informational;  // full coalition: not a privacy claim
  bool passed;
};

struct CorrectnessCase {
  std::string secret;
  std::size_t receiver;
  std::size_t trials;
  double min_fidelity;
  bool passed;
};

struct AuditReport {
  std::size_t n;
  std::uint64_t seed;
  std::vector<NamedSecret> secrets;
  std::vector<PrivacyCase> privacy;
  std::vector<CorrectnessCase> correctness;
  // Full-coalition distance between |0> and |1>; must be 1.
  std::optional<double> complement_distance;
  bool complement_passed = true;

  bool passed() const;
};

struct AuditOptions {
  std::size_t n;
  std::uint64_t seed = 0;
  /// Restrict to one coalition; otherwise every proper nonempty subset.
  std::optional<std::vector<std::size_t>> subset;
  std::size_t random_pairs = 10;
  std::size_t trials = 20;
};

/// The five presets pairwise plus `random_pairs` Haar-random pairs.
std::vector<std::pair<NamedSecret, NamedSecret>> secret_pairs(std::uint64_t seed,
                                                              std::size_t random_pairs);

/// Throws SizeError when n > kMaxSweepPlayers.
AuditReport run_audit(const AuditOptions& options);

Json audit_report_to_json(const AuditReport& report);

}  // namespace ghzlab::audit
