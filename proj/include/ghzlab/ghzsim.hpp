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

// Entanglement-simulation side results: the lower-bound arithmetic for
// classically simulating an n-party cat state, and the three-party (or
// m-party) parity task whose target law is cos^2 of the summed angles.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghzlab/json_format.hpp"
#include "ghzlab/qsim.hpp"

namespace ghzlab::ghzsim {

/// Per-case Monte Carlo gate on |z_score|.
inline constexpr double kZScoreGate = 5.0;

/// One phase input (radians) per party; nonempty, all finite.
class AngleVector {
 public:
  explicit AngleVector(std::vector<double> thetas);

  std::size_t size() const { return thetas_.size(); }
  const std::vector<double>& thetas() const { return thetas_; }
  double sum() const;

 private:
  std::vector<double> thetas_;
};

struct ParityStats {
  std::uint64_t samples;
  std::uint64_t even_count;
  double p_hat;
  double p_exact;
  double z_score;
};

struct BoundReport {
  std::uint64_t n;
  double new_bound;           // n log2 n - 2n
  double previous_bound;      // n log2 n - 3n
  double theorem4_classical;  // n log2 n - n, no entanglement
  double theorem4_entangled;  // n, with a shared cat state
};

/// Cat state with P(theta_i) = diag(1, e^{2 i theta_i}) applied to qubit i.
qsim::StateVector prepare_phased_ghz(const AngleVector& thetas);

/// The phased state after a Hadamard on every qubit, i.e. right before measuring.
qsim::StateVector hadamard_basis_state(const AngleVector& thetas);

/// P(XOR of all outcomes = 0), summed from the evolved amplitudes.
double exact_parity_prob(const AngleVector& thetas);

/// P(XOR of all outcomes = 1), summed independently of exact_parity_prob.
double exact_odd_parity_prob(const AngleVector& thetas);

// Monte Carlo: each sample measures every qubit of the Hadamard-basis state
// in order 1..m, using one uniform draw per qubit, and records the parity.
// z_score = (p_hat - p_exact) / sqrt(p_exact (1 - p_exact) / samples); when
// p_exact is 0 or 1 (within 1e-12) it is 0 if p_hat matches and infinite
// otherwise.
ParityStats sample_parities(const AngleVector& thetas, std::uint64_t samples, std::uint64_t seed);

/// Throws ArgumentError for n = 0.
BoundReport lower_bound(std::uint64_t n);

/// (n log2 n - 2n) + n == n log2 n - n, evaluated in floating point.
bool reduction_check(std::uint64_t n);

Json parity_stats_to_json(const ParityStats& stats);
Json bound_report_to_json(const BoundReport& report);

}  // namespace ghzlab::ghzsim
