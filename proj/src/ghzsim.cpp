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
#include "ghzlab/ghzsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ghzlab/errors.hpp"
#include "ghzlab/rng.hpp"

namespace ghzlab::ghzsim {
namespace {

constexpr double kDegenerateProb = 1e-12;

double parity_mass(const qsim::StateVector& state, int parity) {
  const auto amps = state.amplitudes();
  double p = 0.0;
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    if ((std::popcount(k) & 1) == parity) p += std::norm(amps[k]);
  }
  return std::clamp(p, 0.0, 1.0);
}

double z_score(double p_hat, double p_exact, std::uint64_t samples) {
  const double snapped = p_exact < kDegenerateProb ? 0.0 : (p_exact > 1.0 - kDegenerateProb ? 1.0 : p_exact);
  if (snapped == 0.0 || snapped == 1.0) {
    if (p_hat == snapped) return 0.0;
    return p_hat > snapped ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
  }
  const double sigma = std::sqrt(p_exact * (1.0 - p_exact) / static_cast<double>(samples));
  return (p_hat - p_exact) / sigma;
}

}  // namespace

AngleVector::AngleVector(std::vector<double> thetas) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) throw ArgumentError("need at least one angle");
  for (double t : thetas_) {
    if (!std::isfinite(t)) throw ArgumentError("angles must be finite");
  }
  if (thetas_.size() > qsim::qubit_cap()) {
    throw SizeError("angle count " + std::to_string(thetas_.size()) + " exceeds qubit cap");
  }
}

double AngleVector::sum() const { return std::accumulate(thetas_.begin(), thetas_.end(), 0.0); }

qsim::StateVector prepare_phased_ghz(const AngleVector& thetas) {
  qsim::StateVector state = qsim::make_ghz(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    state = qsim::apply_gate(state, qsim::Gate1Q::phase(thetas.thetas()[i]), i + 1);
  }
  return state;
}

qsim::StateVector hadamard_basis_state(const AngleVector& thetas) {
  qsim::StateVector state = prepare_phased_ghz(thetas);
  const auto h = qsim::Gate1Q::hadamard();
  for (std::size_t q = 1; q <= thetas.size(); ++q) state = qsim::apply_gate(state, h, q);
  return state;
}

double exact_parity_prob(const AngleVector& thetas) {
  return parity_mass(hadamard_basis_state(thetas), 0);
}

double exact_odd_parity_prob(const AngleVector& thetas) {
  return parity_mass(hadamard_basis_state(thetas), 1);
}

ParityStats sample_parities(const AngleVector& thetas, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw ArgumentError("samples must be at least 1");
  const qsim::StateVector ready = hadamard_basis_state(thetas);
  const double p_exact = parity_mass(ready, 0);

  Rng rng(seed);
  std::uint64_t even = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    qsim::StateVector state = ready;
    int parity = 0;
    for (std::size_t q = 1; q <= thetas.size(); ++q) {
      auto m = qsim::measure_qubit(state, q, rng.uniform());
      parity ^= m.record.outcome;
      state = std::move(m.post_state);
    }
    if (parity == 0) ++even;
  }
  const double p_hat = static_cast<double>(even) / static_cast<double>(samples);
  return {samples, even, p_hat, p_exact, z_score(p_hat, p_exact, samples)};
}

BoundReport lower_bound(std::uint64_t n) {
  if (n < 1) throw ArgumentError("party count must be at least 1");
  const double nd = static_cast<double>(n);
  const double n_log_n = nd * std::log2(nd);
  return {n, n_log_n - 2.0 * nd, n_log_n - 3.0 * nd, n_log_n - nd, nd};
}

bool reduction_check(std::uint64_t n) {
  const BoundReport r = lower_bound(n);
  // Simulating the state with C(n) bits, then running the n-bit entangled
  // protocol, must cost at least the classical lower bound.
  return r.new_bound + r.theorem4_entangled == r.theorem4_classical;
}

Json parity_stats_to_json(const ParityStats& stats) {
  return Json{{"samples", stats.samples},
              {"even_count", stats.even_count},
              {"p_hat", stats.p_hat},
              {"p_exact", stats.p_exact},
              {"z_score", stats.z_score}};
}

Json bound_report_to_json(const BoundReport& report) {
  return Json{{"n", report.n},
              {"new_bound", report.new_bound},
              {"previous_bound", report.previous_bound},
              {"theorem4_classical", report.theorem4_classical},
              {"theorem4_entangled", report.theorem4_entangled}};
}

}  // namespace ghzlab::ghzsim
