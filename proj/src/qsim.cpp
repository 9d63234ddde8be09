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
#include "ghzlab/qsim.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "ghzlab/errors.hpp"

namespace ghzlab::qsim {

namespace detail {
struct StateAccess {
  static StateVector make(std::size_t n, std::vector<Complex> amps) {
    return StateVector(StateVector::Unchecked{}, n, std::move(amps));
  }
};
}  // namespace detail

namespace {

using detail::StateAccess;

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_count(std::size_t n) {
  if (n < 1 || n > qubit_cap()) {
    throw SizeError("qubit count " + std::to_string(n) + " outside [1, " +
                    std::to_string(qubit_cap()) + "]");
  }
}

void check_qubit(const StateVector& state, std::size_t qubit) {
  if (qubit < 1 || qubit > state.num_qubits()) {
    throw ArgumentError("qubit index " + std::to_string(qubit) + " outside [1, " +
                        std::to_string(state.num_qubits()) + "]");
  }
}

// Bit mask of a 1-based qubit under the qubit-1-is-MSB convention.
std::uint64_t mask_of(std::size_t n, std::size_t qubit) {
  return std::uint64_t{1} << (n - qubit);
}

std::size_t log2_exact(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw SizeError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(dim));
}

}  // namespace

std::optional<std::size_t> parse_qubit_cap(std::string_view text) {
  std::size_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 1 || value > kMaxQubitCap) {
    return std::nullopt;
  }
  return value;
}

std::size_t qubit_cap() {
  static const std::size_t cap = [] {
    const char* env = std::getenv(std::string(kQubitCapEnvVar).c_str());
    if (env == nullptr) return kDefaultQubitCap;
    return parse_qubit_cap(env).value_or(kDefaultQubitCap);
  }();
  return cap;
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::vector<Complex> amps) : n_(0), amps_(std::move(amps)) {
  if (amps_.size() < 2) throw SizeError("state needs at least one qubit");
  n_ = log2_exact(amps_.size());
  check_count(n_);
  const double norm = norm_squared();
  if (std::abs(norm - 1.0) > kAlgebraTol) {
    throw ArgumentError("state is not normalized: |psi|^2 = " + std::to_string(norm));
  }
}

StateVector StateVector::basis(std::size_t n, std::uint64_t index) {
  check_count(n);
  const std::size_t dim = std::size_t{1} << n;
  if (index >= dim) throw ArgumentError("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateAccess::make(n, std::move(amps));
}

double StateVector::norm_squared() const {
  return std::accumulate(amps_.begin(), amps_.end(), 0.0,
                         [](double acc, const Complex& a) { return acc + std::norm(a); });
}

// --------------------------------------------------------------------- Gate1Q

Gate1Q::Gate1Q(const std::array<Complex, 4>& entries) : m_(entries) {
  // G * G^dagger == I, entrywise.
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < 2; ++k) acc += (*this)(r, k) * std::conj((*this)(c, k));
      const Complex expected = (r == c) ? 1.0 : 0.0;
      if (std::abs(acc - expected) > kAlgebraTol) {
        throw ArgumentError("gate is not unitary");
      }
    }
  }
}

Gate1Q Gate1Q::negation() { return Gate1Q({0.0, 1.0, 1.0, 0.0}); }

Gate1Q Gate1Q::hadamard() { return Gate1Q({kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}); }

Gate1Q Gate1Q::phase_flip() { return Gate1Q({1.0, 0.0, 0.0, -1.0}); }

Gate1Q Gate1Q::phase(double theta) {
  return Gate1Q({1.0, 0.0, 0.0, std::polar(1.0, 2.0 * theta)});
}

Gate1Q Gate1Q::then_after(const Gate1Q& rhs) const {
  std::array<Complex, 4> out{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out[static_cast<std::size_t>(r * 2 + c)] = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
    }
  }
  return Gate1Q(out);
}

bool Gate1Q::approx_equal(const Gate1Q& other, double tol) const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(m_[i] - other.m_[i]) > tol) return false;
  }
  return true;
}

// -------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : s_(0), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw ArgumentError("density matrix must be square");
  s_ = log2_exact(static_cast<std::size_t>(m_.rows()));
  if (s_ < 1) throw SizeError("density matrix needs at least one qubit");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw ArgumentError("density matrix is not Hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0)) > kAlgebraTol) {
    throw ArgumentError("density matrix trace is " + std::to_string(tr.real()));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  const auto amps = state.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t s) {
  check_count(s);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << s);
  return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

bool DensityMatrix::is_positive_semidefinite(double floor) const {
  return min_eigenvalue() >= floor;
}

// ----------------------------------------------------------------- operations

StateVector make_ghz(std::size_t n) {
  check_count(n);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> amps(dim);
  amps.front() = kInvSqrt2;
  amps.back() = kInvSqrt2;
  return StateAccess::make(n, std::move(amps));
}

StateVector make_singlet() {
  return StateAccess::make(2, {0.0, kInvSqrt2, -kInvSqrt2, 0.0});
}

StateVector make_qubit(Complex alpha, Complex beta) { return StateVector({alpha, beta}); }

StateVector apply_gate(const StateVector& state, const Gate1Q& gate, std::size_t qubit) {
  check_qubit(state, qubit);
  const std::size_t n = state.num_qubits();
  const std::uint64_t mask = mask_of(n, qubit);
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.begin(), in.end());
  for (std::uint64_t k = 0; k < out.size(); ++k) {
    if (k & mask) continue;
    const Complex a0 = in[k];
    const Complex a1 = in[k | mask];
    out[k] = gate(0, 0) * a0 + gate(0, 1) * a1;
    out[k | mask] = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
  return StateAccess::make(n, std::move(out));
}

double branch_probability(const StateVector& state, std::size_t qubit, int outcome) {
  check_qubit(state, qubit);
  if (outcome != 0 && outcome != 1) throw ArgumentError("outcome must be 0 or 1");
  const std::uint64_t mask = mask_of(state.num_qubits(), qubit);
  const auto amps = state.amplitudes();
  double p = 0.0;
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    if (((k & mask) != 0) == (outcome == 1)) p += std::norm(amps[k]);
  }
  return p;
}

Measurement measure_qubit(const StateVector& state, std::size_t qubit, double rand) {
  check_qubit(state, qubit);
  if (!(rand >= 0.0 && rand < 1.0)) throw ArgumentError("rand must lie in [0, 1)");

  double p0 = branch_probability(state, qubit, 0);
  double p1 = branch_probability(state, qubit, 1);
  if (p0 < kDegenerateBranch) p0 = 0.0;
  if (p1 < kDegenerateBranch) p1 = 0.0;
  // A clamped-away outcome 1 makes outcome 0 certain for every rand in [0, 1).
  const double threshold = (p1 == 0.0) ? 1.0 : p0;

  const int outcome = (rand < threshold) ? 0 : 1;
  const double p = outcome == 0 ? p0 : p1;
  if (p < kDegenerateBranch) {
    throw InternalError("measurement selected a zero-probability branch");
  }

  const std::size_t n = state.num_qubits();
  const std::uint64_t mask = mask_of(n, qubit);
  const double scale = 1.0 / std::sqrt(p);
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  for (std::uint64_t k = 0; k < in.size(); ++k) {
    if (((k & mask) != 0) == (outcome == 1)) out[k] = in[k] * scale;
  }
  return {{qubit, outcome, p}, StateAccess::make(n, std::move(out))};
}

DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> subset) {
  const std::size_t n = state.num_qubits();
  if (subset.empty()) throw ArgumentError("subset must be nonempty");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t q : subset) {
    check_qubit(state, q);
    if (seen[q]) throw ArgumentError("duplicate qubit " + std::to_string(q) + " in subset");
    seen[q] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t q = 1; q <= n; ++q) {
    if (!seen[q]) rest.push_back(q);
  }

  // Gather amplitudes into a (kept x traced) matrix M; rho = M M^dagger.
  const std::size_t s = subset.size();
  const auto kept_dim = static_cast<Eigen::Index>(std::size_t{1} << s);
  const auto rest_dim = static_cast<Eigen::Index>(std::size_t{1} << rest.size());
  Eigen::MatrixXcd m(kept_dim, rest_dim);
  const auto amps = state.amplitudes();
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    std::uint64_t row = 0;
    for (std::size_t q : subset) row = (row << 1) | ((k & mask_of(n, q)) ? 1 : 0);
    std::uint64_t col = 0;
    for (std::size_t q : rest) col = (col << 1) | ((k & mask_of(n, q)) ? 1 : 0);
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amps[k];
  }
  Eigen::MatrixXcd rho = m * m.adjoint();
  // Exact Hermitian symmetry; M M^dagger is only Hermitian up to rounding.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(std::move(rho));
}

StateVector single_qubit_factor(const StateVector& state, std::size_t qubit) {
  check_qubit(state, qubit);
  const auto amps = state.amplitudes();
  const auto best = std::max_element(amps.begin(), amps.end(), [](const Complex& a, const Complex& b) {
    return std::norm(a) < std::norm(b);
  });
  const std::uint64_t mask = mask_of(state.num_qubits(), qubit);
  const std::uint64_t base = static_cast<std::uint64_t>(best - amps.begin()) & ~mask;
  const Complex a0 = amps[base];
  const Complex a1 = amps[base | mask];
  const double weight = std::norm(a0) + std::norm(a1);
  if (std::abs(weight - 1.0) > kEndToEndTol) {
    throw ArgumentError("other qubits are not in a computational basis state");
  }
  const double scale = 1.0 / std::sqrt(weight);
  return StateAccess::make(1, {a0 * scale, a1 * scale});
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw ArgumentError("fidelity: qubit counts differ");
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  Complex overlap = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) overlap += std::conj(x[k]) * y[k];
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double hermitian_trace_norm(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dimension() != b.dimension()) throw ArgumentError("trace_distance: dimensions differ");
  return std::clamp(0.5 * hermitian_trace_norm(a.matrix() - b.matrix()), 0.0, 1.0);
}

}  // namespace ghzlab::qsim
