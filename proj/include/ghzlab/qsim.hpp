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

// Dense state-vector engine for the handful of single-qubit gates the
// protocols need, plus measurement, partial trace and the two distance
// measures used by the audits.
//
// Index convention: qubit 1 is the most significant bit of an amplitude
// index, so basis state |b1 b2 ... bn> lives at sum_i b_i * 2^(n-i).
// Qubit arguments are 1-based throughout.
//
// States are immutable values; every operation returns a fresh state.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ghzlab::qsim {

using Complex = std::complex<double>;

/// Tolerance for algebraic identities (unitarity, norms, traces).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for end-to-end fidelity and trace-distance assertions.
inline constexpr double kEndToEndTol = 1e-9;
/// Eigenvalue floor for positive-semidefiniteness checks.
inline constexpr double kPsdFloor = -1e-10;
/// Branch probabilities below this are treated as exactly zero.
inline constexpr double kDegenerateBranch = 1e-15;

inline constexpr std::size_t kDefaultQubitCap = 20;
inline constexpr std::size_t kMaxQubitCap = 28;
inline constexpr std::string_view kQubitCapEnvVar = "GHZLAB_QUBIT_CAP";

/// Parses a cap override; accepts integers in [1, kMaxQubitCap].
std::optional<std::size_t> parse_qubit_cap(std::string_view text);

/// Largest supported qubit count. Read once from GHZLAB_QUBIT_CAP, falling
/// back to kDefaultQubitCap when unset or malformed.
std::size_t qubit_cap();

namespace detail {
struct StateAccess;
}

class StateVector {
 public:
  /// Validates that the length is 2^n with 1 <= n <= qubit_cap() and that the
  /// squared norm is 1 within kAlgebraTol.
  explicit StateVector(std::vector<Complex> amps);

  /// Computational basis state |index> on n qubits.
  static StateVector basis(std::size_t n, std::uint64_t index);

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_.at(index); }
  double norm_squared() const;

 private:
  struct Unchecked {};
  StateVector(Unchecked, std::size_t n, std::vector<Complex> amps)
      : n_(n), amps_(std::move(amps)) {}

  std::size_t n_;
  std::vector<Complex> amps_;

  friend struct detail::StateAccess;
};

/// A 2x2 unitary. Construction rejects non-unitary matrices.
class Gate1Q {
 public:
  /// Row-major entries {m00, m01, m10, m11}.
  explicit Gate1Q(const std::array<Complex, 4>& entries);

  /// N: swaps |0> and |1>.
  static Gate1Q negation();
  static Gate1Q hadamard();
  /// Z: phase flip on |1>.
  static Gate1Q phase_flip();
  /// P(theta) = diag(1, e^{2 i theta}).
  static Gate1Q phase(double theta);

  const Complex& operator()(int row, int col) const { return m_[static_cast<std::size_t>(row * 2 + col)]; }
  const std::array<Complex, 4>& entries() const { return m_; }

  /// Operator product (*this) * rhs, i.e. rhs acts first.
  Gate1Q then_after(const Gate1Q& rhs) const;

  /// Entrywise comparison.
  bool approx_equal(const Gate1Q& other, double tol = kAlgebraTol) const;

 private:
  std::array<Complex, 4> m_;
};

class DensityMatrix {
 public:
  /// Validates a square 2^s matrix that is Hermitian (entrywise, kAlgebraTol)
  /// with unit trace (kAlgebraTol). Positivity is checked on demand only.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix pure(const StateVector& state);
  static DensityMatrix maximally_mixed(std::size_t s);

  std::size_t num_qubits() const { return s_; }
  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  Eigen::VectorXd eigenvalues() const;
  double min_eigenvalue() const;
  bool is_positive_semidefinite(double floor = kPsdFloor) const;

 private:
  std::size_t s_;
  Eigen::MatrixXcd m_;
};

struct MeasurementRecord {
  std::size_t qubit;    // 1-based
  int outcome;          // 0 or 1
  double probability;   // Born probability of this outcome before collapse
};

struct Measurement {
  MeasurementRecord record;
  StateVector post_state;
};

/// |0^n> + |1^n>, normalized.
StateVector make_ghz(std::size_t n);

/// (|01> - |10>) / sqrt(2).
StateVector make_singlet();

/// alpha|0> + beta|1>; must be normalized.
StateVector make_qubit(Complex alpha, Complex beta);

StateVector apply_gate(const StateVector& state, const Gate1Q& gate, std::size_t qubit);

/// Probability of reading `outcome` on `qubit`.
double branch_probability(const StateVector& state, std::size_t qubit, int outcome);

// Computational-basis measurement driven by an externally supplied uniform
// number: outcome 0 iff rand < P(0). Branches with probability below
// kDegenerateBranch are clamped to zero first so they can never be selected.
Measurement measure_qubit(const StateVector& state, std::size_t qubit, double rand);

/// Partial trace onto `subset`; subset order fixes the output index order
/// (first entry is the most significant bit).
DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> subset);

// State of `qubit` when every other qubit sits in a computational basis
// state (as after measuring them). Throws ArgumentError when the state is
// not of that product form.
StateVector single_qubit_factor(const StateVector& state, std::size_t qubit);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Sum of |eigenvalues| of a Hermitian matrix.
double hermitian_trace_norm(const Eigen::MatrixXcd& hermitian);

/// (1/2) * sum |eigenvalues(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ghzlab::qsim
