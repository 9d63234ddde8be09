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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ghzlab/errors.hpp"
#include "gtest/gtest.h"
#include "oracle.hpp"

namespace ghzlab::qsim {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

StateVector random_state(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {normal(gen), normal(gen)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(std::move(amps));
}

std::vector<Gate1Q> named_gates(double theta) {
  return {Gate1Q::negation(), Gate1Q::hadamard(), Gate1Q::phase_flip(), Gate1Q::phase(theta)};
}

void expect_state_near(const StateVector& a, const std::vector<Complex>& expected, double tol = kAlgebraTol) {
  ASSERT_EQ(a.dimension(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(std::abs(a.amplitude(k) - expected[k]), 0.0, tol) << "index " << k;
  }
}

void expect_matrix_near(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol = kAlgebraTol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol);
}

TEST(StateVector, RejectsBadShapesAndNorms) {
  EXPECT_THROW(StateVector({1.0, 0.0, 0.0}), SizeError);
  EXPECT_THROW(StateVector({1.0}), SizeError);
  EXPECT_THROW(StateVector({1.0, 1.0}), ArgumentError);
  EXPECT_NO_THROW(StateVector({0.6, Complex(0.0, 0.8)}));
  EXPECT_THROW(StateVector::basis(2, 4), ArgumentError);
}

TEST(QubitCap, ParsesOverrides) {
  EXPECT_EQ(parse_qubit_cap("12"), std::optional<std::size_t>(12));
  EXPECT_EQ(parse_qubit_cap("0"), std::nullopt);
  EXPECT_EQ(parse_qubit_cap("29"), std::nullopt);
  EXPECT_EQ(parse_qubit_cap("7x"), std::nullopt);
  EXPECT_EQ(parse_qubit_cap(""), std::nullopt);
  EXPECT_GE(qubit_cap(), 1u);
}

TEST(MakeGhz, AmplitudesOnAllZerosAndAllOnes) {
  expect_state_near(make_ghz(3), {kInvSqrt2, 0, 0, 0, 0, 0, 0, kInvSqrt2});
  expect_state_near(make_ghz(1), {kInvSqrt2, kInvSqrt2});
  expect_state_near(make_ghz(2), {kInvSqrt2, 0, 0, kInvSqrt2});
}

TEST(MakeGhz, SizeErrors) {
  EXPECT_THROW(make_ghz(0), SizeError);
  EXPECT_THROW(make_ghz(qubit_cap() + 1), SizeError);
}

TEST(MakeSinglet, AmplitudesAndMarginal) {
  const StateVector s = make_singlet();
  expect_state_near(s, {0.0, kInvSqrt2, -kInvSqrt2, 0.0});
  const std::vector<std::size_t> first{1};
  expect_matrix_near(reduced_density(s, first).matrix(), DensityMatrix::maximally_mixed(1).matrix());
  EXPECT_NEAR(fidelity(s, s), 1.0, kAlgebraTol);
}

TEST(Gate1Q, RejectsNonUnitary) {
  EXPECT_THROW(Gate1Q({1.0, 1.0, 0.0, 1.0}), ArgumentError);
  EXPECT_THROW(Gate1Q({2.0, 0.0, 0.0, 0.5}), ArgumentError);
}

TEST(ApplyGate, NamedGateExamples) {
  const StateVector zero = StateVector::basis(1, 0);
  const StateVector one = StateVector::basis(1, 1);
  expect_state_near(apply_gate(zero, Gate1Q::negation(), 1), {0.0, 1.0});
  expect_state_near(apply_gate(zero, Gate1Q::hadamard(), 1), {kInvSqrt2, kInvSqrt2});
  expect_state_near(apply_gate(one, Gate1Q::phase(std::numbers::pi / 2), 1), {0.0, -1.0});
}

TEST(ApplyGate, QubitIndexOutOfRange) {
  const StateVector s = make_ghz(3);
  EXPECT_THROW(apply_gate(s, Gate1Q::hadamard(), 0), ArgumentError);
  EXPECT_THROW(apply_gate(s, Gate1Q::hadamard(), 4), ArgumentError);
}

TEST(ApplyGate, QubitOneIsMostSignificant) {
  // N on qubit 1 of |000> gives |100>, index 4.
  const StateVector s = apply_gate(StateVector::basis(3, 0), Gate1Q::negation(), 1);
  EXPECT_NEAR(std::abs(s.amplitude(4)), 1.0, kAlgebraTol);
}

TEST(ApplyGate, MatchesKroneckerOracle) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector psi = random_state(n, gen);
      const double theta = angle(gen);
      const std::size_t q = 1 + gen() % n;
      const std::vector<oracle::Mat> reference{oracle::N(), oracle::H(), oracle::Z(), oracle::P(theta)};
      const auto gates = named_gates(theta);
      Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dimension()));
      for (std::size_t g = 0; g < gates.size(); ++g) {
        const Eigen::VectorXcd expected = oracle::embed(reference[g], q, n) * v;
        const StateVector got = apply_gate(psi, gates[g], q);
        for (Eigen::Index k = 0; k < expected.size(); ++k) {
          EXPECT_NEAR(std::abs(got.amplitude(static_cast<std::uint64_t>(k)) - expected(k)), 0.0, kAlgebraTol);
        }
      }
    }
  }
}

TEST(GateProperties, NormPreserved) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    const StateVector psi = random_state(n, gen);
    for (const auto& g : named_gates(angle(gen))) {
      const StateVector out = apply_gate(psi, g, 1 + gen() % n);
      EXPECT_NEAR(out.norm_squared(), 1.0, kAlgebraTol);
    }
  }
}

TEST(GateProperties, InvolutionsRestoreState) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const std::size_t q = 1 + gen() % n;
    const StateVector psi = random_state(n, gen);
    for (const auto& g : {Gate1Q::hadamard(), Gate1Q::negation(), Gate1Q::phase_flip()}) {
      EXPECT_NEAR(fidelity(apply_gate(apply_gate(psi, g, q), g, q), psi), 1.0, kAlgebraTol);
    }
  }
}

TEST(GateProperties, PhaseGatesCompose) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = angle(gen);
    const double b = angle(gen);
    EXPECT_TRUE(Gate1Q::phase(a).then_after(Gate1Q::phase(b)).approx_equal(Gate1Q::phase(a + b)))
        << "a=" << a << " b=" << b;
  }
}

TEST(GateProperties, DisjointQubitsCommute) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 6;
    const std::size_t q1 = 1 + gen() % n;
    std::size_t q2 = 1 + gen() % n;
    if (q2 == q1) q2 = q1 % n + 1;
    const auto gates = named_gates(angle(gen));
    const Gate1Q& g1 = gates[gen() % gates.size()];
    const Gate1Q& g2 = gates[gen() % gates.size()];
    const StateVector psi = random_state(n, gen);
    const StateVector ab = apply_gate(apply_gate(psi, g1, q1), g2, q2);
    const StateVector ba = apply_gate(apply_gate(psi, g2, q2), g1, q1);
    for (std::size_t k = 0; k < psi.dimension(); ++k) {
      EXPECT_NEAR(std::abs(ab.amplitude(k) - ba.amplitude(k)), 0.0, kAlgebraTol);
    }
  }
}

TEST(MeasureQubit, GhzCollapse) {
  const auto m = measure_qubit(make_ghz(3), 1, 0.25);
  EXPECT_EQ(m.record.outcome, 0);
  EXPECT_EQ(m.record.qubit, 1u);
  EXPECT_NEAR(m.record.probability, 0.5, kAlgebraTol);
  expect_state_near(m.post_state, {1, 0, 0, 0, 0, 0, 0, 0});
}

TEST(MeasureQubit, DeterministicOne) {
  for (double r : {0.0, 0.3, 0.999999}) {
    const auto m = measure_qubit(StateVector::basis(1, 1), 1, r);
    EXPECT_EQ(m.record.outcome, 1);
    EXPECT_NEAR(m.record.probability, 1.0, kAlgebraTol);
    expect_state_near(m.post_state, {0.0, 1.0});
  }
}

TEST(MeasureQubit, HadamardTwiceIsDeterministic) {
  const StateVector plus = apply_gate(StateVector::basis(1, 0), Gate1Q::hadamard(), 1);
  const StateVector back = apply_gate(plus, Gate1Q::hadamard(), 1);
  for (double r : {0.0, 0.5, 0.9999999999}) {
    const auto m = measure_qubit(back, 1, r);
    EXPECT_EQ(m.record.outcome, 0);
    EXPECT_NEAR(m.record.probability, 1.0, kAlgebraTol);
  }
}

TEST(MeasureQubit, StrictThresholdRule) {
  // P(0) = 1/2 exactly on |+>: rand equal to P(0) selects outcome 1.
  const StateVector plus = make_qubit(kInvSqrt2, kInvSqrt2);
  const double p0 = branch_probability(plus, 1, 0);
  EXPECT_EQ(measure_qubit(plus, 1, std::nextafter(p0, 0.0)).record.outcome, 0);
  EXPECT_EQ(measure_qubit(plus, 1, p0).record.outcome, 1);
}

TEST(MeasureQubit, DegenerateBranchNeverSelected) {
  // P(0) is far below the clamp; even rand = 0 must pick outcome 1.
  const StateVector almost_one = make_qubit(1e-9, std::sqrt(1.0 - 1e-18));
  const auto m = measure_qubit(almost_one, 1, 0.0);
  EXPECT_EQ(m.record.outcome, 1);
}

TEST(MeasureQubit, RejectsBadArguments) {
  const StateVector s = make_ghz(2);
  EXPECT_THROW(measure_qubit(s, 3, 0.1), ArgumentError);
  EXPECT_THROW(measure_qubit(s, 1, 1.0), ArgumentError);
  EXPECT_THROW(measure_qubit(s, 1, -0.1), ArgumentError);
  EXPECT_THROW(measure_qubit(s, 1, std::nan("")), ArgumentError);
}

TEST(MeasureQubit, BranchProbabilitiesSumToOneAndMatchBorn) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 7;
    const std::size_t q = 1 + gen() % n;
    const StateVector psi = random_state(n, gen);
    const double p0 = branch_probability(psi, q, 0);
    const double p1 = branch_probability(psi, q, 1);
    EXPECT_NEAR(p0 + p1, 1.0, kAlgebraTol);
    const auto m = measure_qubit(psi, q, unit(gen));
    EXPECT_NEAR(m.record.probability, m.record.outcome ? p1 : p0, kAlgebraTol);
    EXPECT_NEAR(m.post_state.norm_squared(), 1.0, kAlgebraTol);
    EXPECT_NEAR(branch_probability(m.post_state, q, m.record.outcome), 1.0, kAlgebraTol);
  }
}

TEST(ReducedDensity, GhzMarginals) {
  const StateVector ghz = make_ghz(3);
  const std::vector<std::size_t> one{1};
  expect_matrix_near(reduced_density(ghz, one).matrix(), DensityMatrix::maximally_mixed(1).matrix());

  const std::vector<std::size_t> pair{1, 2};
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  expect_matrix_near(reduced_density(ghz, pair).matrix(), expected);
}

TEST(ReducedDensity, ProductStateMarginal) {
  const StateVector zero_one = StateVector::basis(2, 1);  // |0> (x) |1>
  const std::vector<std::size_t> second{2};
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
  expected(1, 1) = 1.0;
  expect_matrix_near(reduced_density(zero_one, second).matrix(), expected);
}

TEST(ReducedDensity, RejectsBadSubsets) {
  const StateVector s = make_ghz(3);
  EXPECT_THROW(reduced_density(s, std::vector<std::size_t>{}), ArgumentError);
  EXPECT_THROW(reduced_density(s, std::vector<std::size_t>{1, 1}), ArgumentError);
  EXPECT_THROW(reduced_density(s, std::vector<std::size_t>{0}), ArgumentError);
  EXPECT_THROW(reduced_density(s, std::vector<std::size_t>{4}), ArgumentError);
}

TEST(ReducedDensity, MatchesOracleAndPreservesTrace) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + gen() % 5;
    std::vector<std::size_t> all(n);
    for (std::size_t q = 0; q < n; ++q) all[q] = q + 1;
    std::shuffle(all.begin(), all.end(), gen);
    const std::size_t s = 1 + gen() % n;
    const std::vector<std::size_t> subset(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(s));
    const StateVector psi = random_state(n, gen);
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dimension()));

    const DensityMatrix rho = reduced_density(psi, subset);
    EXPECT_NEAR(std::abs(rho.matrix().trace() - Complex(1.0)), 0.0, kAlgebraTol);
    EXPECT_TRUE(rho.is_positive_semidefinite());
    expect_matrix_near(rho.matrix(), oracle::partial_trace(v, n, subset));
  }
}

TEST(ReducedDensity, SubsetPermutationPermutesIndices) {
  std::mt19937_64 gen(7);
  const StateVector psi = random_state(4, gen);
  const std::vector<std::size_t> forward{1, 3, 4};
  const std::vector<std::size_t> permuted{4, 1, 3};  // position i of permuted = forward[perm[i]]
  const std::array<int, 3> perm{2, 0, 1};
  const DensityMatrix a = reduced_density(psi, forward);
  const DensityMatrix b = reduced_density(psi, permuted);
  auto remap = [&](std::size_t idx_b) {
    // bit i of the permuted index (MSB first) is bit perm[i] of the forward index.
    std::size_t idx_a = 0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t bit = (idx_b >> (2 - i)) & 1U;
      idx_a |= bit << (2 - perm[static_cast<std::size_t>(i)]);
    }
    return idx_a;
  };
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      EXPECT_NEAR(std::abs(b(r, c) - a(remap(r), remap(c))), 0.0, kAlgebraTol);
    }
  }
}

TEST(Fidelity, Examples) {
  std::mt19937_64 gen(8);
  const StateVector psi = random_state(3, gen);
  EXPECT_NEAR(fidelity(psi, psi), 1.0, kAlgebraTol);
  EXPECT_NEAR(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), 0.0, kAlgebraTol);
  EXPECT_NEAR(fidelity(StateVector::basis(1, 0), make_qubit(kInvSqrt2, kInvSqrt2)), 0.5, kAlgebraTol);
  EXPECT_THROW(fidelity(make_ghz(2), make_ghz(3)), ArgumentError);
}

TEST(Fidelity, IgnoresGlobalPhase) {
  const StateVector a = make_qubit(0.6, Complex(0.0, 0.8));
  const Complex phase = std::polar(1.0, 1.234);
  const StateVector b = make_qubit(0.6 * phase, Complex(0.0, 0.8) * phase);
  EXPECT_NEAR(fidelity(a, b), 1.0, kAlgebraTol);
}

TEST(TraceDistance, Examples) {
  const DensityMatrix zero = DensityMatrix::pure(StateVector::basis(1, 0));
  const DensityMatrix one = DensityMatrix::pure(StateVector::basis(1, 1));
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(1);
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, kAlgebraTol);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, kAlgebraTol);
  EXPECT_NEAR(trace_distance(zero, mixed), 0.5, kAlgebraTol);
  EXPECT_THROW(trace_distance(zero, DensityMatrix::maximally_mixed(2)), ArgumentError);
}

TEST(TraceDistance, PureStatesFollowFidelity) {
  // For pure states D = sqrt(1 - F).
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector a = random_state(2, gen);
    const StateVector b = random_state(2, gen);
    EXPECT_NEAR(trace_distance(DensityMatrix::pure(a), DensityMatrix::pure(b)),
                std::sqrt(1.0 - fidelity(a, b)), 1e-10);
  }
}

TEST(DensityMatrix, Validation) {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = 0.5;
  EXPECT_THROW(DensityMatrix{bad}, ArgumentError);  // not Hermitian
  EXPECT_THROW(DensityMatrix{Eigen::MatrixXcd::Identity(2, 2)}, ArgumentError);  // trace 2
  EXPECT_THROW(DensityMatrix{Eigen::MatrixXcd::Identity(3, 3) / 3.0}, SizeError);
  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  const DensityMatrix not_psd(negative);
  EXPECT_FALSE(not_psd.is_positive_semidefinite());
}

TEST(SingleQubitFactor, ExtractsReceiverQubit) {
  // |1> (x) (0.6|0> + 0.8i|1>) (x) |0>
  const StateVector middle = make_qubit(0.6, Complex(0.0, 0.8));
  std::vector<Complex> amps(8);
  amps[0b100] = middle.amplitude(0);
  amps[0b110] = middle.amplitude(1);
  const StateVector joint{amps};
  EXPECT_NEAR(fidelity(single_qubit_factor(joint, 2), middle), 1.0, kAlgebraTol);
  EXPECT_THROW(single_qubit_factor(make_ghz(3), 2), ArgumentError);
}

}  // namespace
}  // namespace ghzlab::qsim
