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

// Brute-force reference model used only by tests. Every operator is a full
// 2^n x 2^n matrix built from Kronecker products, and partial traces sum
// over explicit bit strings, so nothing here shares code with the engine's
// bit-mask kernels.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace ghzlab::oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat gate(Complex m00, Complex m01, Complex m10, Complex m11) {
  Mat g(2, 2);
  g << m00, m01, m10, m11;
  return g;
}

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat N() { return gate(0, 1, 1, 0); }
inline Mat H() { return gate(1, 1, 1, -1) / std::sqrt(2.0); }
inline Mat Z() { return gate(1, 0, 0, -1); }
inline Mat P(double theta) { return gate(1, 0, 0, std::polar(1.0, 2.0 * theta)); }
inline Mat proj(int bit) { return bit ? gate(0, 0, 0, 1) : gate(1, 0, 0, 0); }

/// I (x) ... (x) g (x) ... (x) I with g on 1-based qubit q of n (q=1 leftmost).
inline Mat embed(const Mat& g, std::size_t q, std::size_t n) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t k = 1; k <= n; ++k) out = kron(out, k == q ? g : I2());
  return out;
}

/// |b1 b2 ... bn> as a tensor product of one-qubit kets.
inline Vec ket(const std::vector<int>& bits) {
  Mat out = Mat::Identity(1, 1);
  for (int b : bits) {
    Mat k(2, 1);
    k << (b ? 0.0 : 1.0), (b ? 1.0 : 0.0);
    out = kron(out, k);
  }
  return out.col(0);
}

inline Vec cat(std::size_t n, Complex a, Complex b) {
  return a * ket(std::vector<int>(n, 0)) + b * ket(std::vector<int>(n, 1));
}

inline std::vector<int> bits_of(std::uint64_t index, std::size_t n) {
  std::vector<int> bits(n);
  for (std::size_t k = 0; k < n; ++k) bits[k] = static_cast<int>((index >> (n - 1 - k)) & 1U);
  return bits;
}

// <bits|psi>, looked up by scanning every basis ket; slow on purpose.
inline Complex amplitude(const Vec& psi, const std::vector<int>& bits) {
  return ket(bits).dot(psi);
}

// rho_S[a][b] = sum_r <a r|psi><psi|b r>, keeping the qubits listed in subset
// (1-based, in order) and tracing out the rest.
inline Mat partial_trace(const Vec& psi, std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> rest;
  for (std::size_t q = 1; q <= n; ++q) {
    bool kept = false;
    for (std::size_t s : subset) kept = kept || s == q;
    if (!kept) rest.push_back(q);
  }
  const std::size_t s = subset.size();
  const auto dim = static_cast<Eigen::Index>(1) << s;
  Mat rho = Mat::Zero(dim, dim);
  auto assemble = [&](const std::vector<int>& kept_bits, const std::vector<int>& rest_bits) {
    std::vector<int> full(n);
    for (std::size_t i = 0; i < s; ++i) full[subset[i] - 1] = kept_bits[i];
    for (std::size_t i = 0; i < rest.size(); ++i) full[rest[i] - 1] = rest_bits[i];
    return full;
  };
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << rest.size()); ++r) {
    const auto rb = bits_of(r, rest.size());
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        const Complex amp_a = amplitude(psi, assemble(bits_of(static_cast<std::uint64_t>(a), s), rb));
        const Complex amp_b = amplitude(psi, assemble(bits_of(static_cast<std::uint64_t>(b), s), rb));
        rho(a, b) += amp_a * std::conj(amp_b);
      }
    }
  }
  return rho;
}

inline double trace_norm(const Mat& hermitian) {
  Eigen::ComplexEigenSolver<Mat> solver(hermitian);
  return solver.eigenvalues().cwiseAbs().sum();
}

// Dense cq state of a coalition: sum over all 2^n x-strings w (weight 2^-n,
// flip bit = parity of w) of |w_S><w_S| (x) rho_S(state of flip x).
inline Mat coalition_state(Complex alpha, Complex beta, std::size_t n, const std::vector<std::size_t>& subset) {
  const std::size_t s = subset.size();
  const Mat rho0 = partial_trace(cat(n, alpha, beta), n, subset);
  const Mat rho1 = partial_trace(cat(n, beta, alpha), n, subset);
  const auto reg_dim = static_cast<Eigen::Index>(1) << s;
  Mat out = Mat::Zero(reg_dim * reg_dim, reg_dim * reg_dim);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    const auto bits = bits_of(w, n);
    int x = 0;
    for (int b : bits) x ^= b;
    std::vector<int> visible;
    for (std::size_t p : subset) visible.push_back(bits[p - 1]);
    const Vec c = ket(visible);
    out += std::pow(2.0, -static_cast<double>(n)) * kron(c * c.adjoint(), x ? rho1 : rho0);
  }
  return out;
}

// Runs the reconstruction branch fixed by (flip x, x-string, outcomes y) with
// projectors and returns the receiver's normalized qubit, or an empty
// vector when the branch has zero probability.
inline Vec reconstruct_branch(Complex alpha, Complex beta, std::size_t n, std::size_t receiver, int x,
                              const std::vector<int>& x_string, const std::vector<int>& y_by_player) {
  Vec psi = x ? cat(n, beta, alpha) : cat(n, alpha, beta);
  int y_parity = 0;
  for (std::size_t p = 1; p <= n; ++p) {
    if (p == receiver) continue;
    psi = embed(H(), p, n) * psi;
    psi = embed(proj(y_by_player[p - 1]), p, n) * psi;
    y_parity ^= y_by_player[p - 1];
  }
  const double norm = psi.norm();
  if (norm < 1e-12) return {};
  psi /= norm;
  int x_parity = 0;
  for (int b : x_string) x_parity ^= b;
  if (y_parity) psi = embed(Z(), receiver, n) * psi;
  if (x_parity) psi = embed(N(), receiver, n) * psi;

  // Read off the receiver qubit next to the measured basis values.
  std::vector<int> bits = y_by_player;
  Vec out(2);
  for (int b = 0; b < 2; ++b) {
    bits[receiver - 1] = b;
    out(b) = amplitude(psi, bits);
  }
  return out;
}

}  // namespace ghzlab::oracle
