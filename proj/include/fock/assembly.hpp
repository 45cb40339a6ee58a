// Copyright 2026 The fock-toeplitz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fock/core.hpp"
#include "fock/quadrature.hpp"
#include "fock/symbol.hpp"

namespace fock {

/// Dense truncation entries(m, n) = <T e_n, e_m>, 0 <= m, n <= degree.
class OperatorMatrix {
 public:
  OperatorMatrix() : OperatorMatrix(0) {}
  explicit OperatorMatrix(std::size_t degree) : m_(Eigen::MatrixXcd::Zero(degree + 1, degree + 1)) {}
  explicit OperatorMatrix(Eigen::MatrixXcd m);

  static OperatorMatrix identity(std::size_t degree);

  std::size_t degree() const { return static_cast<std::size_t>(m_.rows()) - 1; }
  Complex operator()(std::size_t m, std::size_t n) const { return m_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)); }
  Complex& operator()(std::size_t m, std::size_t n) { return m_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::MatrixXcd& matrix() { return m_; }

  /// Set when the symbol may define an unbounded operator (finite truncations
  /// are still returned).
  bool possibly_unbounded = false;

 private:
  Eigen::MatrixXcd m_;
};

struct AssemblyOptions {
  QuadratureSpec spec;
  Exec exec = Exec::parallel;
  double series_tolerance = 0.1;
  double carleson_r = 1.4142135623730951;
  double carleson_R = 12.0;
};

/// Matrix of the operator defined by any symbol.
///
/// Function symbols and densities use the polar rule (with a node-doubling
/// check); radial symbols go through radial moments; atoms and lattices are
/// summed directly; point distributions use the exact Leibniz expansion;
/// series are summed after their norm gate passes.
OperatorMatrix assemble(const Symbol& s, std::size_t degree, const AssemblyOptions& opt = {});

/// Diagonal of a radial symbol: gamma(k) = radial_moment(a, k), k = 0..degree.
std::vector<Complex> radial_eigenvalues(const RadialSymbol& s, std::size_t degree,
                                        const QuadratureSpec& spec = {}, Exec exec = Exec::parallel);

/// Matrix-vector product in the monomial basis.
FockVector apply(const OperatorMatrix& m, const FockVector& f, Exec exec = Exec::serial);

/// (T_s f)(z) = F_s(f, k_z) evaluated directly, without truncation.
Complex action_at_point(const Symbol& s, const FockVector& f, Complex z, const QuadratureSpec& spec = {});

/// gamma_{alpha,beta,k}(n) for the measure (1+|z|^2)^{-k} dV:
///   (-1)^{alpha+beta} sqrt(n! (n-alpha+beta)!) / ((n-alpha)!)^2
///     * ∫_0^inf s^{n-alpha} e^{-s} (1+s)^{-k} ds,
/// zero for n < alpha. Log-scaled; the integral uses the generalized
/// Laguerre rule with exponent n - alpha.
double gamma_alpha_beta_k(int alpha, int beta, int k, int n, const QuadratureSpec& spec = {});

struct ApproximationResult {
  double norm_distance = 0.0;
  std::size_t argmax = 0;  // index of the largest diagonal difference
};

/// ||T_{a_n} - P_0|| at truncation N, a_n(r) = (1+n) e^{-n r^2}.
ApproximationResult approximation_experiment(int n, std::size_t degree, Exec exec = Exec::parallel);

namespace kernels {

/// out(m, n) = sum_i c_i conj(row_basis(i, m)) col_basis(i, n), rows of the
/// node-major basis tables. Each output entry accumulates in node order in
/// both policies, so serial and parallel results are bit-identical.
Eigen::MatrixXcd weighted_gram(const Eigen::MatrixXcd& row_basis, const Eigen::MatrixXcd& col_basis,
                               const std::vector<Complex>& c, Exec exec);

}  // namespace kernels

}  // namespace fock
