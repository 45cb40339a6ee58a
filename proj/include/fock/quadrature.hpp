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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fock/common.hpp"
#include "fock/expr.hpp"

namespace fock {

/// Parameters of the Gaussian-measure integration rule.
struct QuadratureSpec {
  int radial_nodes = 96;
  int angular_nodes = 256;
  double radial_cutoff = 0.0;  // 0: whole plane (Laguerre); > 0: disk |z| <= cutoff (Legendre)
  double tolerance = 1e-10;

  /// Throws ValidationError unless radial_nodes >= 8 and angular_nodes is even and >= 16.
  void validate() const;
  QuadratureSpec doubled() const;
};

/// Nodes and weights of an n-point Gauss rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule for the orthonormal three-term recurrence
///   b_{j+1} p_{j+1}(x) = (x - a_j) p_j(x) - b_j p_{j-1}(x),  p_0 = mu0^{-1/2}.
/// Nodes come from the symmetric tridiagonal eigenproblem and are polished by
/// Newton steps; weights use the Christoffel form mu0 / sum_j p_j(x)^2 with
/// running log-rescaling, so tiny weights keep full relative accuracy.
GaussRule gauss_rule_from_recurrence(int n, const std::function<double(int)>& a,
                                     const std::function<double(int)>& b, double mu0);

/// Generalized Gauss-Laguerre rule for s^alpha e^{-s} on [0, inf), normalized
/// to unit mass. Cached; the reference stays valid for the program lifetime.
const GaussRule& laguerre_rule(int n, double alpha = 0.0);

/// Gauss-Legendre on [-1, 1], weights sum to 2. Cached.
const GaussRule& legendre_rule(int n);

/// Gauss-Hermite for e^{-x^2} on R, weights sum to sqrt(pi). Cached.
const GaussRule& hermite_rule(int n);

/// Map ℂ -> ℂ with a growth class fixed at construction.
class ScalarField {
 public:
  ScalarField() = default;

  /// Growth comes from syntactic analysis of the expression; a Gaussian
  /// exponent >= 1 is rejected here.
  static ScalarField from_expression(expr::Expression e);
  static ScalarField builtin(std::function<Complex(Complex)> f, expr::Growth growth,
                             std::string name, bool radial = false);

  Complex operator()(Complex z) const { return expr_ ? (*expr_)(z) : fn_(z); }
  const expr::Growth& growth() const { return growth_; }
  bool radial() const { return radial_; }
  const std::optional<expr::Expression>& expression() const { return expr_; }
  std::string to_string() const { return expr_ ? expr_->to_string() : name_; }

 private:
  std::optional<expr::Expression> expr_;
  std::function<Complex(Complex)> fn_;
  expr::Growth growth_;
  std::string name_;
  bool radial_ = false;
};

struct IntegralResult {
  Complex value;
  double error = 0.0;  // |change under node doubling|
};

/// Weighted points (z_i, w_i) with sum_i w_i g(z_i) ~ ∫ g dν. With a cutoff the
/// rule covers only the disk |z| <= cutoff.
struct PlaneNode {
  Complex z;
  double w;
};
std::vector<PlaneNode> plane_nodes(const QuadratureSpec& spec);

/// ∫ g dν by the polar product rule, returned with the doubling error.
/// Throws NonConvergent when doubling moves the value by more than
/// 10 * tolerance * max(1, |value|).
IntegralResult gaussian_plane_integral(const ScalarField& g, const QuadratureSpec& spec = {});
IntegralResult gaussian_plane_integral(const std::function<Complex(Complex)>& g,
                                       const QuadratureSpec& spec = {});

/// (1/k!) ∫_0^inf a(sqrt s) e^{-s} s^k ds via the generalized Laguerre rule with alpha = k.
IntegralResult radial_moment(const ScalarField& a, int k, const QuadratureSpec& spec = {});
IntegralResult radial_moment(const std::function<Complex(double)>& a, int k,
                             const QuadratureSpec& spec = {});

/// ∫_{|w - c| < r} h(w) dV(w) by Gauss-Legendre in the radius and the
/// trapezoid rule in the angle.
double disk_integral(const std::function<double(Complex)>& h, Complex c, double r,
                     int radial_nodes = 24, int angular_nodes = 64);

/// ∫ h over B(c, r) ∩ {|w| <= support}. Polar coordinates around c with the
/// angular range split where the ray length is not smooth, Gauss-Legendre in
/// both directions.
double clipped_disk_integral(const std::function<double(Complex)>& h, Complex c, double r, double support,
                             int nodes = 32);

}  // namespace fock
