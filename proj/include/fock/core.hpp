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

#include <cstddef>
#include <span>
#include <vector>

#include "fock/common.hpp"

namespace fock {

inline constexpr std::size_t kDefaultDegree = 64;

/// Truncated expansion of an entire function in the orthonormal monomial
/// basis e_k(z) = z^k / sqrt(k!). coeffs[k] = <f, e_k>.
///
/// Trailing zeros are storage only: two vectors that differ by zero padding
/// compare equal.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  static FockVector zero(std::size_t degree) { return FockVector(std::vector<Complex>(degree + 1)); }
  static FockVector basis(std::size_t k, std::size_t degree = 0);

  /// Highest stored index. An empty vector reports degree 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  /// Coefficient k, zero beyond the stored degree.
  Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

  double norm() const;
  FockVector padded(std::size_t degree) const;

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector& operator*=(Complex c);

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(Complex c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector& a, const FockVector& b);

 private:
  std::vector<Complex> coeffs_;
};

/// e_k(z) = z^k / sqrt(k!), evaluated in log-scale so that large k does not
/// overflow the factorial.
Complex eval_basis(std::size_t k, Complex z);

/// d^j/dz^j e_k(z) = sqrt(k!) / (k-j)! * z^(k-j); zero for j > k.
Complex eval_basis_derivative(std::size_t k, std::size_t j, Complex z);

/// Values e_k^(j)(z) * exp(-|z|^2/2) for k = 0..degree. The Gaussian factor is
/// folded in before exponentiation, which keeps far-out lattice and quadrature
/// points finite.
std::vector<Complex> weighted_basis_derivatives(Complex z, std::size_t order, std::size_t degree);

/// Same without the Gaussian factor.
std::vector<Complex> basis_derivatives(Complex z, std::size_t order, std::size_t degree);

/// Reproducing kernel k_z(w) = exp(w conj(z)).
Complex kernel(Complex z, Complex w);

/// Coefficients of k_z truncated at `degree`: <k_z, e_k> = conj(e_k(z)).
FockVector kernel_vector(Complex z, std::size_t degree);

Complex eval(const FockVector& f, Complex z);
Complex eval_derivative(const FockVector& f, std::size_t order, Complex z);

/// <f, g> = sum f_k conj(g_k).
Complex inner(const FockVector& f, const FockVector& g);

/// k! s^-k max_{|zeta - z| = s} |f(zeta)|. The circle maximum is sampled on a
/// grid that doubles from 256 points until the maximum is stable to 1e-6 and
/// then polished by golden-section search around the best sample.
double cauchy_derivative_bound(const FockVector& f, std::size_t k, Complex z, double s);

/// gamma(k, z): k! for |z| <= k and k^(-1/2) beyond (k >= 1); gamma(0, z) = 1.
struct GrowthFactor {
  std::size_t k = 0;
  Complex z{};
  LogReal value;
};

GrowthFactor growth_factor(std::size_t k, Complex z);

/// Same as growth_factor for real (half-integer) k: Gamma(k+1) inside |z| <= k,
/// k^(-1/2) outside.
double log_growth_factor(double k, double abs_z);

/// log of k! (1+|z|)^k e^{|z|^2/2} (sharp = false) or
/// gamma(k,z) (1+|z|)^k e^{|z|^2/2} (sharp = true).
double log_growth_bound(std::size_t k, Complex z, bool sharp);

/// log of the constant-explicit derivative bound for unit-norm f:
/// k! e^2 for |z| <= 1 and k! (1+|z|)^k e^{(|z|^2+3)/2} for |z| > 1.
double log_safe_derivative_bound(std::size_t k, Complex z);

}  // namespace fock
