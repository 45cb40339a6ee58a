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

#include "fock/core.hpp"

#include <algorithm>
#include <cmath>

namespace fock {

FockVector FockVector::basis(std::size_t k, std::size_t degree) {
  FockVector v = zero(std::max(k, degree));
  v.coeffs_[k] = 1.0;
  return v;
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

FockVector FockVector::padded(std::size_t degree) const {
  FockVector v = *this;
  if (v.coeffs_.size() < degree + 1) v.coeffs_.resize(degree + 1);
  return v;
}

FockVector& FockVector::operator+=(const FockVector& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

FockVector& FockVector::operator*=(Complex c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const FockVector& a, const FockVector& b) {
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t k = 0; k < n; ++k)
    if (a[k] != b[k]) return false;
  return true;
}

namespace {

// sqrt(k!)/(k-j)! |z|^(k-j) e^{shift} with phase (k-j) arg z.
Complex log_scaled_term(std::size_t k, std::size_t j, Complex z, double log_shift) {
  if (j > k) return {};
  const std::size_t p = k - j;
  const double log_coef = 0.5 * log_factorial(static_cast<double>(k)) -
                          log_factorial(static_cast<double>(p)) + log_shift;
  if (p == 0) return {std::exp(log_coef), 0.0};
  const double r = std::abs(z);
  if (r == 0.0) return {};
  const double mag = std::exp(log_coef + static_cast<double>(p) * std::log(r));
  return std::polar(mag, static_cast<double>(p) * std::arg(z));
}

}  // namespace

Complex eval_basis(std::size_t k, Complex z) { return log_scaled_term(k, 0, z, 0.0); }

Complex eval_basis_derivative(std::size_t k, std::size_t j, Complex z) {
  return log_scaled_term(k, j, z, 0.0);
}

std::vector<Complex> weighted_basis_derivatives(Complex z, std::size_t order, std::size_t degree) {
  std::vector<Complex> out(degree + 1);
  const double shift = -0.5 * std::norm(z);
  for (std::size_t k = order; k <= degree; ++k) out[k] = log_scaled_term(k, order, z, shift);
  return out;
}

std::vector<Complex> basis_derivatives(Complex z, std::size_t order, std::size_t degree) {
  std::vector<Complex> out(degree + 1);
  for (std::size_t k = order; k <= degree; ++k) out[k] = log_scaled_term(k, order, z, 0.0);
  return out;
}

Complex kernel(Complex z, Complex w) { return std::exp(w * std::conj(z)); }

FockVector kernel_vector(Complex z, std::size_t degree) {
  std::vector<Complex> c(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) c[k] = std::conj(eval_basis(k, z));
  return FockVector(std::move(c));
}

Complex eval(const FockVector& f, Complex z) { return eval_derivative(f, 0, z); }

Complex eval_derivative(const FockVector& f, std::size_t order, Complex z) {
  Complex s{};
  const auto c = f.coeffs();
  for (std::size_t k = order; k < c.size(); ++k) {
    if (c[k] == Complex{}) continue;
    s += c[k] * eval_basis_derivative(k, order, z);
  }
  return s;
}

Complex inner(const FockVector& f, const FockVector& g) {
  const std::size_t n = std::min(f.coeffs().size(), g.coeffs().size());
  Complex s{};
  for (std::size_t k = 0; k < n; ++k) s += f.coeffs()[k] * std::conj(g.coeffs()[k]);
  return s;
}

double cauchy_derivative_bound(const FockVector& f, std::size_t k, Complex z, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("cauchy_derivative_bound: s must be positive");
  auto on_circle = [&](double t) { return std::abs(eval(f, z + std::polar(s, t))); };

  std::size_t points = 256;
  double best = 0.0;
  double best_t = 0.0;
  double previous = -1.0;
  for (int round = 0; round < 12; ++round) {
    best = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(points);
      const double v = on_circle(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    if (previous >= 0.0 && std::abs(best - previous) <= 1e-6 * std::max(best, 1e-300)) break;
    previous = best;
    points *= 2;
  }

  // Golden-section polish in the bracket around the best sample.
  const double h = 2.0 * kPi / static_cast<double>(points);
  double a = best_t - h;
  double b = best_t + h;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = on_circle(c);
  double fd = on_circle(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = on_circle(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = on_circle(d);
    }
  }
  best = std::max({best, fc, fd});

  const double kd = static_cast<double>(k);
  return std::exp(log_factorial(kd) - kd * std::log(s)) * best;
}

double log_growth_factor(double k, double abs_z) {
  if (k == 0.0) return 0.0;
  return abs_z <= k ? log_factorial(k) : -0.5 * std::log(k);
}

GrowthFactor growth_factor(std::size_t k, Complex z) {
  return {k, z, LogReal::from_log(log_growth_factor(static_cast<double>(k), std::abs(z)))};
}

double log_growth_bound(std::size_t k, Complex z, bool sharp) {
  const double kd = static_cast<double>(k);
  const double r = std::abs(z);
  const double lead = sharp ? log_growth_factor(kd, r) : log_factorial(kd);
  return lead + kd * std::log1p(r) + 0.5 * r * r;
}

double log_safe_derivative_bound(std::size_t k, Complex z) {
  const double kd = static_cast<double>(k);
  const double r = std::abs(z);
  if (r <= 1.0) return log_factorial(kd) + 2.0;
  return log_factorial(kd) + kd * std::log1p(r) + 0.5 * (r * r + 3.0);
}

}  // namespace fock
