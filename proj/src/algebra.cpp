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

#include "fock/algebra.hpp"

#include <random>

#include "fock/core.hpp"

namespace fock {

namespace {

Eigen::MatrixXcd padded(const OperatorMatrix& m, std::size_t degree) {
  const auto n = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  const auto k = m.matrix().rows();
  out.topLeftCorner(k, k) = m.matrix();
  return out;
}

double log_binomial(double n, double k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

}  // namespace

OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b) {
  const std::size_t d = std::max(a.degree(), b.degree());
  OperatorMatrix out(padded(a, d) + padded(b, d));
  out.possibly_unbounded = a.possibly_unbounded || b.possibly_unbounded;
  return out;
}

OperatorMatrix scale(const OperatorMatrix& m, Complex c) {
  OperatorMatrix out(Eigen::MatrixXcd(c * m.matrix()));
  out.possibly_unbounded = m.possibly_unbounded;
  return out;
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.degree() != b.degree()) throw ValidationError("compose: degrees differ");
  OperatorMatrix out(Eigen::MatrixXcd(a.matrix() * b.matrix()));
  out.possibly_unbounded = a.possibly_unbounded || b.possibly_unbounded;
  return out;
}

OperatorMatrix adjoint(const OperatorMatrix& m) {
  OperatorMatrix out(Eigen::MatrixXcd(m.matrix().adjoint()));
  out.possibly_unbounded = m.possibly_unbounded;
  return out;
}

double op_norm(const OperatorMatrix& m, const NormOptions& opt) {
  const double s = m.matrix().cwiseAbs().maxCoeff();
  if (s == 0.0) return 0.0;
  if (!std::isfinite(s)) throw ValidationError("op_norm: matrix has non-finite entries");
  const Eigen::MatrixXcd a = m.matrix() / s;
  const Eigen::MatrixXcd g = a.adjoint() * a;
  const auto n = g.rows();
  // G^(2^s), normalized after each squaring, applied to the start vector
  // removes the components outside the top eigenspace even when the spectral
  // gap is tiny.
  Eigen::MatrixXcd power = g;
  const int squarings = n <= opt.squaring_limit ? opt.squarings : 0;
  for (int i = 0; i < squarings; ++i) {
    power = (power * power).eval();
    const double mx = power.cwiseAbs().maxCoeff();
    if (mx == 0.0) break;
    power /= mx;
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  double best = 0.0;
  for (int run = 0; run < opt.restarts; ++run) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
    v.normalize();
    if (squarings > 0) {
      const Eigen::VectorXcd pv = power * v;
      if (pv.norm() > 0.0) v = pv.normalized();
    }
    bool done = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
      Eigen::VectorXcd w = g * v;
      const double theta = v.dot(w).real();
      const double wn = w.norm();
      if (wn == 0.0) {
        done = true;
        break;
      }
      if ((w - theta * v).norm() <= opt.tolerance * theta) {
        best = std::max(best, theta);
        done = true;
        break;
      }
      v = w / wn;
    }
    if (!done) throw NoConvergence("op_norm: power iteration did not converge");
  }
  return s * std::sqrt(best);
}

OperatorMatrix reflection_matrix(std::size_t degree) {
  OperatorMatrix j(degree);
  for (std::size_t k = 0; k <= degree; ++k) j(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return j;
}

OperatorMatrix reflection_form_matrix(std::size_t degree, const QuadratureSpec& spec) {
  const auto nodes = plane_nodes(spec);
  OperatorMatrix out(degree);
  for (const PlaneNode& node : nodes) {
    const auto plus = basis_derivatives(node.z, 0, degree);
    const auto minus = basis_derivatives(-node.z, 0, degree);
    for (std::size_t m = 0; m <= degree; ++m)
      for (std::size_t n = 0; n <= degree; ++n) out(m, n) += node.w * minus[n] * std::conj(plus[m]);
  }
  return out;
}

OperatorMatrix composition_matrix(Complex a, Complex b, std::size_t degree) {
  const double abs_a = std::abs(a);
  const bool bounded = abs_a < 1.0 || (std::abs(abs_a - 1.0) <= 1e-14 && b == Complex{});
  if (!bounded)
    throw UnboundedComposition("composition with z -> a z + b is unbounded unless |a| < 1, or |a| = 1 and b = 0");
  OperatorMatrix out(degree);
  for (std::size_t k = 0; k <= degree; ++k)
    for (std::size_t j = 0; j <= k; ++j) {
      const std::size_t e = k - j;
      if ((j > 0 && a == Complex{}) || (e > 0 && b == Complex{})) continue;
      const double jd = static_cast<double>(j);
      const double kd = static_cast<double>(k);
      double log_mag = 0.5 * (log_factorial(jd) - log_factorial(kd)) + log_binomial(kd, jd);
      double phase = 0.0;
      if (j > 0) {
        log_mag += jd * std::log(abs_a);
        phase += jd * std::arg(a);
      }
      if (e > 0) {
        log_mag += static_cast<double>(e) * std::log(std::abs(b));
        phase += static_cast<double>(e) * std::arg(b);
      }
      out(j, k) = std::polar(std::exp(log_mag), phase);
    }
  return out;
}

OperatorMatrix truncate(const OperatorMatrix& m, std::size_t j) {
  if (j > m.degree()) throw ValidationError("truncate: level exceeds the degree");
  OperatorMatrix out(m.degree());
  const auto k = static_cast<Eigen::Index>(j + 1);
  out.matrix().topLeftCorner(k, k) = m.matrix().topLeftCorner(k, k);
  out.possibly_unbounded = m.possibly_unbounded;
  return out;
}

std::vector<PointTerm> psi_point_terms(int p, int q, Complex c) {
  std::vector<PointTerm> out;
  const double sign = ((p + q) % 2 == 0) ? 1.0 : -1.0;
  const double base = -0.5 * (log_factorial(p) + log_factorial(q));
  for (int t = 0; t <= std::min(p, q); ++t) {
    const double mag = std::exp(base + log_binomial(p, t) + log_binomial(q, t) + log_factorial(t));
    out.push_back({p - t, q - t, c * (sign * kPi * mag)});
  }
  return out;
}

DecompositionResult decompose_to_symbol(const OperatorMatrix& m) {
  DecompositionResult r;
  r.degree = m.degree();
  const std::size_t d = m.degree();
  for (std::size_t p = 0; p <= d; ++p)
    for (std::size_t q = 0; q <= d; ++q) {
      const Complex c = m(q, p);
      if (c == Complex{}) continue;
      r.terms.push_back({static_cast<int>(p), static_cast<int>(q), c});
      for (const PointTerm& t : psi_point_terms(static_cast<int>(p), static_cast<int>(q), c))
        r.point_form.terms.push_back(t);
    }
  return r;
}

std::vector<double> rank_one_approximation_experiment(std::size_t n, std::size_t m_max, std::size_t degree) {
  if (n > degree) throw ValidationError("rank_one_approximation_experiment: n exceeds the degree");
  OperatorMatrix p(degree);
  for (std::size_t k = 0; k <= degree; ++k)
    p(k, n) = std::exp(-static_cast<double>(k) * log_factorial(static_cast<double>(k)));
  std::vector<double> out;
  for (std::size_t m = 0; m <= m_max; ++m) {
    OperatorMatrix s(degree);
    for (std::size_t k = 0; k <= std::min(m, degree); ++k) s(k, n) = p(k, n);
    out.push_back(op_norm(add(p, scale(s, -1.0))));
  }
  return out;
}

double rank_one_tail(std::size_t m, std::size_t degree) {
  LogReal acc;
  for (std::size_t k = m + 1; k <= degree; ++k) {
    const double kd = static_cast<double>(k);
    acc = log_add(acc, LogReal::from_log(-2.0 * kd * log_factorial(kd)));
  }
  return acc.is_zero() ? 0.0 : std::exp(0.5 * acc.log_abs);
}

}  // namespace fock
