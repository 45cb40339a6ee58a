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

#include "fock/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace fock {

void QuadratureSpec::validate() const {
  if (radial_nodes < 8) throw ValidationError("radial_nodes must be >= 8");
  if (angular_nodes < 16 || angular_nodes % 2 != 0)
    throw ValidationError("angular_nodes must be even and >= 16");
  if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (radial_cutoff < 0.0) throw ValidationError("radial_cutoff must be nonnegative");
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec s = *this;
  s.radial_nodes *= 2;
  s.angular_nodes *= 2;
  return s;
}

namespace {

struct Evaluation {
  double p;          // p_n(x) times exp(-log_scale)
  double dp;         // p_n'(x), same scale
  double log_sum;    // log sum_{j<n} p_j(x)^2
};

// Orthonormal recurrence at x, rescaled to avoid overflow.
Evaluation evaluate_recurrence(int n, double x, const std::function<double(int)>& a,
                               const std::function<double(int)>& b, double mu0) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(mu0);
  double dp_prev = 0.0;
  double dp = 0.0;
  double sum = 0.0;
  double log_scale = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += p * p;
    const double bn = b(j + 1);
    const double bj = j == 0 ? 0.0 : b(j);
    const double p_next = ((x - a(j)) * p - bj * p_prev) / bn;
    const double dp_next = (p + (x - a(j)) * dp - bj * dp_prev) / bn;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
    const double mag = std::max(std::abs(p), std::abs(p_prev));
    if (mag > 1e100) {
      const double s = 1.0 / mag;
      p *= s;
      p_prev *= s;
      dp *= s;
      dp_prev *= s;
      sum *= s * s;
      log_scale += std::log(mag);
    }
  }
  return {p, dp, std::log(sum) + 2.0 * log_scale};
}

}  // namespace

GaussRule gauss_rule_from_recurrence(int n, const std::function<double(int)>& a,
                                     const std::function<double(int)>& b, double mu0) {
  if (n < 1) throw ValidationError("Gauss rule needs at least one node");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int j = 0; j < n; ++j) diag[j] = a(j);
  for (int j = 0; j + 1 < n; ++j) sub[j] = b(j + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = eig.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const Evaluation e = evaluate_recurrence(n, x, a, b, mu0);
      if (e.dp == 0.0) break;
      const double step = e.p / e.dp;
      if (!std::isfinite(step) || std::abs(step) > 1e-6 * (1.0 + std::abs(x))) break;
      x -= step;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] =
        std::exp(-evaluate_recurrence(n, x, a, b, mu0).log_sum);
  }
  return rule;
}

namespace {

template <typename Key>
class RuleCache {
 public:
  const GaussRule& get(const Key& key, const std::function<GaussRule()>& make) {
    std::lock_guard lock(mutex_);
    auto it = rules_.find(key);
    if (it == rules_.end()) it = rules_.emplace(key, std::make_unique<GaussRule>(make())).first;
    return *it->second;
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::unique_ptr<GaussRule>> rules_;
};

}  // namespace

const GaussRule& laguerre_rule(int n, double alpha) {
  static RuleCache<std::pair<int, double>> cache;
  return cache.get({n, alpha}, [n, alpha] {
    return gauss_rule_from_recurrence(
        n, [alpha](int j) { return 2.0 * j + alpha + 1.0; },
        [alpha](int j) { return std::sqrt(j * (j + alpha)); }, 1.0);
  });
}

const GaussRule& legendre_rule(int n) {
  static RuleCache<int> cache;
  return cache.get(n, [n] {
    return gauss_rule_from_recurrence(
        n, [](int) { return 0.0; },
        [](int j) { return j / std::sqrt(4.0 * j * j - 1.0); }, 2.0);
  });
}

const GaussRule& hermite_rule(int n) {
  static RuleCache<int> cache;
  return cache.get(n, [n] {
    return gauss_rule_from_recurrence(
        n, [](int) { return 0.0; }, [](int j) { return std::sqrt(0.5 * j); }, std::sqrt(kPi));
  });
}

ScalarField ScalarField::from_expression(expr::Expression e) {
  ScalarField f;
  f.growth_ = e.growth();
  if (f.growth_.gauss >= 1.0)
    throw ValidationError("integrand '" + e.to_string() +
                          "' grows like exp(c|z|^2) with c >= 1; not integrable against dν");
  f.radial_ = e.depends_only_on_modulus() && !e.uses_lattice_vars();
  f.name_ = e.to_string();
  f.expr_ = std::move(e);
  return f;
}

ScalarField ScalarField::builtin(std::function<Complex(Complex)> fn, expr::Growth growth,
                                 std::string name, bool radial) {
  ScalarField f;
  f.fn_ = std::move(fn);
  f.growth_ = growth;
  f.name_ = std::move(name);
  f.radial_ = radial;
  return f;
}

std::vector<PlaneNode> plane_nodes(const QuadratureSpec& spec) {
  spec.validate();
  const int m = spec.angular_nodes;
  std::vector<std::pair<double, double>> radial;  // (s, weight including e^{-s})
  if (spec.radial_cutoff > 0.0) {
    const GaussRule& leg = legendre_rule(spec.radial_nodes);
    const double top = spec.radial_cutoff * spec.radial_cutoff;
    for (std::size_t i = 0; i < leg.nodes.size(); ++i) {
      const double s = 0.5 * top * (leg.nodes[i] + 1.0);
      radial.emplace_back(s, 0.5 * top * leg.weights[i] * std::exp(-s));
    }
  } else {
    const GaussRule& lag = laguerre_rule(spec.radial_nodes);
    for (std::size_t i = 0; i < lag.nodes.size(); ++i) radial.emplace_back(lag.nodes[i], lag.weights[i]);
  }
  std::vector<PlaneNode> out;
  out.reserve(radial.size() * static_cast<std::size_t>(m));
  for (const auto& [s, w] : radial) {
    const double rho = std::sqrt(s);
    for (int j = 0; j < m; ++j)
      out.push_back({std::polar(rho, 2.0 * kPi * j / m), w / m});
  }
  return out;
}

namespace {

void check_doubling(const IntegralResult& r, double tolerance, const char* what) {
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()) ||
      r.error > 10.0 * tolerance * std::max(1.0, std::abs(r.value)))
    throw NonConvergent(std::string(what) + ": node doubling changed the value by " +
                        std::to_string(r.error));
}

Complex plane_sum(const std::function<Complex(Complex)>& g, const QuadratureSpec& spec) {
  Complex acc{};
  for (const PlaneNode& p : plane_nodes(spec)) acc += p.w * g(p.z);
  return acc;
}

}  // namespace

IntegralResult gaussian_plane_integral(const std::function<Complex(Complex)>& g,
                                       const QuadratureSpec& spec) {
  const Complex coarse = plane_sum(g, spec);
  const Complex fine = plane_sum(g, spec.doubled());
  IntegralResult r{fine, std::abs(fine - coarse)};
  check_doubling(r, spec.tolerance, "gaussian_plane_integral");
  return r;
}

IntegralResult gaussian_plane_integral(const ScalarField& g, const QuadratureSpec& spec) {
  if (g.growth().gauss >= 1.0) throw ValidationError("integrand is not admissible for dν");
  return gaussian_plane_integral([&g](Complex z) { return g(z); }, spec);
}

namespace {

Complex moment_sum(const std::function<Complex(double)>& a, int k, const QuadratureSpec& spec) {
  Complex acc{};
  if (spec.radial_cutoff > 0.0) {
    const GaussRule& leg = legendre_rule(spec.radial_nodes);
    const double top = spec.radial_cutoff * spec.radial_cutoff;
    const double lk = log_factorial(k);
    for (std::size_t i = 0; i < leg.nodes.size(); ++i) {
      const double s = 0.5 * top * (leg.nodes[i] + 1.0);
      const double w = 0.5 * top * leg.weights[i] * std::exp(k * std::log(s) - s - lk);
      acc += w * a(std::sqrt(s));
    }
    return acc;
  }
  const GaussRule& lag = laguerre_rule(spec.radial_nodes, static_cast<double>(k));
  for (std::size_t i = 0; i < lag.nodes.size(); ++i) acc += lag.weights[i] * a(std::sqrt(lag.nodes[i]));
  return acc;
}

}  // namespace

IntegralResult radial_moment(const std::function<Complex(double)>& a, int k,
                             const QuadratureSpec& spec) {
  if (k < 0) throw ValidationError("radial_moment: k must be nonnegative");
  spec.validate();
  const Complex coarse = moment_sum(a, k, spec);
  const Complex fine = moment_sum(a, k, spec.doubled());
  IntegralResult r{fine, std::abs(fine - coarse)};
  check_doubling(r, spec.tolerance, "radial_moment");
  return r;
}

IntegralResult radial_moment(const ScalarField& a, int k, const QuadratureSpec& spec) {
  if (!a.radial()) throw ValidationError("radial_moment: field is not radial");
  return radial_moment([&a](double r) { return a(Complex(r, 0.0)); }, k, spec);
}

double disk_integral(const std::function<double(Complex)>& h, Complex c, double r,
                     int radial_nodes, int angular_nodes) {
  const GaussRule& leg = legendre_rule(radial_nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < leg.nodes.size(); ++i) {
    const double rho = 0.5 * r * (leg.nodes[i] + 1.0);
    double ring = 0.0;
    for (int j = 0; j < angular_nodes; ++j)
      ring += h(c + std::polar(rho, 2.0 * kPi * (j + 0.5) / angular_nodes));
    acc += 0.5 * r * leg.weights[i] * rho * ring * (2.0 * kPi / angular_nodes);
  }
  return acc;
}

double clipped_disk_integral(const std::function<double(Complex)>& h, Complex c, double r, double support,
                             int nodes) {
  const double a = std::abs(c);
  const double phi0 = std::arg(c);
  std::vector<double> cuts{0.0, 2.0 * kPi};
  auto add_pair = [&](double cos_value) {
    if (std::abs(cos_value) >= 1.0) return;
    const double d = std::acos(cos_value);
    for (double t : {phi0 + d, phi0 - d}) cuts.push_back(t - 2.0 * kPi * std::floor(t / (2.0 * kPi)));
  };
  if (a > 0.0) {
    // Rim of B(c, r) meets the support circle.
    add_pair((support * support - a * a - r * r) / (2.0 * r * a));
    // Rays tangent to the support circle.
    if (a > support) add_pair(-std::sqrt(1.0 - (support * support) / (a * a)));
    // Center on the support circle: the ray length vanishes at right angles.
    if (std::abs(a - support) <= 1e-12 * support) add_pair(0.0);
  }
  std::sort(cuts.begin(), cuts.end());
  const GaussRule& leg = legendre_rule(nodes);
  const double c2 = a * a - support * support;
  double acc = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    if (half <= 0.0) continue;
    const double centre = 0.5 * (cuts[p] + cuts[p + 1]);
    for (std::size_t i = 0; i < leg.nodes.size(); ++i) {
      // theta = centre + half sin(pi u / 2) absorbs square-root endpoint
      // behaviour of the ray length at tangent rays.
      const double u = 0.5 * kPi * leg.nodes[i];
      const double theta = centre + half * std::sin(u);
      const double jac = half * 0.5 * kPi * std::cos(u);
      const Complex dir = std::polar(1.0, theta);
      // |c + t dir| <= support for t in [t1, t2].
      const double b = (std::conj(c) * dir).real();
      const double disc = b * b - c2;
      if (disc <= 0.0) continue;
      const double lo = std::max(0.0, -b - std::sqrt(disc));
      const double hi = std::min(r, -b + std::sqrt(disc));
      if (hi <= lo) continue;
      const double mid = 0.5 * (lo + hi);
      const double len = 0.5 * (hi - lo);
      double ray = 0.0;
      for (std::size_t j = 0; j < leg.nodes.size(); ++j) {
        const double t = mid + len * leg.nodes[j];
        ray += leg.weights[j] * t * h(c + t * dir);
      }
      acc += jac * leg.weights[i] * len * ray;
    }
  }
  return acc;
}

}  // namespace fock
