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

#include "fock/assembly.hpp"

#include <variant>

#include "fock/algebra.hpp"
#include "fock/carleson.hpp"
#include "fock/leibniz.hpp"
#include "fock/measure_form.hpp"
#include "parallel.hpp"

namespace fock {

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw ValidationError("operator matrix must be square");
}

OperatorMatrix OperatorMatrix::identity(std::size_t degree) {
  const auto n = static_cast<Eigen::Index>(degree + 1);
  return OperatorMatrix(Eigen::MatrixXcd::Identity(n, n));
}

namespace kernels {

Eigen::MatrixXcd weighted_gram(const Eigen::MatrixXcd& row_basis, const Eigen::MatrixXcd& col_basis,
                               const std::vector<Complex>& c, Exec exec) {
  const Eigen::Index nodes = row_basis.rows();
  const Eigen::Index rows = row_basis.cols();
  const Eigen::Index cols = col_basis.cols();
  Eigen::MatrixXcd weighted(nodes, cols);
  for (Eigen::Index n = 0; n < cols; ++n)
    for (Eigen::Index i = 0; i < nodes; ++i) {
      const Complex a = c[static_cast<std::size_t>(i)];
      const Complex b = col_basis(i, n);
      weighted(i, n) = Complex(a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real());
    }
  Eigen::MatrixXcd out(rows, cols);
  detail::for_each_index(static_cast<std::size_t>(cols), exec, [&](std::size_t nn) {
    const auto n = static_cast<Eigen::Index>(nn);
    const Complex* w = weighted.col(n).data();
    for (Eigen::Index m = 0; m < rows; ++m) {
      const Complex* r = row_basis.col(m).data();
      double re = 0.0;
      double im = 0.0;
      for (Eigen::Index i = 0; i < nodes; ++i) {
        // conj(r) * w
        re += r[i].real() * w[i].real() + r[i].imag() * w[i].imag();
        im += r[i].real() * w[i].imag() - r[i].imag() * w[i].real();
      }
      out(m, n) = Complex(re, im);
    }
  });
  return out;
}

}  // namespace kernels

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::MatrixXcd basis_table(const std::vector<Complex>& z, int order, std::size_t degree, bool weighted,
                             Exec exec) {
  Eigen::MatrixXcd t(static_cast<Eigen::Index>(z.size()), static_cast<Eigen::Index>(degree + 1));
  detail::for_each_index(z.size(), exec, [&](std::size_t i) {
    const auto v = weighted ? weighted_basis_derivatives(z[i], static_cast<std::size_t>(order), degree)
                            : basis_derivatives(z[i], static_cast<std::size_t>(order), degree);
    for (std::size_t k = 0; k <= degree; ++k) t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v[k];
  });
  return t;
}

Eigen::MatrixXcd nodes_gram(const MeasureNodes& nodes, int alpha, int beta, std::size_t degree, Exec exec) {
  const bool weighted = !nodes.gaussian_in_weights;
  const Eigen::MatrixXcd cols = basis_table(nodes.z, alpha, degree, weighted, exec);
  if (alpha == beta) return kernels::weighted_gram(cols, cols, nodes.c, exec);
  const Eigen::MatrixXcd rows = basis_table(nodes.z, beta, degree, weighted, exec);
  return kernels::weighted_gram(rows, cols, nodes.c, exec);
}

void check_doubling(const Eigen::MatrixXcd& coarse, const Eigen::MatrixXcd& fine, double tol, const char* what) {
  const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
  const double change = (fine - coarse).cwiseAbs().maxCoeff();
  if (!fine.allFinite() || change > 10.0 * tol * scale)
    throw NonConvergent(std::string(what) + ": node doubling changed the matrix by " + std::to_string(change));
}

Eigen::MatrixXcd measure_matrix(const MeasureSymbol& mu, int alpha, int beta, WeightMode mode,
                                std::size_t degree, const AssemblyOptions& opt) {
  const std::size_t poly = 2 * degree;
  const MeasureNodes nodes = measure_nodes(mu, mode, opt.spec, poly);
  Eigen::MatrixXcd m = nodes_gram(nodes, alpha, beta, degree, opt.exec);
  if (nodes.gaussian_in_weights) {
    Eigen::MatrixXcd fine = nodes_gram(measure_nodes(mu, mode, opt.spec.doubled(), poly), alpha, beta, degree, opt.exec);
    check_doubling(m, fine, opt.spec.tolerance, "assemble");
    m = std::move(fine);
  }
  if ((alpha + beta) % 2 == 1) m = -m;
  return m;
}

Eigen::MatrixXcd function_matrix(const ScalarField& a, std::size_t degree, const AssemblyOptions& opt) {
  auto build = [&](const QuadratureSpec& spec) {
    MeasureNodes nodes;
    nodes.gaussian_in_weights = true;
    for (const PlaneNode& p : plane_nodes(spec)) {
      nodes.z.push_back(p.z);
      nodes.c.push_back(p.w * a(p.z));
    }
    return nodes_gram(nodes, 0, 0, degree, opt.exec);
  };
  Eigen::MatrixXcd coarse = build(opt.spec);
  Eigen::MatrixXcd fine = build(opt.spec.doubled());
  check_doubling(coarse, fine, opt.spec.tolerance, "assemble");
  return fine;
}

Eigen::MatrixXcd point_matrix(const PointDistribution& d, std::size_t degree, Exec exec) {
  const auto size = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  detail::for_each_index(degree + 1, exec, [&](std::size_t col) {
    const int n = static_cast<int>(col);
    for (int row = 0; row < size; ++row) {
      Complex acc{};
      for (const PointTerm& t : d.terms) {
        const double sign = ((t.p + t.q) % 2 == 0) ? 1.0 : -1.0;
        acc += t.coeff * sign * leibniz_point_derivative(t.p, t.q, n, row, d.center);
      }
      m(row, n) = acc;
    }
  });
  return m;
}

}  // namespace

std::vector<Complex> radial_eigenvalues(const RadialSymbol& s, std::size_t degree, const QuadratureSpec& spec,
                                        Exec exec) {
  std::vector<Complex> gamma(degree + 1);
  detail::for_each_index(degree + 1, exec, [&](std::size_t k) {
    gamma[k] = radial_moment(s.field, static_cast<int>(k), spec).value;
  });
  return gamma;
}

OperatorMatrix assemble(const Symbol& s, std::size_t degree, const AssemblyOptions& opt) {
  const auto size = static_cast<Eigen::Index>(degree + 1);
  OperatorMatrix out(degree);
  std::visit(
      overloaded{
          [&](const FunctionSymbol& f) { out.matrix() = function_matrix(f.field, degree, opt); },
          [&](const RadialSymbol& r) {
            const auto gamma = radial_eigenvalues(r, degree, opt.spec, opt.exec);
            for (std::size_t k = 0; k <= degree; ++k) out(k, k) = gamma[k];
          },
          [&](const MeasureSymbol& m) {
            out.matrix() = measure_matrix(m, 0, 0, WeightMode::plain, degree, opt);
            out.possibly_unbounded = declared_fc_order(m) < 0.0;
          },
          [&](const CoderivedSymbol& c) {
            out.matrix() = measure_matrix(c.base, c.alpha, c.beta, c.mode, degree, opt);
            out.possibly_unbounded = c.alpha + c.beta > 2.0 * declared_fc_order(c.base);
          },
          [&](const PointDistribution& d) { out.matrix() = point_matrix(d, degree, opt.exec); },
          [&](const RankOne& r) {
            if (r.p < size && r.q < size) out(static_cast<std::size_t>(r.q), static_cast<std::size_t>(r.p)) = 1.0;
          },
          [&](const SeriesSymbol& se) {
            series_gate(se, opt.carleson_r, opt.carleson_R, opt.series_tolerance);
            for (const CoderivedSymbol& t : se.terms) {
              const OperatorMatrix part = assemble(Symbol{t}, degree, opt);
              out.matrix() += part.matrix();
              out.possibly_unbounded = out.possibly_unbounded || part.possibly_unbounded;
            }
          },
          [&](const SumSymbol& sum) {
            for (const auto& [c, t] : sum.terms) {
              const OperatorMatrix part = assemble(t, degree, opt);
              out.matrix() += c * part.matrix();
              out.possibly_unbounded = out.possibly_unbounded || part.possibly_unbounded;
            }
          },
      },
      s.v);
  return out;
}

FockVector apply(const OperatorMatrix& m, const FockVector& f, Exec exec) {
  if (f.degree() > m.degree()) {
    for (std::size_t k = m.degree() + 1; k <= f.degree(); ++k)
      if (f[k] != Complex{}) throw ValidationError("apply: vector degree exceeds the truncation");
  }
  std::vector<Complex> out(m.degree() + 1);
  detail::for_each_index(m.degree() + 1, exec, [&](std::size_t row) {
    Complex acc{};
    for (std::size_t n = 0; n <= m.degree(); ++n) acc += m(row, n) * f[n];
    out[row] = acc;
  });
  return FockVector(std::move(out));
}

namespace {

double binomial(int n, int k) { return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)); }

// F(f, k_z) for a point distribution: d_u^p d_v^q [ e^{-uv} f(u) e^{vz} / pi ] at (z0, conj z0).
Complex point_action(const PointDistribution& d, const FockVector& f, Complex z) {
  const Complex u = d.center;
  const Complex v = std::conj(u);
  const Complex e = std::exp(v * (z - u));
  Complex total{};
  for (const PointTerm& t : d.terms) {
    Complex acc{};
    for (int j = 0; j <= t.p; ++j) {
      Complex gj{};
      for (int i = 0; i <= std::min(j, t.q); ++i) {
        const double falling = std::exp(log_factorial(t.q) - log_factorial(t.q - i));
        gj += binomial(j, i) * ((i % 2 == 0) ? 1.0 : -1.0) * falling * std::pow(z - u, t.q - i) *
              std::pow(-v, j - i);
      }
      acc += binomial(t.p, j) * eval_derivative(f, static_cast<std::size_t>(t.p - j), u) * gj;
    }
    const double sign = ((t.p + t.q) % 2 == 0) ? 1.0 : -1.0;
    total += t.coeff * sign * acc * e / kPi;
  }
  return total;
}

Complex nodes_action(const MeasureNodes& nodes, int alpha, const FockVector& f, Complex z) {
  Complex acc{};
  for (std::size_t i = 0; i < nodes.z.size(); ++i) {
    const Complex w = nodes.z[i];
    Complex exponent = z * std::conj(w);
    if (!nodes.gaussian_in_weights) exponent -= std::norm(w);
    acc += nodes.c[i] * eval_derivative(f, static_cast<std::size_t>(alpha), w) * std::exp(exponent);
  }
  return acc;
}

Complex measure_action(const MeasureSymbol& mu, int alpha, int beta, WeightMode mode, const FockVector& f,
                       Complex z, const QuadratureSpec& spec) {
  const std::size_t poly = f.degree() + static_cast<std::size_t>(4.0 * std::norm(z)) + 8;
  const MeasureNodes nodes = measure_nodes(mu, mode, spec, poly);
  Complex value = nodes_action(nodes, alpha, f, z);
  if (nodes.gaussian_in_weights) {
    const Complex fine = nodes_action(measure_nodes(mu, mode, spec.doubled(), poly), alpha, f, z);
    const double change = std::abs(fine - value);
    if (!std::isfinite(fine.real()) || change > 10.0 * spec.tolerance * std::max(1.0, std::abs(fine)))
      throw NonConvergent("action_at_point: node doubling changed the value by " + std::to_string(change));
    value = fine;
  }
  const double sign = ((alpha + beta) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(z, beta) * value;
}

}  // namespace

Complex action_at_point(const Symbol& s, const FockVector& f, Complex z, const QuadratureSpec& spec) {
  return std::visit(
      overloaded{
          [&](const FunctionSymbol& a) {
            return gaussian_plane_integral(
                       [&](Complex w) { return a.field(w) * eval(f, w) * std::exp(z * std::conj(w)); }, spec)
                .value;
          },
          [&](const RadialSymbol& a) {
            return gaussian_plane_integral(
                       [&](Complex w) { return a.field(w) * eval(f, w) * std::exp(z * std::conj(w)); }, spec)
                .value;
          },
          [&](const MeasureSymbol& m) { return measure_action(m, 0, 0, WeightMode::plain, f, z, spec); },
          [&](const CoderivedSymbol& c) { return measure_action(c.base, c.alpha, c.beta, c.mode, f, z, spec); },
          [&](const PointDistribution& d) { return point_action(d, f, z); },
          [&](const RankOne& r) { return f[static_cast<std::size_t>(r.p)] * eval_basis(static_cast<std::size_t>(r.q), z); },
          [&](const SeriesSymbol& se) {
            Complex acc{};
            for (const auto& t : se.terms) acc += action_at_point(Symbol{t}, f, z, spec);
            return acc;
          },
          [&](const SumSymbol& sum) {
            Complex acc{};
            for (const auto& [c, t] : sum.terms) acc += c * action_at_point(t, f, z, spec);
            return acc;
          },
      },
      s.v);
}

namespace {

double gamma_sum(int j, int k, int nodes) {
  const GaussRule& rule = laguerre_rule(nodes, static_cast<double>(j));
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(1.0 + rule.nodes[i], -k);
  return acc;
}

}  // namespace

double gamma_alpha_beta_k(int alpha, int beta, int k, int n, const QuadratureSpec& spec) {
  if (alpha < 0 || beta < 0 || k < 0 || n < 0) throw ValidationError("gamma_alpha_beta_k: negative index");
  if (n < alpha) return 0.0;
  const int j = n - alpha;
  // ∫ s^j e^{-s} (1+s)^{-k} ds = j! E[(1+s)^{-k}] under the Gamma(j+1) law.
  const double coarse = gamma_sum(j, k, spec.radial_nodes);
  const double fine = gamma_sum(j, k, 2 * spec.radial_nodes);
  if (std::abs(fine - coarse) > 10.0 * spec.tolerance * std::max(1.0, std::abs(fine)))
    throw NonConvergent("gamma_alpha_beta_k: node doubling changed the moment");
  const double log_mag = 0.5 * (log_factorial(n) + log_factorial(n - alpha + beta)) - log_factorial(j);
  const double sign = ((alpha + beta) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag) * fine;
}

ApproximationResult approximation_experiment(int n, std::size_t degree, Exec exec) {
  AssemblyOptions opt;
  opt.exec = exec;
  const Symbol a = parse_symbol("radial((1+n)*exp(-n*r^2))", {{"n", static_cast<double>(n)}});
  const OperatorMatrix t = assemble(a, degree, opt);
  const OperatorMatrix p0 = assemble(Symbol{RankOne{0, 0}}, degree, opt);
  const OperatorMatrix diff = add(t, scale(p0, -1.0));
  ApproximationResult r;
  r.norm_distance = op_norm(diff);
  double best = -1.0;
  for (std::size_t k = 0; k <= degree; ++k) {
    const double v = std::abs(diff(k, k));
    if (v > best) {
      best = v;
      r.argmax = k;
    }
  }
  return r;
}

}  // namespace fock
