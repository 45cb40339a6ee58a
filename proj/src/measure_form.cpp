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

#include "fock/measure_form.hpp"

#include <variant>

namespace fock {

int lattice_cutoff(std::size_t max_degree) {
  const double d = static_cast<double>(max_degree);
  for (int L = 2;; ++L) {
    const double s = static_cast<double>(L) * L;
    if (s < d + 4.0) continue;
    // Peak of s^k e^{-s}/k! over k <= d sits at k = d once s >= d.
    const double log_term = d * std::log(s) - s - log_factorial(d);
    if (log_term + std::log(16.0 * L) < std::log(1e-22)) return L;
  }
}

double declared_fc_order(const MeasureSymbol& mu) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* d = std::get_if<Density>(&mu.body)) {
    if (d->radius > 0.0) return inf;
    return 0.5 * d->field.growth().decay();
  }
  if (std::holds_alternative<Atoms>(mu.body)) return inf;
  return 0.5 * std::get<Lattice>(mu.body).decay;
}

MeasureNodes measure_nodes(const MeasureSymbol& mu, WeightMode mode, const QuadratureSpec& spec,
                           std::size_t max_degree) {
  const double scale = mode == WeightMode::omega ? 1.0 / kPi : 1.0;
  MeasureNodes out;
  if (const auto* d = std::get_if<Density>(&mu.body)) {
    // ∫ F e^{-|z|^2} h dV = pi ∫ F h dν.
    QuadratureSpec s = spec;
    if (d->radius > 0.0) s.radial_cutoff = d->radius;
    out.gaussian_in_weights = true;
    for (const PlaneNode& p : plane_nodes(s)) {
      out.z.push_back(p.z);
      out.c.push_back(p.w * kPi * scale * d->field(p.z));
    }
    return out;
  }
  if (const auto* a = std::get_if<Atoms>(&mu.body)) {
    for (const Atom& at : a->atoms) {
      out.z.push_back(at.point);
      out.c.push_back(at.weight * scale);
    }
    return out;
  }
  const auto& lat = std::get<Lattice>(mu.body);
  if (lat.weight.growth().decay() < lat.decay)
    throw TailNotSummable("lattice weight " + lat.weight.to_string() + " decays slower than the declared " +
                          std::to_string(lat.decay));
  const int L = lattice_cutoff(max_degree);
  for (int n1 = -L; n1 <= L; ++n1)
    for (int n2 = -L; n2 <= L; ++n2) {
      const Complex w = lat.weight.at_node(n1, n2);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw ValidationError("lattice weight is not finite at (" + std::to_string(n1) + "," +
                              std::to_string(n2) + ")");
      if (w == Complex{}) continue;
      out.z.emplace_back(n1, n2);
      out.c.push_back(w * scale);
    }
  return out;
}

namespace {

Complex form_sum(const MeasureNodes& nodes, int alpha, int beta, const FockVector& f, const FockVector& g) {
  Complex acc{};
  for (std::size_t i = 0; i < nodes.z.size(); ++i) {
    const Complex z = nodes.z[i];
    Complex v = eval_derivative(f, static_cast<std::size_t>(alpha), z) *
                std::conj(eval_derivative(g, static_cast<std::size_t>(beta), z));
    if (!nodes.gaussian_in_weights) v *= std::exp(-std::norm(z));
    acc += nodes.c[i] * v;
  }
  return acc;
}

}  // namespace

Complex measure_form_integral(const MeasureSymbol& mu, int alpha, int beta, const FockVector& f,
                              const FockVector& g, WeightMode mode, const QuadratureSpec& spec) {
  if (alpha < 0 || beta < 0) throw ValidationError("derivative orders must be nonnegative");
  const std::size_t degree = f.degree() + g.degree();
  const MeasureNodes nodes = measure_nodes(mu, mode, spec, degree);
  const Complex value = form_sum(nodes, alpha, beta, f, g);
  if (!nodes.gaussian_in_weights) return value;
  const Complex fine = form_sum(measure_nodes(mu, mode, spec.doubled(), degree), alpha, beta, f, g);
  const double change = std::abs(fine - value);
  if (!std::isfinite(fine.real()) || change > 10.0 * spec.tolerance * std::max(1.0, std::abs(fine)))
    throw NonConvergent("measure_form_integral: node doubling changed the value by " + std::to_string(change));
  return fine;
}

}  // namespace fock
