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

// Brute-force k-FC sup on a dense grid. Disk masses are computed from scratch:
// atoms and lattice nodes by enumeration, densities by a polar midpoint rule.

#pragma once

#include <cmath>
#include <variant>

#include "fock/symbol.hpp"

namespace fock::oracle {

inline double brute_disk_mass(const MeasureSymbol& mu, Complex c, double r) {
  constexpr double kSlack = 1e-12;
  if (const auto* a = std::get_if<Atoms>(&mu.body)) {
    double m = 0.0;
    for (const Atom& at : a->atoms)
      if (std::abs(at.point - c) <= r * (1.0 + kSlack)) m += std::abs(at.weight);
    return m;
  }
  if (const auto* lat = std::get_if<Lattice>(&mu.body)) {
    double m = 0.0;
    const int reach = static_cast<int>(std::abs(c) + r) + 2;
    for (int i = -reach; i <= reach; ++i)
      for (int j = -reach; j <= reach; ++j)
        if (std::abs(Complex(i, j) - c) <= r * (1.0 + kSlack)) m += std::abs(lat->weight.at_node(i, j));
    return m;
  }
  const auto& d = std::get<Density>(mu.body);
  constexpr int kRadial = 32;
  constexpr int kAngular = 64;
  double m = 0.0;
  for (int i = 0; i < kRadial; ++i) {
    const double rho = r * (i + 0.5) / kRadial;
    for (int j = 0; j < kAngular; ++j) {
      const Complex w = c + std::polar(rho, 2.0 * kPi * (j + 0.5) / kAngular);
      if (d.radius > 0.0 && std::abs(w) > d.radius) continue;
      m += std::abs(d.field(w)) * rho;
    }
  }
  return m * (r / kRadial) * (2.0 * kPi / kAngular);
}

/// (k!)^2 max over grid points g = (i, j) r/16 with |g| <= reach, and over
/// the atom locations, of |mu|(B(g, r)) (1 + |g|^2)^k.
inline double dense_grid_sup(const MeasureSymbol& mu, int k2, double r, double reach) {
  const double h = r / 16.0;
  const double k = 0.5 * k2;
  const int M = static_cast<int>(std::ceil(reach / h));
  double best = 0.0;
  if (const auto* a = std::get_if<Atoms>(&mu.body))
    for (const Atom& at : a->atoms)
      best = std::max(best, brute_disk_mass(mu, at.point, r) * std::pow(1.0 + std::norm(at.point), k));
  for (int i = -M; i <= M; ++i)
    for (int j = -M; j <= M; ++j) {
      const Complex g(i * h, j * h);
      if (std::abs(g) > reach) continue;
      const double m = brute_disk_mass(mu, g, r);
      if (m > 0.0) best = std::max(best, m * std::pow(1.0 + std::norm(g), k));
    }
  return best * std::pow(std::tgamma(k + 1.0), 2);
}

}  // namespace fock::oracle
