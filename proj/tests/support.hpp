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


// Shared helpers for the unit and acceptance suites.

#pragma once

#include <random>
#include <vector>

#include "fock/core.hpp"

namespace fock::testing {

inline FockVector random_vector(std::mt19937_64& rng, std::size_t degree, bool unit = true) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(degree + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  FockVector f(std::move(c));
  if (unit) f *= Complex(1.0 / f.norm(), 0.0);
  return f;
}

inline Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * 3.141592653589793 * u(rng));
}

inline double rel_err(Complex a, Complex b) {
  return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b)));
}

}  // namespace fock::testing
