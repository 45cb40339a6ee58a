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


#include <cmath>

#include "doctest.h"
#include "fock/core.hpp"
#include "fock/quadrature.hpp"

using namespace fock;

TEST_CASE("Gauss rules integrate their moments") {
  const GaussRule& lag = laguerre_rule(40);
  double sum = 0.0;
  double m5 = 0.0;
  for (std::size_t i = 0; i < lag.nodes.size(); ++i) {
    sum += lag.weights[i];
    m5 += lag.weights[i] * std::pow(lag.nodes[i], 5);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m5 == doctest::Approx(120.0).epsilon(1e-13));

  // Generalized rule: ∫ s^3 s^a e^{-s} / Γ(a+1) = (a+1)(a+2)(a+3).
  const GaussRule& gen = laguerre_rule(30, 7.0);
  double m3 = 0.0;
  for (std::size_t i = 0; i < gen.nodes.size(); ++i) m3 += gen.weights[i] * std::pow(gen.nodes[i], 3);
  CHECK(m3 == doctest::Approx(8.0 * 9.0 * 10.0).epsilon(1e-13));

  const GaussRule& leg = legendre_rule(12);
  double x10 = 0.0;
  for (std::size_t i = 0; i < leg.nodes.size(); ++i) x10 += leg.weights[i] * std::pow(leg.nodes[i], 10);
  CHECK(x10 == doctest::Approx(2.0 / 11.0).epsilon(1e-14));

  const GaussRule& her = hermite_rule(20);
  double x4 = 0.0;
  for (std::size_t i = 0; i < her.nodes.size(); ++i) x4 += her.weights[i] * std::pow(her.nodes[i], 4);
  CHECK(x4 == doctest::Approx(0.75 * std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("Laguerre weights keep relative accuracy in the tail") {
  // Christoffel weights vs the closed form w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2).
  const int n = 60;
  const GaussRule& lag = laguerre_rule(n);
  for (std::size_t i = 0; i < lag.nodes.size(); i += 7) {
    const double x = lag.nodes[i];
    double l0 = 1.0;
    double l1 = 1.0 - x;
    for (int k = 1; k <= n; ++k) {
      const double l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
      l0 = l1;
      l1 = l2;
    }
    const double w = x / ((n + 1.0) * (n + 1.0) * l1 * l1);
    CHECK(lag.weights[i] == doctest::Approx(w).epsilon(1e-9));
  }
  CHECK(lag.weights.back() > 0.0);
  CHECK(lag.weights.back() < 1e-60);
}

TEST_CASE("plane integrals") {
  const QuadratureSpec spec;
  CHECK(std::abs(gaussian_plane_integral([](Complex) { return Complex(1.0, 0.0); }, spec).value - 1.0) <
        1e-13);
  CHECK(std::abs(gaussian_plane_integral([](Complex z) { return Complex(std::norm(z), 0.0); }, spec).value -
                 1.0) < 1e-12);
  const auto r = gaussian_plane_integral(
      [](Complex z) { return eval_basis(7, z) * std::conj(eval_basis(7, z)); }, spec);
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  CHECK(r.error < 1e-10);

  // Orthonormality matrix on the default rule.
  const std::size_t top = 24;
  std::vector<Complex> gram((top + 1) * (top + 1));
  for (const PlaneNode& node : plane_nodes(spec)) {
    std::vector<Complex> e(top + 1);
    for (std::size_t k = 0; k <= top; ++k) e[k] = eval_basis(k, node.z);
    for (std::size_t m = 0; m <= top; ++m)
      for (std::size_t n = 0; n <= top; ++n) gram[m * (top + 1) + n] += node.w * e[n] * std::conj(e[m]);
  }
  double worst = 0.0;
  for (std::size_t m = 0; m <= top; ++m)
    for (std::size_t n = 0; n <= top; ++n)
      worst = std::max(worst, std::abs(gram[m * (top + 1) + n] - (m == n ? 1.0 : 0.0)));
  CHECK(worst < 1e-10);
  // Exactness on z^p conj(z)^q e^{-|z|^2}.
  QuadratureSpec small;
  small.radial_nodes = 10;
  small.angular_nodes = 20;
  for (int p = 0; p <= 9; ++p)
    for (int q = 0; q <= 9; ++q) {
      Complex acc{};
      for (const PlaneNode& node : plane_nodes(small))
        acc += node.w * std::pow(node.z, p) * std::pow(std::conj(node.z), q);
      const double expect = p == q ? std::tgamma(p + 1.0) : 0.0;
      CHECK(std::abs(acc - expect) < 1e-12 * std::tgamma(0.5 * (p + q) + 1.0));
    }
}

TEST_CASE("nonconvergence is reported") {
  QuadratureSpec spec;
  spec.radial_nodes = 8;
  spec.angular_nodes = 16;
  CHECK_THROWS_AS(gaussian_plane_integral([](Complex z) { return std::exp(0.95 * std::norm(z)); }, spec),
                  NonConvergent);
  CHECK_THROWS_AS(ScalarField::from_expression(expr::parse_expression("exp(abs2(z))")), ValidationError);
}

TEST_CASE("radial moments") {
  for (int k = 0; k <= 12; ++k) {
    CHECK(std::abs(radial_moment([](double) { return Complex(1.0, 0.0); }, k).value - 1.0) < 1e-12);
    CHECK(std::abs(radial_moment([](double r) { return Complex(r * r, 0.0); }, k).value - (k + 1.0)) <
          1e-11 * (k + 1.0));
  }
  const auto a1 = ScalarField::from_expression(
      expr::parse_expression("(1+n)*exp(-n*r^2)", {{"n", 1.0}}));
  CHECK(a1.radial());
  CHECK(radial_moment(a1, 3).value.real() == doctest::Approx(0.125).epsilon(1e-12));
  QuadratureSpec disk;
  disk.radial_cutoff = 3.0;
  const double partial = radial_moment([](double) { return Complex(1.0, 0.0); }, 0, disk).value.real();
  CHECK(partial == doctest::Approx(1.0 - std::exp(-9.0)).epsilon(1e-12));
}

TEST_CASE("disk integrals") {
  CHECK(disk_integral([](Complex) { return 1.0; }, {3.0, 1.0}, 2.0) == doctest::Approx(4.0 * kPi));
  CHECK(disk_integral([](Complex z) { return std::norm(z); }, {}, 1.0) == doctest::Approx(kPi / 2.0));
}
