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

#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "fock/algebra.hpp"
#include "oracles/dense_svd.hpp"
#include "support.hpp"

using namespace fock;

namespace {

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

OperatorMatrix random_matrix(std::mt19937_64& rng, std::size_t degree) {
  std::normal_distribution<double> g;
  OperatorMatrix m(degree);
  for (std::size_t r = 0; r <= degree; ++r)
    for (std::size_t c = 0; c <= degree; ++c) m(r, c) = {g(rng), g(rng)};
  return m;
}

OperatorMatrix psi(int p, int q, std::size_t degree) { return assemble(Symbol{RankOne{p, q}}, degree); }

const char* const kCorpus[] = {
    "func(exp(-abs2(z)/2))",
    "func(exp(-abs2(z-1)/3)*(1+0.5i*z))",
    "radial((1+r^2)^(-1))",
    "density((1+abs2(z))^(-2))",
    "atoms(0.5:1, -1+1i:0.5-0.5i)",
    "codiff(1,1,density((1+abs2(z))^(-1)), weight=omega)",
    "codiff(2,0,atoms(1:1))",
    "pointdist(0.3; (1,2,1), (0,0,2))",
    "psi(2,5)",
    "lattice((1+n)^(-3); decay=3)",
};

}  // namespace

TEST_CASE("operator norm agrees with the dense SVD") {
  std::mt19937_64 rng(3);
  for (std::size_t degree : {0u, 1u, 5u, 16u, 31u}) {
    const auto m = random_matrix(rng, degree);
    CHECK(std::abs(op_norm(m) - oracle::dense_norm(m)) <= 1e-8 * oracle::dense_norm(m));
  }
  for (const char* text : kCorpus) {
    CAPTURE(text);
    const auto m = assemble(parse_symbol(text), 24);
    const double ref = oracle::dense_norm(m);
    CHECK(std::abs(op_norm(m) - ref) <= 1e-8 * std::max(1.0, ref));
  }
  CHECK(op_norm(OperatorMatrix(7)) == 0.0);
  CHECK(op_norm(psi(3, 1, 8)) == doctest::Approx(1.0).epsilon(1e-12));
  OperatorMatrix d(9);
  for (std::size_t k = 0; k <= 9; ++k) d(k, k) = Complex(0.0, 1.0 - 0.01 * static_cast<double>(k));
  CHECK(op_norm(d) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator norm handles clustered spectra") {
  // Diagonal 1 - 1/(k+2): the top gap is about 4e-4.
  OperatorMatrix d(48);
  for (std::size_t k = 0; k <= 48; ++k) d(k, k) = 1.0 - 1.0 / static_cast<double>(k + 2);
  CHECK(op_norm(d) == doctest::Approx(1.0 - 1.0 / 50.0).epsilon(1e-12));
  NormOptions plain;
  plain.squarings = 0;
  plain.max_iterations = 50;
  CHECK_THROWS_AS(op_norm(d, plain), NoConvergence);
}

TEST_CASE("operator norm is submultiplicative") {
  std::vector<OperatorMatrix> ms;
  std::vector<double> norms;
  for (const char* text : kCorpus) {
    ms.push_back(assemble(parse_symbol(text), 16));
    norms.push_back(op_norm(ms.back()));
  }
  for (std::size_t a = 0; a < ms.size(); ++a)
    for (std::size_t b = 0; b < ms.size(); ++b) {
      CAPTURE(kCorpus[a]);
      CAPTURE(kCorpus[b]);
      CHECK(op_norm(compose(ms[a], ms[b])) <= norms[a] * norms[b] * (1.0 + 1e-8));
    }
}

TEST_CASE("sums and scalings") {
  std::mt19937_64 rng(5);
  const auto m = random_matrix(rng, 6);
  CHECK(max_abs_diff(add(m, OperatorMatrix(6)), m) == 0.0);
  CHECK(add(m, OperatorMatrix(9)).degree() == 9);
  CHECK(max_abs_diff(scale(m, 2.0), add(m, m)) == 0.0);
  const auto proj = add(psi(0, 0, 5), psi(1, 1, 5));
  CHECK(max_abs_diff(proj, truncate(OperatorMatrix::identity(5), 1)) == 0.0);

  const auto a = assemble(parse_symbol("density((1+abs2(z))^(-2))"), 12);
  const auto b = assemble(parse_symbol("atoms(0.5:1, 1i:2)"), 12);
  const auto s = assemble(parse_symbol("sum(1:density((1+abs2(z))^(-2)), 1:atoms(0.5:1, 1i:2))"), 12);
  CHECK(max_abs_diff(add(a, b), s) < 1e-10);
}

TEST_CASE("rank-one compositions") {
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= 5; ++q)
      for (int r = 0; r <= 5; ++r) {
        CHECK(max_abs_diff(compose(psi(q, r, 24), psi(p, q, 24)), psi(p, r, 24)) == 0.0);
        const auto prod = symbol_product(parse_symbol("psi(" + std::to_string(q) + "," + std::to_string(r) + ")"),
                                         parse_symbol("psi(" + std::to_string(p) + "," + std::to_string(q) + ")"));
        REQUIRE(prod.has_value());
        CHECK(max_abs_diff(assemble(*prod, 24), psi(p, r, 24)) < 1e-10);
      }
  std::mt19937_64 rng(9);
  const auto m = random_matrix(rng, 10);
  CHECK(max_abs_diff(compose(m, OperatorMatrix::identity(10)), m) == 0.0);

  const auto d1 = assemble(parse_symbol("radial(2*exp(-r^2))"), 12);
  const auto d2 = assemble(parse_symbol("radial(r^2)"), 12);
  const auto prod = compose(d1, d2);
  for (std::size_t k = 0; k <= 12; ++k) {
    CHECK(std::abs(prod(k, k) - d1(k, k) * d2(k, k)) < 1e-12);
    for (std::size_t j = 0; j <= 12; ++j)
      if (j != k) CHECK(std::abs(prod(j, k)) < 1e-12);
  }
}

TEST_CASE("adjoints") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_matrix(rng, 24);
    const auto b = random_matrix(rng, 24);
    CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
    CHECK(max_abs_diff(compose(adjoint(b), adjoint(a)), adjoint(compose(a, b))) <= 1e-10);
  }
  for (const char* text : kCorpus) {
    CAPTURE(text);
    const Symbol s = parse_symbol(text);
    const auto m = assemble(s, 24);
    const auto ma = assemble(adjoint_symbol(s), 24);
    CHECK(max_abs_diff(adjoint(m), ma) <= 1e-10 * std::max(1.0, m.matrix().cwiseAbs().maxCoeff()));
    if (is_hermitian(s)) CHECK(max_abs_diff(adjoint(m), m) <= 1e-10);
  }
}

TEST_CASE("reflection") {
  const auto j = reflection_matrix(48);
  CHECK(max_abs_diff(compose(j, j), OperatorMatrix::identity(48)) == 0.0);
  CHECK(max_abs_diff(reflection_form_matrix(24), reflection_matrix(24)) < 1e-10);
  // Distance from J to Toeplitz operators with bounded symbols.
  for (const char* text : {"func(1)", "func(exp(-abs2(z)/2))", "func(-exp(-abs2(z-1)))", "func(0)",
                           "func(exp(-abs2(z))*z/(1+abs2(z)))"}) {
    CAPTURE(text);
    const auto t = assemble(parse_symbol(text), 48);
    CHECK(op_norm(add(j, scale(t, -1.0))) >= 1.0 - 0.05);
  }
}

TEST_CASE("composition operators") {
  CHECK(max_abs_diff(composition_matrix(1.0, 0.0, 12), OperatorMatrix::identity(12)) == 0.0);
  const auto half = composition_matrix(0.5, 0.0, 12);
  for (std::size_t k = 0; k <= 12; ++k)
    CHECK(testing::rel_err(half(k, k), std::pow(0.5, static_cast<double>(k))) < 1e-14);
  const double theta = 0.7;
  const auto rot = composition_matrix(std::polar(1.0, theta), 0.0, 12);
  for (std::size_t k = 0; k <= 12; ++k)
    CHECK(std::abs(rot(k, k) - std::polar(1.0, theta * static_cast<double>(k))) < 1e-14);
  CHECK_THROWS_AS(composition_matrix(1.0, 0.5, 4), UnboundedComposition);
  CHECK_THROWS_AS(composition_matrix(1.5, 0.0, 4), UnboundedComposition);
  CHECK_NOTHROW(composition_matrix(0.5, 3.0, 4));

  // f(a z + b) evaluated directly.
  std::mt19937_64 rng(21);
  const Complex a(0.3, 0.4);
  const Complex b(-1.0, 0.5);
  const auto c = composition_matrix(a, b, 20);
  const FockVector f = testing::random_vector(rng, 20);
  const Complex z(0.4, -0.9);
  CHECK(std::abs(eval(apply(c, f), z) - eval(f, a * z + b)) < 1e-12);
}

TEST_CASE("truncation") {
  std::mt19937_64 rng(4);
  const auto m = random_matrix(rng, 12);
  CHECK(max_abs_diff(truncate(m, 12), m) == 0.0);
  const auto p = truncate(OperatorMatrix::identity(12), 4);
  for (std::size_t k = 0; k <= 12; ++k) CHECK(p(k, k) == Complex(k <= 4 ? 1.0 : 0.0));
  CHECK_THROWS_AS(truncate(m, 13), ValidationError);

  // <truncate(M, j) f, g> approaches <M f, g>, dominated by the
  // nonincreasing tail bound |M| (|f - P_j f| |g| + |f| |g - P_j g|).
  for (const char* text : {"density((1+abs2(z))^(-2))", "func(exp(-abs2(z-1)/2))", "pointdist(0.5; (1,1,1))"}) {
    CAPTURE(text);
    const auto t = assemble(parse_symbol(text), 32);
    const double norm = op_norm(t);
    const FockVector f = testing::random_vector(rng, 32);
    const FockVector g = testing::random_vector(rng, 32);
    const Complex full = inner(apply(t, f), g);
    double prev_bound = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= 32; ++j) {
      double sf = 0.0;
      double sg = 0.0;
      for (std::size_t k = j + 1; k <= 32; ++k) {
        sf += std::norm(f[k]);
        sg += std::norm(g[k]);
      }
      const double bound = norm * (std::sqrt(sf) + std::sqrt(sg));
      const double err = std::abs(inner(apply(truncate(t, j), f), g) - full);
      CHECK(err <= bound * (1.0 + 1e-12) + 1e-14);
      CHECK(bound <= prev_bound);
      prev_bound = bound;
      if (j == 32) CHECK(err < 1e-14);
    }
  }
}

TEST_CASE("decomposition round-trip") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::size_t> deg(0, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, deg(rng));
    const auto d = decompose_to_symbol(m);
    CHECK(max_abs_diff(assemble(d.symbol(), m.degree()), m) <= 1e-12);
  }
  OperatorMatrix unit(4);
  unit(0, 1) = 1.0;
  const auto d = decompose_to_symbol(unit);
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms[0].p == 1);
  CHECK(d.terms[0].q == 0);
}

TEST_CASE("point form of the decomposition") {
  // P_0 is pi * Phi_0 after the omega normalization.
  const auto p0 = decompose_to_symbol(psi(0, 0, 6));
  REQUIRE(p0.point_form.terms.size() == 1);
  CHECK(p0.point_form.terms[0].coeff == Complex(kPi));

  std::mt19937_64 rng(31);
  for (std::size_t degree : {0u, 3u, 7u}) {
    const auto m = random_matrix(rng, degree);
    const auto d = decompose_to_symbol(m);
    const auto back = assemble(Symbol{d.point_form}, degree);
    CHECK(max_abs_diff(back, m) <= 1e-9 * std::max(1.0, m.matrix().cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("rank-one approximations") {
  const auto d = rank_one_approximation_experiment(2, 12, 12);
  REQUIRE(d.size() == 13);
  CHECK(d[12] == 0.0);
  CHECK(std::abs(d[1] - rank_one_tail(1, 12)) < 1e-12);
  double direct = 0.0;
  for (int k = 2; k <= 12; ++k) direct += std::pow(std::tgamma(k + 1.0), -2.0 * k);
  CHECK(std::abs(rank_one_tail(1, 12) - std::sqrt(direct)) < 1e-15);
  CHECK(std::abs(rank_one_tail(1, 12) - 0.25) < 1e-4);
  for (std::size_t m = 0; m <= 12; ++m) CHECK(std::abs(d[m] - rank_one_tail(m, 12)) <= 1e-12);
  for (std::size_t m = 0; m + 1 <= 12; ++m)
    if (d[m] > 0.0) CHECK(d[m + 1] < d[m]);
}
