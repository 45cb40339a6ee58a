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

#include "doctest.h"
#include "fock/symbol.hpp"

using namespace fock;

namespace {

const char* const kCorpus[] = {
    "func(exp(-abs2(z)/3))",
    "func(1)",
    "radial(2*exp(-r^2))",
    "radial(r^2)",
    "density((1+abs2(z))^(-2))",
    "density(1/pi; radius=3)",
    "atoms(0:1, 2+1i:0.5-0.25i)",
    "lattice((1+n)^(-3); decay=3)",
    "codiff(1, 1, density((1+abs2(z))^(-1)), weight=omega)",
    "codiff(2, 0, atoms(1:2), weight=plain)",
    "pointdist(0; (1,2,1), (0,0,3.5))",
    "pointdist(1-1i; (2,1,2i))",
    "psi(2,3)",
    "series(codiff(0,0,atoms(0:1)), codiff(1,0,atoms(0:0.25)), codiff(0,1,atoms(0:0.25)))",
    "sum(2:psi(0,0), -1i:psi(1,0))",
};

}  // namespace

TEST_CASE("corpus symbols round-trip through the printer") {
  for (const char* text : kCorpus) {
    CAPTURE(text);
    const Symbol s = parse_symbol(text);
    const std::string printed = to_string(s);
    const Symbol again = parse_symbol(printed);
    CHECK(again == s);
    CHECK(to_string(again) == printed);
  }
}

TEST_CASE("parameters are substituted as constants") {
  const Symbol s = parse_symbol("radial((1+n)*exp(-n*r^2))", {{"n", 4.0}});
  const auto& field = std::get<RadialSymbol>(s.v).field;
  CHECK(field(Complex(0.5, 0.0)).real() == doctest::Approx(5.0 * std::exp(-4.0 * 0.25)));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_symbol("density(foo(z))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
  }
  CHECK_THROWS_AS(parse_symbol("widget(1)"), ParseError);
  CHECK_THROWS_AS(parse_symbol("psi(1,2"), ParseError);
  CHECK_THROWS_AS(parse_symbol("codiff(1,0,psi(0,0))"), ParseError);
  CHECK_THROWS_AS(parse_symbol("lattice(abs2(z); decay=2)"), ParseError);
  CHECK_THROWS_AS(parse_symbol("radial(z)"), ValidationError);
  CHECK_THROWS_AS(parse_symbol("func(exp(abs2(z)))"), ValidationError);
  CHECK_THROWS_AS(parse_symbol("series(psi(0,0))"), ParseError);
}

TEST_CASE("adjoint symbols swap orders and conjugate data") {
  const Symbol c = parse_symbol("codiff(2, 1, atoms(1i:2-1i), weight=omega)");
  const auto adj = std::get<CoderivedSymbol>(adjoint_symbol(c).v);
  CHECK(adj.alpha == 1);
  CHECK(adj.beta == 2);
  const auto& atom = std::get<Atoms>(adj.base.body).atoms.at(0);
  CHECK(atom.point == Complex(0.0, 1.0));
  CHECK(atom.weight == Complex(2.0, 1.0));

  const auto r = std::get<RankOne>(adjoint_symbol(parse_symbol("psi(2,5)")).v);
  CHECK(r.p == 5);
  CHECK(r.q == 2);

  CHECK(adjoint_symbol(adjoint_symbol(c)) == c);
  CHECK(is_hermitian(parse_symbol("codiff(1,1,density(exp(-abs2(z))))")));
  CHECK_FALSE(is_hermitian(parse_symbol("codiff(1,0,density(exp(-abs2(z))))")));
  CHECK(is_hermitian(parse_symbol("sum(1:psi(0,1), 1:psi(1,0))")));
}

TEST_CASE("canonical form ignores term order") {
  const Symbol a = parse_symbol("atoms(0:1, 1:2)");
  const Symbol b = parse_symbol("atoms(1:2, 0:1)");
  CHECK_FALSE(a == b);
  CHECK(canonical(a) == canonical(b));
}

TEST_CASE("series terms are grouped by their maximal order") {
  const Symbol s = parse_symbol(
      "series(codiff(2,0,atoms(0:1)), codiff(0,0,atoms(0:1)), codiff(1,1,atoms(0:1)), codiff(0,1,atoms(0:1)))");
  const auto groups = series_term_groups(std::get<SeriesSymbol>(s.v));
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].j == 0);
  CHECK(groups[1].j == 1);
  CHECK(groups[1].terms.size() == 2);
  CHECK(groups[2].j == 2);
}

TEST_CASE("finite-rank symbols expand into rank-one terms") {
  const auto terms = psi_terms(parse_symbol("pointdist(0; (1,1,1))"));
  REQUIRE(terms.has_value());
  REQUIRE(terms->size() == 2);
  // T e_0 = -e_0 / pi, T e_1 = e_1 / pi.
  CHECK((*terms)[0].coeff.real() == doctest::Approx(-1.0 / kPi));
  CHECK((*terms)[1].coeff.real() == doctest::Approx(1.0 / kPi));
  CHECK_FALSE(psi_terms(parse_symbol("pointdist(1; (0,0,1))")).has_value());

  // P_{1,2} P_{0,1} = P_{0,2}.
  const auto prod = symbol_product(parse_symbol("psi(1,2)"), parse_symbol("psi(0,1)"));
  REQUIRE(prod.has_value());
  const auto pt = psi_terms(*prod);
  REQUIRE(pt->size() == 1);
  CHECK((*pt)[0].p == 0);
  CHECK((*pt)[0].q == 2);
  CHECK(psi_terms(*symbol_product(parse_symbol("psi(1,2)"), parse_symbol("psi(0,3)")))->empty());
}
