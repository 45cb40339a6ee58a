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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fock/common.hpp"
#include "fock/expr.hpp"
#include "fock/quadrature.hpp"

namespace fock {

/// Gaussian factor in measure-backed forms: plain e^{-|z|^2} or
/// omega = e^{-|z|^2} / pi.
enum class WeightMode { plain, omega };

/// h(z) dV(z), optionally restricted to the disk |z| <= radius.
struct Density {
  ScalarField field;
  double radius = 0.0;  // 0: whole plane
};

struct Atom {
  Complex point;
  Complex weight;
};

struct Atoms {
  std::vector<Atom> atoms;
};

/// Weights w(n1, n2) at the integer lattice points with a declared decay
/// exponent d: |w| <= C (1 + |n1| + |n2|)^-d.
struct Lattice {
  expr::Expression weight;
  double decay = 0.0;
};

struct MeasureSymbol {
  std::variant<Density, Atoms, Lattice> body;
};

struct FunctionSymbol {
  ScalarField field;
};

struct RadialSymbol {
  ScalarField field;
};

/// Coderivative of order (alpha, beta) of a measure.
struct CoderivedSymbol {
  int alpha = 0;
  int beta = 0;
  MeasureSymbol base;
  WeightMode mode = WeightMode::omega;
};

struct PointTerm {
  int p = 0;
  int q = 0;
  Complex coeff{1.0, 0.0};
};

/// sum c d^p dbar^q delta_{center}.
struct PointDistribution {
  Complex center{};
  std::vector<PointTerm> terms;
};

/// Psi_{p,q}, the symbol of the rank-one operator f -> <f, e_p> e_q.
struct RankOne {
  int p = 0;
  int q = 0;
};

/// Formal series of coderived measures kept in ascending j = max(alpha, beta).
struct SeriesSymbol {
  std::vector<CoderivedSymbol> terms;
};

struct Symbol;

/// Finite linear combination of symbols (symbol union).
struct SumSymbol {
  std::vector<std::pair<Complex, Symbol>> terms;
};

struct Symbol {
  std::variant<FunctionSymbol, RadialSymbol, MeasureSymbol, CoderivedSymbol, PointDistribution,
               RankOne, SeriesSymbol, SumSymbol>
      v;
};

bool operator==(const MeasureSymbol& a, const MeasureSymbol& b);
bool operator==(const CoderivedSymbol& a, const CoderivedSymbol& b);
bool operator==(const Symbol& a, const Symbol& b);

/// Parse one symbol. Bound parameters are substituted as real constants.
Symbol parse_symbol(std::string_view text, const expr::Params& params = {});

/// Canonical text; parse_symbol(to_string(s)) is structurally equal to s.
std::string to_string(const Symbol& s);
std::string to_string(const MeasureSymbol& m);
std::string format_complex(Complex c);

Symbol adjoint_symbol(const Symbol& s);

/// Sorts unordered term lists so that structural comparison ignores their order.
Symbol canonical(const Symbol& s);

bool is_hermitian(const Symbol& s);

struct SeriesGroup {
  int j = 0;
  std::vector<CoderivedSymbol> terms;
};

std::vector<SeriesGroup> series_term_groups(const SeriesSymbol& s);

/// Builds a series symbol, stably sorting the terms by j.
SeriesSymbol make_series(std::vector<CoderivedSymbol> terms);

/// Conjugated measure (complex-conjugate weights / density).
MeasureSymbol conjugate(const MeasureSymbol& m);

/// Rank-one expansion sum c Psi_{p,q} for finite-rank symbols (RankOne,
/// point distributions at the origin, and sums of those); empty otherwise.
std::optional<std::vector<PointTerm>> psi_terms(const Symbol& s);

/// Sum of c Psi_{p,q} as a symbol.
Symbol psi_sum(const std::vector<PointTerm>& terms);

/// Symbol of T_{s1} T_{s2} for finite-rank symbols; nullopt when either
/// factor has no finite rank-one expansion.
std::optional<Symbol> symbol_product(const Symbol& s1, const Symbol& s2);

/// Input document: source text plus its parse.
struct SymbolDocument {
  std::string name;
  std::string source;
  expr::Params params;
  Symbol symbol;
};

SymbolDocument parse_document(std::string name, std::string source, expr::Params params = {});

}  // namespace fock
