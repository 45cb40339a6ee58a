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

#include "fock/symbol.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

#include "cursor.hpp"
#include "fock/leibniz.hpp"

namespace fock {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool same_field(const ScalarField& a, const ScalarField& b) {
  if (a.expression() && b.expression()) return *a.expression() == *b.expression();
  return !a.expression() && !b.expression() && a.to_string() == b.to_string();
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ScalarField conj_field(const ScalarField& f) {
  if (!f.expression()) throw ValidationError("cannot conjugate a built-in field");
  return ScalarField::from_expression(f.expression()->conjugated());
}

int series_j(const CoderivedSymbol& c) { return std::max(c.alpha, c.beta); }

// ----------------------------------------------------------------- parser ---

class SymbolParser {
 public:
  SymbolParser(std::string_view text, const expr::Params& params) : cur_(text), params_(params) {}

  Symbol parse() {
    Symbol s = symbol();
    if (!cur_.at_end()) throw cur_.error("end of symbol", "trailing input " + cur_.describe_here());
    return s;
  }

 private:
  Symbol symbol() {
    const std::size_t at = cur_.position();
    if (!cur_.peek_identifier())
      throw cur_.error("symbol constructor", "unexpected " + cur_.describe_here());
    const std::string id = cur_.identifier();
    cur_.expect('(');
    Symbol s;
    if (id == "func") {
      s.v = FunctionSymbol{plane_field(false)};
    } else if (id == "radial") {
      s.v = RadialSymbol{plane_field(true)};
    } else if (id == "density" || id == "atoms" || id == "lattice") {
      s.v = measure_body(id);
      return s;
    } else if (id == "codiff") {
      s.v = codiff_body();
      return s;
    } else if (id == "pointdist") {
      s.v = pointdist_body();
      return s;
    } else if (id == "psi") {
      RankOne r;
      r.p = index();
      cur_.expect(',');
      r.q = index();
      s.v = r;
    } else if (id == "series") {
      std::vector<CoderivedSymbol> terms;
      do {
        const std::size_t t = cur_.position();
        const std::string inner = cur_.identifier();
        if (inner != "codiff") throw ParseError(t, "codiff(...)", "series terms must be coderived measures");
        cur_.expect('(');
        terms.push_back(codiff_body());
      } while (cur_.accept(','));
      s.v = make_series(std::move(terms));
    } else if (id == "sum") {
      SumSymbol sum;
      if (cur_.peek() != ')') {
        do {
          const Complex c = complex_constant();
          cur_.expect(':');
          sum.terms.emplace_back(c, symbol());
        } while (cur_.accept(','));
      }
      s.v = std::move(sum);
    } else {
      throw ParseError(at, "func, radial, density, atoms, lattice, codiff, pointdist, psi, series or sum",
                       "unknown symbol constructor '" + id + "'");
    }
    cur_.expect(')');
    return s;
  }

  ScalarField plane_field(bool radial) {
    const std::size_t at = cur_.position();
    expr::Expression e(detail::parse_expression_node(cur_, params_));
    if (e.uses_lattice_vars())
      throw ParseError(at, "expression in z", "lattice variables n, n1, n2 are not allowed here");
    if (radial && !e.depends_only_on_modulus())
      throw ValidationError("radial symbol must depend on |z| only: " + e.to_string());
    return ScalarField::from_expression(std::move(e));
  }

  // Parses the remainder of a measure constructor after its '('.
  MeasureSymbol measure_body(const std::string& id) {
    MeasureSymbol m;
    if (id == "density") {
      Density d{plane_field(false), 0.0};
      if (cur_.accept(';')) {
        keyword("radius");
        d.radius = real_constant();
        if (!(d.radius > 0.0)) throw ValidationError("density radius must be positive");
      }
      m.body = std::move(d);
    } else if (id == "atoms") {
      Atoms a;
      do {
        const Complex point = complex_constant();
        cur_.expect(':');
        a.atoms.push_back({point, complex_constant()});
      } while (cur_.accept(','));
      m.body = std::move(a);
    } else {
      const std::size_t at = cur_.position();
      expr::Expression w(detail::parse_expression_node(cur_, params_));
      if (w.uses(expr::Var::z) || w.uses(expr::Var::zbar) || w.uses(expr::Var::r))
        throw ParseError(at, "expression in n, n1, n2", "lattice weights depend on node coordinates only");
      cur_.expect(';');
      keyword("decay");
      const double decay = real_constant();
      if (!(decay > 0.0)) throw ValidationError("lattice decay exponent must be positive");
      w.growth();  // rejects undecidable weights
      m.body = Lattice{std::move(w), decay};
    }
    cur_.expect(')');
    return m;
  }

  MeasureSymbol measure() {
    const std::size_t at = cur_.position();
    const std::string id = cur_.peek_identifier() ? cur_.identifier() : std::string{};
    if (id != "density" && id != "atoms" && id != "lattice")
      throw ParseError(at, "density, atoms or lattice", "coderivative base must be a measure");
    cur_.expect('(');
    return measure_body(id);
  }

  CoderivedSymbol codiff_body() {
    CoderivedSymbol c;
    c.alpha = index();
    cur_.expect(',');
    c.beta = index();
    cur_.expect(',');
    c.base = measure();
    if (cur_.accept(',')) {
      keyword("weight");
      const std::size_t at = cur_.position();
      const std::string mode = cur_.identifier();
      if (mode == "plain") {
        c.mode = WeightMode::plain;
      } else if (mode == "omega") {
        c.mode = WeightMode::omega;
      } else {
        throw ParseError(at, "plain or omega", "unknown weight mode '" + mode + "'");
      }
    }
    cur_.expect(')');
    return c;
  }

  PointDistribution pointdist_body() {
    PointDistribution d;
    d.center = complex_constant();
    cur_.expect(';');
    do {
      cur_.expect('(');
      PointTerm t;
      t.p = index();
      cur_.expect(',');
      t.q = index();
      cur_.expect(',');
      t.coeff = complex_constant();
      cur_.expect(')');
      d.terms.push_back(t);
    } while (cur_.accept(','));
    cur_.expect(')');
    return d;
  }

  void keyword(const char* word) {
    const std::size_t at = cur_.position();
    if (!cur_.peek_identifier() || cur_.identifier() != word)
      throw ParseError(at, std::string(word) + "=", "missing keyword");
    cur_.expect('=');
  }

  int index() {
    const std::size_t at = cur_.position();
    const long long v = cur_.integer();
    if (v < 0 || v > 100000) throw ParseError(at, "nonnegative index", "index out of range");
    return static_cast<int>(v);
  }

  Complex complex_constant() {
    const std::size_t at = cur_.position();
    const expr::NodePtr n = detail::parse_expression_node(cur_, params_);
    if (n->op != expr::Op::constant) throw ParseError(at, "complex constant", "expression is not constant");
    if (!std::isfinite(n->value.real()) || !std::isfinite(n->value.imag()))
      throw ValidationError("coefficient is not finite");
    return n->value;
  }

  double real_constant() {
    const std::size_t at = cur_.position();
    const Complex c = complex_constant();
    if (c.imag() != 0.0) throw ParseError(at, "real constant", "value must be real");
    return c.real();
  }

  detail::Cursor cur_;
  const expr::Params& params_;
};

// --------------------------------------------------------------- printing ---

std::string print_codiff(const CoderivedSymbol& c) {
  return "codiff(" + std::to_string(c.alpha) + "," + std::to_string(c.beta) + "," + to_string(c.base) +
         ",weight=" + (c.mode == WeightMode::plain ? "plain" : "omega") + ")";
}

}  // namespace

std::string format_complex(Complex c) { return expr::Expression::constant(c).to_string(); }

std::string to_string(const MeasureSymbol& m) {
  return std::visit(overloaded{
                        [](const Density& d) {
                          std::string s = "density(" + d.field.to_string();
                          if (d.radius > 0.0) s += "; radius=" + format_real(d.radius);
                          return s + ")";
                        },
                        [](const Atoms& a) {
                          std::string s = "atoms(";
                          for (std::size_t i = 0; i < a.atoms.size(); ++i) {
                            if (i) s += ", ";
                            s += format_complex(a.atoms[i].point) + ":" + format_complex(a.atoms[i].weight);
                          }
                          return s + ")";
                        },
                        [](const Lattice& l) {
                          return "lattice(" + l.weight.to_string() + "; decay=" + format_real(l.decay) + ")";
                        },
                    },
                    m.body);
}

std::string to_string(const Symbol& s) {
  return std::visit(
      overloaded{
          [](const FunctionSymbol& f) { return "func(" + f.field.to_string() + ")"; },
          [](const RadialSymbol& f) { return "radial(" + f.field.to_string() + ")"; },
          [](const MeasureSymbol& m) { return to_string(m); },
          [](const CoderivedSymbol& c) { return print_codiff(c); },
          [](const PointDistribution& d) {
            std::string out = "pointdist(" + format_complex(d.center) + ";";
            for (std::size_t i = 0; i < d.terms.size(); ++i) {
              if (i) out += ",";
              out += " (" + std::to_string(d.terms[i].p) + "," + std::to_string(d.terms[i].q) + "," +
                     format_complex(d.terms[i].coeff) + ")";
            }
            return out + ")";
          },
          [](const RankOne& r) { return "psi(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")"; },
          [](const SeriesSymbol& s) {
            std::string out = "series(";
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
              if (i) out += ", ";
              out += print_codiff(s.terms[i]);
            }
            return out + ")";
          },
          [](const SumSymbol& s) {
            std::string out = "sum(";
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
              if (i) out += ", ";
              out += format_complex(s.terms[i].first) + ":" + to_string(s.terms[i].second);
            }
            return out + ")";
          },
      },
      s.v);
}

bool operator==(const MeasureSymbol& a, const MeasureSymbol& b) {
  if (a.body.index() != b.body.index()) return false;
  return std::visit(
      overloaded{
          [&](const Density& d) {
            const auto& e = std::get<Density>(b.body);
            return d.radius == e.radius && same_field(d.field, e.field);
          },
          [&](const Atoms& x) {
            const auto& y = std::get<Atoms>(b.body);
            if (x.atoms.size() != y.atoms.size()) return false;
            for (std::size_t i = 0; i < x.atoms.size(); ++i)
              if (x.atoms[i].point != y.atoms[i].point || x.atoms[i].weight != y.atoms[i].weight)
                return false;
            return true;
          },
          [&](const Lattice& l) {
            const auto& m = std::get<Lattice>(b.body);
            return l.decay == m.decay && l.weight == m.weight;
          },
      },
      a.body);
}

bool operator==(const CoderivedSymbol& a, const CoderivedSymbol& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.mode == b.mode && a.base == b.base;
}

bool operator==(const Symbol& a, const Symbol& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      overloaded{
          [&](const FunctionSymbol& f) { return same_field(f.field, std::get<FunctionSymbol>(b.v).field); },
          [&](const RadialSymbol& f) { return same_field(f.field, std::get<RadialSymbol>(b.v).field); },
          [&](const MeasureSymbol& m) { return m == std::get<MeasureSymbol>(b.v); },
          [&](const CoderivedSymbol& c) { return c == std::get<CoderivedSymbol>(b.v); },
          [&](const PointDistribution& d) {
            const auto& e = std::get<PointDistribution>(b.v);
            if (d.center != e.center || d.terms.size() != e.terms.size()) return false;
            for (std::size_t i = 0; i < d.terms.size(); ++i)
              if (d.terms[i].p != e.terms[i].p || d.terms[i].q != e.terms[i].q ||
                  d.terms[i].coeff != e.terms[i].coeff)
                return false;
            return true;
          },
          [&](const RankOne& r) {
            const auto& t = std::get<RankOne>(b.v);
            return r.p == t.p && r.q == t.q;
          },
          [&](const SeriesSymbol& s) { return s.terms == std::get<SeriesSymbol>(b.v).terms; },
          [&](const SumSymbol& s) {
            const auto& t = std::get<SumSymbol>(b.v);
            if (s.terms.size() != t.terms.size()) return false;
            for (std::size_t i = 0; i < s.terms.size(); ++i)
              if (s.terms[i].first != t.terms[i].first || !(s.terms[i].second == t.terms[i].second))
                return false;
            return true;
          },
      },
      a.v);
}

Symbol parse_symbol(std::string_view text, const expr::Params& params) {
  return SymbolParser(text, params).parse();
}

MeasureSymbol conjugate(const MeasureSymbol& m) {
  MeasureSymbol out;
  out.body = std::visit(overloaded{
                            [](const Density& d) -> decltype(out.body) {
                              return Density{conj_field(d.field), d.radius};
                            },
                            [](const Atoms& a) -> decltype(out.body) {
                              Atoms c = a;
                              for (auto& at : c.atoms) at.weight = std::conj(at.weight);
                              return c;
                            },
                            [](const Lattice& l) -> decltype(out.body) {
                              return Lattice{l.weight.conjugated(), l.decay};
                            },
                        },
                        m.body);
  return out;
}

namespace {

CoderivedSymbol adjoint_codiff(const CoderivedSymbol& c) {
  return CoderivedSymbol{c.beta, c.alpha, conjugate(c.base), c.mode};
}

}  // namespace

Symbol adjoint_symbol(const Symbol& s) {
  Symbol out;
  std::visit(overloaded{
                 [&](const FunctionSymbol& f) { out.v = FunctionSymbol{conj_field(f.field)}; },
                 [&](const RadialSymbol& f) { out.v = RadialSymbol{conj_field(f.field)}; },
                 [&](const MeasureSymbol& m) { out.v = conjugate(m); },
                 [&](const CoderivedSymbol& c) { out.v = adjoint_codiff(c); },
                 [&](const PointDistribution& d) {
                   PointDistribution a{d.center, {}};
                   for (const auto& t : d.terms) a.terms.push_back({t.q, t.p, std::conj(t.coeff)});
                   out.v = std::move(a);
                 },
                 [&](const RankOne& r) { out.v = RankOne{r.q, r.p}; },
                 [&](const SeriesSymbol& s) {
                   std::vector<CoderivedSymbol> terms;
                   for (const auto& t : s.terms) terms.push_back(adjoint_codiff(t));
                   out.v = make_series(std::move(terms));
                 },
                 [&](const SumSymbol& s) {
                   SumSymbol a;
                   for (const auto& [c, t] : s.terms) a.terms.emplace_back(std::conj(c), adjoint_symbol(t));
                   out.v = std::move(a);
                 },
             },
             s.v);
  return out;
}

Symbol canonical(const Symbol& s) {
  Symbol out = s;
  auto key = [](Complex c) { return std::make_tuple(c.real(), c.imag()); };
  std::visit(overloaded{
                 [&](MeasureSymbol& m) {
                   if (auto* a = std::get_if<Atoms>(&m.body))
                     std::sort(a->atoms.begin(), a->atoms.end(), [&](const Atom& x, const Atom& y) {
                       return std::tuple_cat(key(x.point), key(x.weight)) <
                              std::tuple_cat(key(y.point), key(y.weight));
                     });
                 },
                 [&](PointDistribution& d) {
                   std::sort(d.terms.begin(), d.terms.end(), [&](const PointTerm& a, const PointTerm& b) {
                     return std::tuple_cat(std::make_tuple(a.p, a.q), key(a.coeff)) <
                            std::tuple_cat(std::make_tuple(b.p, b.q), key(b.coeff));
                   });
                 },
                 [&](SeriesSymbol& se) {
                   std::sort(se.terms.begin(), se.terms.end(),
                             [](const CoderivedSymbol& a, const CoderivedSymbol& b) {
                               return std::make_tuple(series_j(a), a.alpha, a.beta, print_codiff(a)) <
                                      std::make_tuple(series_j(b), b.alpha, b.beta, print_codiff(b));
                             });
                 },
                 [&](SumSymbol& sum) {
                   for (auto& t : sum.terms) t.second = canonical(t.second);
                   std::sort(sum.terms.begin(), sum.terms.end(), [&](const auto& a, const auto& b) {
                     return std::tuple_cat(std::make_tuple(to_string(a.second)), key(a.first)) <
                            std::tuple_cat(std::make_tuple(to_string(b.second)), key(b.first));
                   });
                 },
                 [](auto&) {},
             },
             out.v);
  return out;
}

bool is_hermitian(const Symbol& s) { return canonical(adjoint_symbol(s)) == canonical(s); }

SeriesSymbol make_series(std::vector<CoderivedSymbol> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const CoderivedSymbol& a, const CoderivedSymbol& b) {
    return series_j(a) < series_j(b);
  });
  return SeriesSymbol{std::move(terms)};
}

std::vector<SeriesGroup> series_term_groups(const SeriesSymbol& s) {
  std::map<int, std::vector<CoderivedSymbol>> by_j;
  for (const auto& t : s.terms) by_j[series_j(t)].push_back(t);
  std::vector<SeriesGroup> out;
  for (auto& [j, terms] : by_j) out.push_back({j, std::move(terms)});
  return out;
}

std::optional<std::vector<PointTerm>> psi_terms(const Symbol& s) {
  return std::visit(
      overloaded{
          [](const RankOne& r) -> std::optional<std::vector<PointTerm>> {
            return std::vector<PointTerm>{{r.p, r.q, Complex(1.0, 0.0)}};
          },
          [](const PointDistribution& d) -> std::optional<std::vector<PointTerm>> {
            if (d.center != Complex{}) return std::nullopt;
            std::map<std::pair<int, int>, Complex> acc;
            for (const auto& t : d.terms)
              for (int k = std::max(0, t.p - t.q); k <= t.p; ++k)
                acc[{k, t.q - t.p + k}] += t.coeff * origin_action_coefficient(t.p, t.q, k);
            std::vector<PointTerm> out;
            for (const auto& [pq, c] : acc)
              if (c != Complex{}) out.push_back({pq.first, pq.second, c});
            return out;
          },
          [](const SumSymbol& sum) -> std::optional<std::vector<PointTerm>> {
            std::map<std::pair<int, int>, Complex> acc;
            for (const auto& [c, t] : sum.terms) {
              const auto inner = psi_terms(t);
              if (!inner) return std::nullopt;
              for (const auto& term : *inner) acc[{term.p, term.q}] += c * term.coeff;
            }
            std::vector<PointTerm> out;
            for (const auto& [pq, c] : acc)
              if (c != Complex{}) out.push_back({pq.first, pq.second, c});
            return out;
          },
          [](const auto&) -> std::optional<std::vector<PointTerm>> { return std::nullopt; },
      },
      s.v);
}

Symbol psi_sum(const std::vector<PointTerm>& terms) {
  SumSymbol sum;
  for (const auto& t : terms) sum.terms.emplace_back(t.coeff, Symbol{RankOne{t.p, t.q}});
  return Symbol{std::move(sum)};
}

std::optional<Symbol> symbol_product(const Symbol& s1, const Symbol& s2) {
  const auto a = psi_terms(s1);
  const auto b = psi_terms(s2);
  if (!a || !b) return std::nullopt;
  // P_{p,q} P_{p',q'} = [q' == p] P_{p',q}.
  std::map<std::pair<int, int>, Complex> acc;
  for (const auto& x : *a)
    for (const auto& y : *b)
      if (y.q == x.p) acc[{y.p, x.q}] += x.coeff * y.coeff;
  std::vector<PointTerm> out;
  for (const auto& [pq, c] : acc)
    if (c != Complex{}) out.push_back({pq.first, pq.second, c});
  return psi_sum(out);
}

SymbolDocument parse_document(std::string name, std::string source, expr::Params params) {
  SymbolDocument doc{std::move(name), std::move(source), std::move(params), {}};
  doc.symbol = parse_symbol(doc.source, doc.params);
  return doc;
}

}  // namespace fock
