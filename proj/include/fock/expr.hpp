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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fock/common.hpp"

namespace fock::expr {

/// Free variables of the closed expression grammar. Plane expressions use
/// z / conj(z) / r; lattice weights use the integer node coordinates n1, n2
/// and their l1 norm n = |n1| + |n2|.
enum class Var { z, zbar, r, n1, n2, n };

enum class Op { constant, variable, neg, add, sub, mul, div, pow, exp, abs, abs2 };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::constant;
  Complex value{};
  Var var = Var::z;
  NodePtr lhs;
  NodePtr rhs;
};

bool structurally_equal(const Node& a, const Node& b);

/// Asymptotic growth class derived by syntactic inspection:
/// |g(x)| <= C (1+|x|)^poly e^{gauss |x|^2}. Lower bounds are tracked only for
/// real nonnegative expressions; for `positive` ones they hold globally, which
/// is what division and negative powers require.
struct Growth {
  enum class Sign { complex, real, nonneg, positive };

  double poly = 0.0;
  double gauss = 0.0;
  Sign sign = Sign::complex;
  bool has_lower = false;
  double low_poly = 0.0;
  double low_gauss = 0.0;

  bool bounded() const { return gauss < 0.0 || (gauss == 0.0 && poly <= 0.0); }
  /// Polynomial decay exponent d with |g| <= C (1+|x|)^-d, +inf for Gaussian decay.
  double decay() const;
};

/// Evaluation point. Plane expressions read z; lattice expressions read n1/n2.
struct Point {
  Complex z{};
  double n1 = 0.0;
  double n2 = 0.0;
};

/// Immutable compiled expression. Structural equality compares syntax trees,
/// not values.
class Expression {
 public:
  Expression();
  explicit Expression(NodePtr root);

  static Expression constant(Complex c);

  Complex evaluate(const Point& p) const;
  Complex operator()(Complex z) const { return evaluate(Point{z, 0.0, 0.0}); }
  Complex at_node(int n1, int n2) const {
    return evaluate(Point{Complex(n1, n2), static_cast<double>(n1), static_cast<double>(n2)});
  }

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }

  /// Throws ValidationError when the growth class cannot be decided.
  Growth growth() const;

  bool uses(Var v) const;
  bool uses_lattice_vars() const { return uses(Var::n1) || uses(Var::n2) || uses(Var::n); }
  /// True when z enters only through |z| (r, abs(z), abs2(z)).
  bool depends_only_on_modulus() const;

  /// Symbolic complex conjugate: conj of constants, z <-> conj(z); r, abs and
  /// abs2 are left in place so that conjugation is an involution and real
  /// expressions are fixed points.
  Expression conjugated() const;

  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b) {
    return structurally_equal(*a.root_, *b.root_);
  }

 private:
  struct Instr {
    Op op;
    Var var;
    Complex value;
    double exponent;  // pow: real exponent when integral or real, NaN otherwise
    bool integral;
  };

  void compile();

  NodePtr root_;
  std::vector<Instr> code_;
};

using Params = std::map<std::string, double, std::less<>>;

/// Parse a standalone expression in the closed grammar:
///   + - * / ^, unary minus, exp() abs() abs2() conj(), variables z r n n1 n2,
///   constants i pi, real literals (optionally suffixed with i), bound params.
Expression parse_expression(std::string_view text, const Params& params = {});

}  // namespace fock::expr
