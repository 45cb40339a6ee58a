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

#include "fock/expr.hpp"

#include <array>
#include <cstdio>
#include <functional>

#include "cursor.hpp"

namespace fock::expr {

namespace {

constexpr std::size_t kMaxStack = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_integral(double p) { return std::isfinite(p) && std::floor(p) == p && std::abs(p) < 1e9; }

Complex ipow(Complex b, long long e) {
  const bool invert = e < 0;
  unsigned long long n = static_cast<unsigned long long>(invert ? -e : e);
  Complex acc(1.0, 0.0);
  while (n) {
    if (n & 1ULL) acc *= b;
    b *= b;
    n >>= 1ULL;
  }
  return invert ? Complex(1.0, 0.0) / acc : acc;
}

Complex power(Complex b, Complex e) {
  if (e.imag() == 0.0) {
    const double p = e.real();
    if (is_integral(p)) return ipow(b, static_cast<long long>(p));
    if (b.imag() == 0.0 && b.real() >= 0.0) return {std::pow(b.real(), p), 0.0};
  }
  return std::pow(b, e);
}

Complex apply_unary(Op op, Complex a) {
  switch (op) {
    case Op::neg: return -a;
    case Op::exp: return std::exp(a);
    case Op::abs: return {std::abs(a), 0.0};
    case Op::abs2: return {std::norm(a), 0.0};
    default: return a;
  }
}

Complex apply_binary(Op op, Complex a, Complex b) {
  switch (op) {
    case Op::add: return a + b;
    case Op::sub: return a - b;
    case Op::mul: return a * b;
    case Op::div: return a / b;
    case Op::pow: return power(a, b);
    default: return a;
  }
}

bool is_unary(Op op) { return op == Op::neg || op == Op::exp || op == Op::abs || op == Op::abs2; }

// ---------------------------------------------------------------- growth ---

struct Interval {
  double lo;
  double hi;
};

struct Info {
  Growth g;
  bool decidable = true;
  std::optional<Interval> re;       // asymptotic bounds on Re(e) / |x|^2
  std::optional<double> mod;        // asymptotic bound on |e| / |x|^2
  std::optional<double> neg_power;  // Re(e) <= -c (1+|x|)^p eventually
  bool modulus_var = false;         // r, abs(z), n
  bool pure_quadratic = false;      // quadratic form plus a bounded remainder
};

using Sign = Growth::Sign;

bool nonneg(Sign s) { return s == Sign::nonneg || s == Sign::positive; }
bool real(Sign s) { return s != Sign::complex; }

// a dominates b asymptotically (upper sense).
bool dominates(double pa, double ga, double pb, double gb) {
  if (ga != gb) return ga > gb;
  return pa >= pb;
}

Info undecidable() {
  Info i;
  i.decidable = false;
  return i;
}

void finish_quadratic(Info& i) {
  if (!i.decidable) return;
  if (i.g.gauss == 0.0 && i.g.poly < 2.0) {
    i.re = Interval{0.0, 0.0};
    i.mod = 0.0;
  }
  if (i.re && real(i.g.sign) && !i.mod) i.mod = std::max(std::abs(i.re->lo), std::abs(i.re->hi));
}

Info scale(const Info& x, Complex c) {
  Info out = x;
  out.modulus_var = false;
  if (c == Complex{}) {
    Info z;
    z.g.poly = -kInf;
    z.g.sign = Sign::real;
    z.re = Interval{0.0, 0.0};
    z.mod = 0.0;
    return z;
  }
  if (c.imag() == 0.0) {
    const double s = c.real();
    if (s > 0.0) {
      if (x.re) out.re = Interval{s * x.re->lo, s * x.re->hi};
      if (x.mod) out.mod = s * *x.mod;
      return out;
    }
    out.g.sign = real(x.g.sign) ? Sign::real : Sign::complex;
    out.g.has_lower = false;
    if (x.re) out.re = Interval{s * x.re->hi, s * x.re->lo};
    if (x.mod) out.mod = -s * *x.mod;
    out.neg_power.reset();
    if (nonneg(x.g.sign) && x.g.has_lower && x.g.low_gauss == 0.0 && x.g.low_poly > 0.0)
      out.neg_power = x.g.low_poly;
    return out;
  }
  out.g.sign = Sign::complex;
  out.g.has_lower = false;
  out.neg_power.reset();
  const double m = std::abs(c);
  if (real(x.g.sign) && x.re) {
    const double s = c.real();
    out.re = s >= 0.0 ? Interval{s * x.re->lo, s * x.re->hi} : Interval{s * x.re->hi, s * x.re->lo};
  } else if (x.mod) {
    out.re = Interval{-m * *x.mod, m * *x.mod};
  } else {
    out.re.reset();
  }
  if (x.mod) out.mod = m * *x.mod;
  return out;
}

Info analyze(const Node& n);

Info analyze_var(Var v) {
  Info i;
  i.g.poly = 1.0;
  switch (v) {
    case Var::z:
    case Var::zbar:
      i.g.sign = Sign::complex;
      break;
    case Var::n1:
    case Var::n2:
      i.g.sign = Sign::real;
      break;
    case Var::r:
    case Var::n:
      i.g.sign = Sign::nonneg;
      i.g.has_lower = true;
      i.g.low_poly = 1.0;
      i.modulus_var = true;
      break;
  }
  return i;
}

Info analyze_const(Complex c) {
  Info i;
  i.pure_quadratic = true;
  if (c == Complex{}) {
    i.g.poly = -kInf;
    i.g.sign = Sign::real;
  } else if (c.imag() == 0.0 && c.real() > 0.0) {
    i.g.sign = Sign::positive;
    i.g.has_lower = true;
  } else {
    i.g.sign = c.imag() == 0.0 ? Sign::real : Sign::complex;
  }
  return i;
}

bool is_plane_var(const Node& n) {
  return n.op == Op::variable && (n.var == Var::z || n.var == Var::zbar || n.var == Var::r);
}

// z + c, z - c, c + z, c - z (and the same for zbar).
bool is_shifted_plane_var(const Node& n) {
  if (n.op != Op::add && n.op != Op::sub) return false;
  return (is_plane_var(*n.lhs) && n.rhs->op == Op::constant) ||
         (n.lhs->op == Op::constant && is_plane_var(*n.rhs));
}

Info analyze_abs(const Node& n, bool squared) {
  Info a = analyze(*n.lhs);
  if (!a.decidable) return a;
  const double f = squared ? 2.0 : 1.0;
  Info i;
  i.g.poly = f * a.g.poly;
  i.g.gauss = f * a.g.gauss;
  i.g.sign = a.g.sign == Sign::positive ? Sign::positive : Sign::nonneg;
  if (is_shifted_plane_var(*n.lhs)) {
    // |x - c|^2 = |x|^2 + O(|x|): the quadratic coefficient is exact, the
    // remainder is sub-quadratic.
    i.g.has_lower = true;
    i.g.low_poly = f;
    if (squared) {
      i.re = Interval{1.0, 1.0};
      i.mod = 1.0;
    }
  } else if (is_plane_var(*n.lhs) || (n.lhs->op == Op::variable && n.lhs->var == Var::n)) {
    i.g.has_lower = true;
    i.g.low_poly = f;
    if (!squared) i.modulus_var = true;
    if (squared) {
      i.re = Interval{1.0, 1.0};
      i.mod = 1.0;
      i.pure_quadratic = true;
    }
  } else if (a.g.has_lower && nonneg(a.g.sign)) {
    i.g.has_lower = true;
    i.g.low_poly = f * a.g.low_poly;
    i.g.low_gauss = f * a.g.low_gauss;
  }
  return i;
}

Info analyze_add(const Info& a, const Info& b, bool subtract) {
  Info i;
  const bool a_dom = dominates(a.g.poly, a.g.gauss, b.g.poly, b.g.gauss);
  i.g.poly = a_dom ? a.g.poly : b.g.poly;
  i.g.gauss = a_dom ? a.g.gauss : b.g.gauss;
  if (!subtract && nonneg(a.g.sign) && nonneg(b.g.sign)) {
    i.g.sign = (a.g.sign == Sign::positive || b.g.sign == Sign::positive) ? Sign::positive
                                                                           : Sign::nonneg;
    if (a.g.has_lower || b.g.has_lower) {
      i.g.has_lower = true;
      if (a.g.has_lower && b.g.has_lower) {
        const bool al = dominates(a.g.low_poly, a.g.low_gauss, b.g.low_poly, b.g.low_gauss);
        i.g.low_poly = al ? a.g.low_poly : b.g.low_poly;
        i.g.low_gauss = al ? a.g.low_gauss : b.g.low_gauss;
      } else {
        const Growth& src = a.g.has_lower ? a.g : b.g;
        i.g.low_poly = src.low_poly;
        i.g.low_gauss = src.low_gauss;
      }
    }
  } else {
    i.g.sign = (real(a.g.sign) && real(b.g.sign)) ? Sign::real : Sign::complex;
  }
  if (a.re && b.re) {
    i.re = subtract ? Interval{a.re->lo - b.re->hi, a.re->hi - b.re->lo}
                    : Interval{a.re->lo + b.re->lo, a.re->hi + b.re->hi};
  }
  if (a.mod && b.mod) i.mod = *a.mod + *b.mod;
  i.pure_quadratic = a.pure_quadratic && b.pure_quadratic;
  // A decaying exponent stays decaying when the other summand is of lower order.
  auto keeps = [](const Info& lead, const Info& other) {
    return lead.neg_power && other.g.gauss <= 0.0 && other.g.poly < *lead.neg_power;
  };
  if (!subtract) {
    if (keeps(a, b)) i.neg_power = a.neg_power;
    if (keeps(b, a)) i.neg_power = b.neg_power;
  } else if (keeps(a, b)) {
    i.neg_power = a.neg_power;
  }
  return i;
}

Info analyze_mul(const Node& n, const Info& a, const Info& b) {
  if (n.lhs->op == Op::constant) return scale(b, n.lhs->value);
  if (n.rhs->op == Op::constant) return scale(a, n.rhs->value);
  Info i;
  i.g.poly = a.g.poly + b.g.poly;
  i.g.gauss = a.g.gauss + b.g.gauss;
  if (a.g.sign == Sign::positive && b.g.sign == Sign::positive)
    i.g.sign = Sign::positive;
  else if (nonneg(a.g.sign) && nonneg(b.g.sign))
    i.g.sign = Sign::nonneg;
  else if (real(a.g.sign) && real(b.g.sign))
    i.g.sign = Sign::real;
  else
    i.g.sign = Sign::complex;
  if (nonneg(a.g.sign) && nonneg(b.g.sign) && a.g.has_lower && b.g.has_lower) {
    i.g.has_lower = true;
    i.g.low_poly = a.g.low_poly + b.g.low_poly;
    i.g.low_gauss = a.g.low_gauss + b.g.low_gauss;
  }
  if (a.modulus_var && b.modulus_var) {
    i.re = Interval{1.0, 1.0};
    i.mod = 1.0;
    i.pure_quadratic = true;
  }
  return i;
}

Info analyze_div(const Node& n, const Info& a, const Info& b) {
  if (n.rhs->op == Op::constant) {
    if (n.rhs->value == Complex{}) return undecidable();
    return scale(a, Complex(1.0, 0.0) / n.rhs->value);
  }
  if (b.g.sign != Sign::positive || !b.g.has_lower) return undecidable();
  Info i;
  i.g.poly = a.g.poly - b.g.low_poly;
  i.g.gauss = a.g.gauss - b.g.low_gauss;
  i.g.sign = a.g.sign;
  if (nonneg(a.g.sign) && a.g.has_lower) {
    i.g.has_lower = true;
    i.g.low_poly = a.g.low_poly - b.g.poly;
    i.g.low_gauss = a.g.low_gauss - b.g.gauss;
  } else {
    i.g.has_lower = false;
  }
  return i;
}

Info analyze_pow(const Node& n, const Info& b) {
  if (n.rhs->op != Op::constant || n.rhs->value.imag() != 0.0) return undecidable();
  const double p = n.rhs->value.real();
  Info i;
  if (p == 0.0) return analyze_const(Complex(1.0, 0.0));
  if (p < 0.0) {
    if (b.g.sign != Sign::positive || !b.g.has_lower) return undecidable();
    i.g.poly = p * b.g.low_poly;
    i.g.gauss = p * b.g.low_gauss;
    i.g.sign = Sign::positive;
    i.g.has_lower = true;
    i.g.low_poly = p * b.g.poly;
    i.g.low_gauss = p * b.g.gauss;
    return i;
  }
  i.g.poly = p * b.g.poly;
  i.g.gauss = p * b.g.gauss;
  const bool integral = is_integral(p);
  if (nonneg(b.g.sign)) {
    i.g.sign = b.g.sign;
  } else if (integral && real(b.g.sign)) {
    i.g.sign = (static_cast<long long>(p) % 2 == 0) ? Sign::nonneg : Sign::real;
  } else {
    i.g.sign = Sign::complex;
  }
  if (nonneg(b.g.sign) && b.g.has_lower) {
    i.g.has_lower = true;
    i.g.low_poly = p * b.g.low_poly;
    i.g.low_gauss = p * b.g.low_gauss;
  }
  if (p == 2.0) {
    if (b.modulus_var) {
      i.re = Interval{1.0, 1.0};
      i.mod = 1.0;
      i.pure_quadratic = true;
    } else if (is_plane_var(*n.lhs)) {
      i.re = Interval{-1.0, 1.0};
      i.mod = 1.0;
      i.pure_quadratic = true;
    }
  } else if (p == 1.0) {
    i.re = b.re;
    i.mod = b.mod;
    i.modulus_var = b.modulus_var;
    i.pure_quadratic = b.pure_quadratic;
  }
  return i;
}

Info analyze_exp(const Info& a) {
  Info i;
  if (!a.re) {
    if (a.neg_power) {
      i.g.poly = -kInf;
      i.g.sign = real(a.g.sign) ? Sign::positive : Sign::complex;
      return i;
    }
    return undecidable();
  }
  // Sub-quadratic terms of unknown sign may add a factor e^{o(|x|^2)}.
  const bool exact = a.pure_quadratic || (a.g.poly <= 0.0 && a.g.gauss <= 0.0);
  const double slack = exact ? 0.0 : 1e-9;
  i.g.gauss = a.re->hi + slack;
  i.g.poly = 0.0;
  if (a.neg_power && a.re->hi == 0.0) {
    i.g.gauss = 0.0;
    i.g.poly = -kInf;
  }
  if (real(a.g.sign)) {
    i.g.sign = Sign::positive;
    i.g.has_lower = true;
    i.g.low_gauss = a.re->lo - slack;
    i.g.low_poly = 0.0;
  } else {
    i.g.sign = Sign::complex;
  }
  return i;
}

Info analyze(const Node& n) {
  Info out;
  switch (n.op) {
    case Op::constant:
      out = analyze_const(n.value);
      break;
    case Op::variable:
      out = analyze_var(n.var);
      break;
    case Op::abs:
      out = analyze_abs(n, false);
      break;
    case Op::abs2:
      out = analyze_abs(n, true);
      break;
    default: {
      Info a = analyze(*n.lhs);
      if (!a.decidable) return a;
      if (n.op == Op::neg) {
        out = scale(a, Complex(-1.0, 0.0));
        break;
      }
      if (n.op == Op::exp) {
        out = analyze_exp(a);
        break;
      }
      Info b = analyze(*n.rhs);
      if (!b.decidable) return b;
      switch (n.op) {
        case Op::add: out = analyze_add(a, b, false); break;
        case Op::sub: out = analyze_add(a, b, true); break;
        case Op::mul: out = analyze_mul(n, a, b); break;
        case Op::div: out = analyze_div(n, a, b); break;
        case Op::pow: out = analyze_pow(n, a); break;
        default: return undecidable();
      }
    }
  }
  finish_quadratic(out);
  return out;
}

// --------------------------------------------------------------- printing ---

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::abs(x));
  std::string s(buf);
  return x < 0.0 || std::signbit(x) ? "(-" + s + ")" : s;
}

std::string format_const(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  char re[40];
  char im[40];
  std::snprintf(re, sizeof re, "%.17g", c.real());
  std::snprintf(im, sizeof im, "%.17g", std::abs(c.imag()));
  return std::string("(") + re + (c.imag() < 0.0 ? "-" : "+") + im + "i)";
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::constant:
      out += format_const(n.value);
      return;
    case Op::variable:
      switch (n.var) {
        case Var::z: out += "z"; break;
        case Var::zbar: out += "conj(z)"; break;
        case Var::r: out += "r"; break;
        case Var::n1: out += "n1"; break;
        case Var::n2: out += "n2"; break;
        case Var::n: out += "n"; break;
      }
      return;
    case Op::neg:
      out += "(-";
      print(*n.lhs, out);
      out += ")";
      return;
    case Op::exp:
    case Op::abs:
    case Op::abs2:
      out += n.op == Op::exp ? "exp(" : n.op == Op::abs ? "abs(" : "abs2(";
      print(*n.lhs, out);
      out += ")";
      return;
    default: {
      const char sym = n.op == Op::add   ? '+'
                       : n.op == Op::sub ? '-'
                       : n.op == Op::mul ? '*'
                       : n.op == Op::div ? '/'
                                         : '^';
      out += "(";
      print(*n.lhs, out);
      out += sym;
      print(*n.rhs, out);
      out += ")";
    }
  }
}

NodePtr conj_node(const NodePtr& n) {
  auto c = std::make_shared<Node>(*n);
  switch (n->op) {
    case Op::constant:
      c->value = std::conj(n->value);
      break;
    case Op::variable:
      if (n->var == Var::z)
        c->var = Var::zbar;
      else if (n->var == Var::zbar)
        c->var = Var::z;
      break;
    case Op::abs:
    case Op::abs2:
      break;
    default:
      if (n->lhs) c->lhs = conj_node(n->lhs);
      if (n->rhs) c->rhs = conj_node(n->rhs);
  }
  return c;
}

bool any_node(const Node& n, const std::function<bool(const Node&)>& pred) {
  if (pred(n)) return true;
  if (n.lhs && any_node(*n.lhs, pred)) return true;
  return n.rhs && any_node(*n.rhs, pred);
}

bool modulus_only(const Node& n) {
  if (n.op == Op::variable) return n.var == Var::r;
  if ((n.op == Op::abs || n.op == Op::abs2) && n.lhs->op == Op::variable &&
      (n.lhs->var == Var::z || n.lhs->var == Var::zbar))
    return true;
  if (n.lhs && !modulus_only(*n.lhs)) return false;
  return !n.rhs || modulus_only(*n.rhs);
}

}  // namespace

double Growth::decay() const {
  if (gauss < 0.0 || poly == -kInf) return kInf;
  if (gauss > 0.0) return -kInf;
  return -poly;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  if (a.op == Op::constant) return a.value == b.value;
  if (a.op == Op::variable) return a.var == b.var;
  if (!structurally_equal(*a.lhs, *b.lhs)) return false;
  if (is_unary(a.op)) return true;
  return structurally_equal(*a.rhs, *b.rhs);
}

Expression::Expression() : Expression(std::make_shared<Node>()) {}

Expression::Expression(NodePtr root) : root_(std::move(root)) { compile(); }

Expression Expression::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = c;
  return Expression(n);
}

void Expression::compile() {
  code_.clear();
  std::size_t depth = 0;
  std::size_t max_depth = 0;
  std::function<void(const Node&)> emit = [&](const Node& n) {
    if (n.lhs) emit(*n.lhs);
    if (n.rhs) emit(*n.rhs);
    Instr in{n.op, n.var, n.value, std::numeric_limits<double>::quiet_NaN(), false};
    if (n.op == Op::pow && n.rhs->op == Op::constant && n.rhs->value.imag() == 0.0) {
      in.exponent = n.rhs->value.real();
      in.integral = is_integral(in.exponent);
    }
    if (n.op == Op::constant || n.op == Op::variable) {
      ++depth;
    } else if (!is_unary(n.op)) {
      --depth;
    }
    max_depth = std::max(max_depth, depth);
    code_.push_back(in);
  };
  emit(*root_);
  if (max_depth > kMaxStack) throw ValidationError("expression nesting too deep");
}

Complex Expression::evaluate(const Point& p) const {
  std::array<Complex, kMaxStack> stack;
  std::size_t sp = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::constant:
        stack[sp++] = in.value;
        break;
      case Op::variable:
        switch (in.var) {
          case Var::z: stack[sp++] = p.z; break;
          case Var::zbar: stack[sp++] = std::conj(p.z); break;
          case Var::r: stack[sp++] = std::abs(p.z); break;
          case Var::n1: stack[sp++] = p.n1; break;
          case Var::n2: stack[sp++] = p.n2; break;
          case Var::n: stack[sp++] = std::abs(p.n1) + std::abs(p.n2); break;
        }
        break;
      case Op::neg:
      case Op::exp:
      case Op::abs:
      case Op::abs2:
        stack[sp - 1] = apply_unary(in.op, stack[sp - 1]);
        break;
      case Op::pow:
        --sp;
        if (in.integral) {
          stack[sp - 1] = ipow(stack[sp - 1], static_cast<long long>(in.exponent));
        } else {
          stack[sp - 1] = power(stack[sp - 1], stack[sp]);
        }
        break;
      default:
        --sp;
        stack[sp - 1] = apply_binary(in.op, stack[sp - 1], stack[sp]);
    }
  }
  return stack[0];
}

Growth Expression::growth() const {
  const Info i = analyze(*root_);
  if (!i.decidable)
    throw ValidationError("growth class of '" + to_string() +
                          "' is not decidable (denominators and negative powers must be "
                          "provably positive; exponents must be constant)");
  return i.g;
}

bool Expression::uses(Var v) const {
  return any_node(*root_, [v](const Node& n) { return n.op == Op::variable && n.var == v; });
}

bool Expression::depends_only_on_modulus() const { return modulus_only(*root_); }

Expression Expression::conjugated() const { return Expression(conj_node(root_)); }

std::string Expression::to_string() const {
  std::string s;
  print(*root_, s);
  return s;
}

// ---------------------------------------------------------------- parsing ---

}  // namespace fock::expr

namespace fock::detail {

namespace {

using expr::Node;
using expr::NodePtr;
using expr::Op;
using expr::Var;

NodePtr make_const(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = c;
  return n;
}

NodePtr make_var(Var v) {
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  n->var = v;
  return n;
}

NodePtr make_op(Op op, NodePtr a, NodePtr b = nullptr) {
  if (a->op == Op::constant && (!b || b->op == Op::constant)) {
    const Complex v = b ? expr::apply_binary(op, a->value, b->value) : expr::apply_unary(op, a->value);
    if (std::isfinite(v.real()) && std::isfinite(v.imag())) return make_const(v);
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class ExprParser {
 public:
  ExprParser(Cursor& cur, const expr::Params& params) : cur_(cur), params_(params) {}

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (cur_.accept('+')) {
        lhs = make_op(Op::add, lhs, term());
      } else if (cur_.accept('-')) {
        lhs = make_op(Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

 private:
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (cur_.accept('*')) {
        lhs = make_op(Op::mul, lhs, unary());
      } else if (cur_.accept('/')) {
        lhs = make_op(Op::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (cur_.accept('-')) return make_op(Op::neg, unary());
    if (cur_.accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (cur_.accept('^')) {
      const std::size_t at = cur_.position();
      NodePtr e = unary();
      if (e->op != Op::constant) throw ParseError(at, "constant exponent", "exponent must be constant");
      return make_op(Op::pow, base, e);
    }
    return base;
  }

  NodePtr call(Op op) {
    NodePtr arg = expression();
    cur_.expect(')');
    return make_op(op, arg);
  }

  NodePtr primary() {
    if (cur_.peek_number()) {
      const double v = cur_.number();
      if (cur_.accept_imaginary_suffix()) return make_const(Complex(0.0, v));
      return make_const(Complex(v, 0.0));
    }
    if (cur_.accept('(')) {
      NodePtr e = expression();
      cur_.expect(')');
      return e;
    }
    if (!cur_.peek_identifier())
      throw cur_.error("number, identifier or '('", "unexpected " + cur_.describe_here());
    const std::size_t at = cur_.position();
    const std::string id = cur_.identifier();
    if (id == "exp" || id == "abs" || id == "abs2" || id == "conj") {
      if (!cur_.accept('(')) throw cur_.error("'('", "function call needs an argument list");
      if (id == "exp") return call(Op::exp);
      if (id == "abs") return call(Op::abs);
      if (id == "abs2") return call(Op::abs2);
      NodePtr arg = expression();
      cur_.expect(')');
      return expr::Expression(arg).conjugated().root_ptr();
    }
    if (id == "i") return make_const(Complex(0.0, 1.0));
    if (id == "pi") return make_const(Complex(kPi, 0.0));
    if (id == "z") return make_var(Var::z);
    if (id == "r") return make_var(Var::r);
    if (auto it = params_.find(id); it != params_.end()) return make_const(Complex(it->second, 0.0));
    if (id == "n") return make_var(Var::n);
    if (id == "n1") return make_var(Var::n1);
    if (id == "n2") return make_var(Var::n2);
    throw ParseError(at, "variable, constant or bound parameter", "unknown identifier '" + id + "'");
  }

  Cursor& cur_;
  const expr::Params& params_;
};

}  // namespace

expr::NodePtr parse_expression_node(Cursor& cur, const expr::Params& params) {
  return ExprParser(cur, params).expression();
}

}  // namespace fock::detail

namespace fock::expr {

Expression parse_expression(std::string_view text, const Params& params) {
  detail::Cursor cur(text);
  NodePtr root = detail::parse_expression_node(cur, params);
  if (!cur.at_end()) throw cur.error("end of expression", "trailing input " + cur.describe_here());
  return Expression(root);
}

}  // namespace fock::expr
