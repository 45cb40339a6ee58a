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

#include "oracles/mollified.hpp"

#include <quadmath.h>

#include <vector>

#include "fock/quadrature.hpp"

namespace fock::oracle {

namespace {

using Q = __float128;

struct CQ {
  Q re = 0;
  Q im = 0;
};
CQ operator+(CQ a, CQ b) { return {a.re + b.re, a.im + b.im}; }
CQ operator*(CQ a, CQ b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
CQ operator*(Q s, CQ a) { return {s * a.re, s * a.im}; }
CQ conj(CQ a) { return {a.re, -a.im}; }

// Physicists' Hermite polynomials H_0..H_n at t.
std::vector<Q> hermite(int n, Q t) {
  std::vector<Q> h(static_cast<std::size_t>(n) + 1);
  h[0] = 1;
  if (n > 0) h[1] = 2 * t;
  for (int k = 1; k < n; ++k) h[k + 1] = 2 * t * h[k] - 2 * static_cast<Q>(k) * h[k - 1];
  return h;
}

struct Rule {
  std::vector<Q> nodes;
  std::vector<Q> weights;
};

// Gauss-Hermite rule polished to quad precision from the double rule.
Rule quad_hermite(int n) {
  const GaussRule& seed = hermite_rule(n);
  Rule r;
  Q log_norm = (n - 1) * logq(2) + lgammaq(n + 1) + Q(0.5) * logq(M_PIq) - 2 * logq(n);
  for (double x0 : seed.nodes) {
    Q x = x0;
    for (int it = 0; it < 6; ++it) {
      const auto h = hermite(n, x);
      x -= h[n] / (2 * static_cast<Q>(n) * h[n - 1]);
    }
    const auto h = hermite(n, x);
    r.nodes.push_back(x);
    r.weights.push_back(expq(log_norm - 2 * logq(fabsq(h[n - 1]))));
  }
  return r;
}

Q binom(int n, int k) { return expq(lgammaq(n + 1) - lgammaq(k + 1) - lgammaq(n - k + 1)); }

// i^e for integer e.
CQ ipow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

std::vector<CQ> pairing(int p, int q, Complex center, int degree, Q sigma, const Rule& rule) {
  const int order = p + q;
  const Q h = sigma * sqrtq(2);
  // d^p dbar^q = 2^{-(p+q)} sum C(p,i)C(q,j) (-i)^{p-i} i^{q-j} dx^{i+j} dy^{p-i+q-j}.
  struct Part {
    int a;
    int b;
    CQ c;
  };
  std::vector<Part> parts;
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= q; ++j) {
      const CQ phase = ipow(-(p - i)) * ipow(q - j);
      parts.push_back({i + j, p - i + q - j, (binom(p, i) * binom(q, j)) * phase});
    }
  // ∫ dx^a dy^b G phi = (1/pi) (-1)^{a+b} h^{-(a+b)} ∫∫ H_a H_b e^{-t^2-s^2} phi.
  const Q prefactor = ((order % 2 == 0) ? 1 : -1) / (M_PIq * powq(2 * h, order));
  const std::size_t size = static_cast<std::size_t>(degree) + 1;
  std::vector<CQ> acc(size * size);
  const std::size_t n = rule.nodes.size();
  std::vector<std::vector<Q>> hx(n);
  for (std::size_t i = 0; i < n; ++i) hx[i] = hermite(order, rule.nodes[i]);
  std::vector<CQ> basis(size);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CQ d;
      for (const Part& part : parts) d = d + (hx[i][part.a] * hx[j][part.b]) * part.c;
      const Q x = static_cast<Q>(center.real()) + h * rule.nodes[i];
      const Q y = static_cast<Q>(center.imag()) + h * rule.nodes[j];
      const Q gauss = expq(-(x * x + y * y)) / M_PIq;
      const CQ w{x, y};
      basis[0] = {1, 0};
      for (std::size_t k = 1; k < size; ++k) basis[k] = (1 / sqrtq(static_cast<Q>(k))) * (basis[k - 1] * w);
      const CQ weight = (rule.weights[i] * rule.weights[j] * gauss * prefactor) * d;
      for (std::size_t m = 0; m < size; ++m) {
        const CQ wm = weight * conj(basis[m]);
        for (std::size_t nn = 0; nn < size; ++nn) acc[m * size + nn] = acc[m * size + nn] + wm * basis[nn];
      }
    }
  return acc;
}

}  // namespace

Eigen::MatrixXcd mollified_point_matrix(int p, int q, Complex center, int degree, double sigma) {
  static const Rule rule = quad_hermite(28);
  const Q s = sigma;
  const auto v1 = pairing(p, q, center, degree, s, rule);
  const auto v2 = pairing(p, q, center, degree, s / 2, rule);
  const auto v3 = pairing(p, q, center, degree, s / 4, rule);
  const auto size = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXcd out(size, size);
  for (Eigen::Index m = 0; m < size; ++m)
    for (Eigen::Index n = 0; n < size; ++n) {
      const std::size_t i = static_cast<std::size_t>(m * size + n);
      // Even expansion in sigma: eliminate sigma^2 and sigma^4.
      const CQ r1 = (Q(1) / 3) * CQ{4 * v2[i].re - v1[i].re, 4 * v2[i].im - v1[i].im};
      const CQ r2 = (Q(1) / 3) * CQ{4 * v3[i].re - v2[i].re, 4 * v3[i].im - v2[i].im};
      const CQ r = (Q(1) / 15) * CQ{16 * r2.re - r1.re, 16 * r2.im - r1.im};
      out(m, n) = Complex(static_cast<double>(r.re), static_cast<double>(r.im));
    }
  return out;
}

}  // namespace fock::oracle
