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

#include "fock/leibniz.hpp"

namespace fock {

namespace {

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// log( a! / (a-c)! ).
double log_falling(int a, int c) { return log_factorial(a) - log_factorial(a - c); }

}  // namespace

Complex leibniz_point_derivative(int p, int q, int n, int m, Complex z0) {
  // d_v^q [v^m e^{-uv}] = sum_b C(q,b) m!/(m-b)! v^{m-b} (-u)^{q-b} e^{-uv};
  // then d_u^p of u^{n+q-b} e^{-uv} expands the same way in c.
  const double r = std::abs(z0);
  const double theta = std::arg(z0);
  const double log_r = r > 0.0 ? std::log(r) : 0.0;
  const double log_prefactor = -std::log(kPi) - 0.5 * (log_factorial(n) + log_factorial(m)) - r * r;
  Complex acc{};
  for (int b = 0; b <= std::min(q, m); ++b) {
    const int a = n + q - b;
    for (int c = 0; c <= std::min(p, a); ++c) {
      const int pu = a - c;          // power of u = z0
      const int pv = m - b + p - c;  // power of v = conj(z0)
      if (r == 0.0 && (pu > 0 || pv > 0)) continue;
      const double log_mag = log_binomial(q, b) + log_binomial(p, c) + log_falling(m, b) +
                             log_falling(a, c) + (pu + pv) * log_r + log_prefactor;
      const int sign = ((q - b + p - c) % 2 == 0) ? 1 : -1;
      acc += static_cast<double>(sign) * std::polar(std::exp(log_mag), (pu - pv) * theta);
    }
  }
  return acc;
}

double origin_action_coefficient(int p, int q, int k) {
  const int m = q - p + k;
  if (k < 0 || k > p || m < 0) return 0.0;
  const double log_mag = log_factorial(p) + log_factorial(q) - log_factorial(p - k) -
                         0.5 * (log_factorial(k) + log_factorial(m));
  const double sign = ((q - k) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag) / kPi;
}

double origin_action_integer(int p, int q, int k) {
  const int m = q - p + k;
  if (k < 0 || k > p || m < 0) return 0.0;
  double v = 1.0;
  for (int j = p - k + 1; j <= p; ++j) v *= j;  // p!/(p-k)!
  for (int j = 2; j <= q; ++j) v *= j;
  return ((q - k) % 2 == 0) ? v : -v;
}

}  // namespace fock
