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

#include <vector>

#include "fock/common.hpp"
#include "fock/symbol.hpp"

namespace fock {

inline constexpr double kDefaultCarlesonRadius = 1.4142135623730951;
inline constexpr double kDefaultSearchRadius = 12.0;

/// k-FC constants of a measure. Orders are stored doubled (k2 = 2k) so that
/// half-integer k is exact.
///
/// `lower` is the largest sampled value, `upper` adds the multiplicity-9
/// covering factor, the neighbourhood inflation of the weight and the tail
/// certificate. C_k and C_tilde_k are the sampled sups of the plain and the
/// sharp weight; `lower` and `upper` bracket whichever one was requested.
struct CarlesonReport {
  int k2 = 0;
  double r = kDefaultCarlesonRadius;
  double R = kDefaultSearchRadius;
  LogReal C_k;
  LogReal C_tilde_k;
  LogReal lower;
  LogReal upper;
  LogReal tail;  // certified bound of the sup over |z| > R
  bool vanishing = false;
  LogReal varpi_bound;  // upper bracket used as the k-FC norm downstream
  std::size_t samples = 0;
};

/// (k!)^2 sup_z |mu|(B(z, r)) (1 + |z|^2)^k over a grid of pitch r/4 in
/// |z| <= R (plus the atom locations). Compactly supported measures extend
/// the search disk past their support. Throws TailNotCertified when the
/// declared decay is below 2k.
CarlesonReport fc_constant(const MeasureSymbol& mu, int k2, double r = kDefaultCarlesonRadius,
                           double R = kDefaultSearchRadius, Exec exec = Exec::parallel);

/// Same search with the weight gamma(k, z) (1 + |z|^2)^k, gamma = k! for
/// |z| <= k and k^{-1/2} beyond (gamma = 1 when k = 0).
CarlesonReport fc_constant_sharp(const MeasureSymbol& mu, int k2, double r = kDefaultCarlesonRadius,
                                 double R = kDefaultSearchRadius, Exec exec = Exec::parallel);

/// gamma(k, z) of the sharp estimate, with k = k2 / 2.
double sharp_gamma(int k2, double modulus);

struct RatioBracket {
  double ratio = 0.0;  // sampled constants
  double lower = 0.0;  // lower_p / upper_k
  double upper = 0.0;  // upper_p / lower_k
};

/// C_p(mu_p) / C_k(mu) with mu_p = (1 + |z|^2)^{k - p} mu, normalized by
/// (k!)^2 / (p!)^2. When p = k the sampled ratio is exactly 1.
RatioBracket equivalence_shift(const MeasureSymbol& mu, int k2, int p, double r = kDefaultCarlesonRadius,
                               double R = kDefaultSearchRadius);

/// True when the maxima over the annuli j <= |z| < j + 1 of
/// |mu|(B(z, r)) (1 + |z|^2)^k fall below `tolerance` times the global
/// maximum before R and the declared decay exceeds 2k. Throws
/// TailNotCertified when the decay is below 2k.
bool vanishing_check(const MeasureSymbol& mu, int k2, double r = kDefaultCarlesonRadius,
                     double R = kDefaultSearchRadius, double tolerance = 0.05);

/// sqrt(varpi_alpha(mu_alpha) varpi_beta(mu_beta)) with
/// mu_j = (1 + |z|^2)^{k - j} mu, k = (alpha + beta) / 2, and varpi the upper
/// bracket of fc_constant. The omega weight contributes 1/pi.
LogReal form_norm_bound(const CoderivedSymbol& s, double r = kDefaultCarlesonRadius,
                        double R = kDefaultSearchRadius);

struct SeriesGateReport {
  std::vector<LogReal> term_bounds;   // per term, in series order
  std::vector<int> group_j;           // j = max(alpha, beta) per group
  std::vector<LogReal> group_bounds;  // sum of the term bounds in each group
  std::vector<LogReal> tail_after;    // bound of the remainder after each group
  LogReal total;
  double ratio = 0.0;  // geometric ratio estimated from the last groups
  bool converged = false;
};

/// Sum of per-term form-norm bounds. The remainder beyond the last group is
/// extrapolated geometrically from the last group ratios; the series is
/// accepted when that ratio is below 1 and the extrapolated remainder is at
/// most `tolerance` times the total.
SeriesGateReport series_gate_report(const SeriesSymbol& s, double r = kDefaultCarlesonRadius,
                                    double R = kDefaultSearchRadius, double tolerance = 0.1);

/// As series_gate_report, throwing SeriesDiverges when the gate fails.
SeriesGateReport series_gate(const SeriesSymbol& s, double r = kDefaultCarlesonRadius,
                             double R = kDefaultSearchRadius, double tolerance = 0.1);

/// |mu|(B(c, r)) with the extra weight (1 + |w|^2)^shift inside the integral.
double disk_mass(const MeasureSymbol& mu, Complex c, double r, double shift = 0.0);

}  // namespace fock
