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

#include "fock/carleson.hpp"

#include <variant>

#include "fock/core.hpp"
#include "fock/measure_form.hpp"
#include "parallel.hpp"

namespace fock {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kCoverLog = 2.1972245773362196;  // log 9

bool inside(Complex a, Complex c, double r) { return std::abs(a - c) <= r * (1.0 + 1e-12); }

double shift_weight(Complex w, double shift) {
  return shift == 0.0 ? 1.0 : std::pow(1.0 + std::norm(w), shift);
}

// Radius beyond which the measure vanishes, or +inf.
double support_radius(const MeasureSymbol& mu) {
  if (const auto* a = std::get_if<Atoms>(&mu.body)) {
    double m = 0.0;
    for (const Atom& at : a->atoms) m = std::max(m, std::abs(at.point));
    return m;
  }
  if (const auto* d = std::get_if<Density>(&mu.body))
    if (d->radius > 0.0) return d->radius;
  return std::numeric_limits<double>::infinity();
}

struct Weight {
  double k = 0.0;  // exponent of (1 + |z|^2)
  bool sharp = false;
  int k2 = 0;

  double log_at(double t) const {
    double v = k * std::log1p(t * t);
    if (sharp) v += std::log(sharp_gamma(k2, t));
    return v;
  }
  // Largest value over moduli in [t - d, t + d].
  double log_max_near(double t, double d) const {
    double v = k * std::log1p((t + d) * (t + d));
    if (sharp) v += std::log(std::max(sharp_gamma(k2, std::max(0.0, t - d)), sharp_gamma(k2, t + d)));
    return v;
  }
};

struct Search {
  std::vector<Complex> points;
  std::vector<double> log_mass;
  double R_eff = 0.0;
  double pitch = 0.0;
};

Search sample(const MeasureSymbol& mu, double shift, double r, double R, Exec exec) {
  if (!(r > 0.0) || !(R > 0.0)) throw ValidationError("carleson: r and R must be positive");
  Search s;
  s.pitch = r / 4.0;
  const double support = support_radius(mu);
  s.R_eff = std::isfinite(support) ? std::max(R, support + r + s.pitch) : R;
  const double reach = s.R_eff + 2.0 * s.pitch;
  const int M = static_cast<int>(std::ceil(reach / s.pitch));
  for (int i = -M; i <= M; ++i)
    for (int j = -M; j <= M; ++j) {
      const Complex g(i * s.pitch, j * s.pitch);
      if (std::abs(g) <= reach) s.points.push_back(g);
    }
  if (const auto* a = std::get_if<Atoms>(&mu.body))
    for (const Atom& at : a->atoms) s.points.push_back(at.point);
  s.log_mass.resize(s.points.size());
  detail::for_each_index(s.points.size(), exec, [&](std::size_t i) {
    const double m = disk_mass(mu, s.points[i], r, shift);
    s.log_mass[i] = m > 0.0 ? std::log(m) : kNegInf;
  });
  return s;
}

// Empirical tail constant A with mass(z) <= A (1 + |z| - r)^{-D} on the
// outer half of the search disk, extended beyond R by the declared decay D.
double log_tail(const Search& s, const Weight& w, double decay, double r) {
  double log_A = kNegInf;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const double t = std::abs(s.points[i]);
    if (t < 0.5 * s.R_eff || t > s.R_eff) continue;
    log_A = std::max(log_A, s.log_mass[i] + decay * std::log1p(std::max(t - r, 0.0)));
  }
  if (log_A == kNegInf) return kNegInf;
  double sup = kNegInf;
  for (double t = s.R_eff; t < 1e4 * s.R_eff; t *= 1.05)
    sup = std::max(sup, w.log_at(t) - decay * std::log1p(std::max(t - r, 0.0)));
  if (decay * 0.5 == w.k) sup = std::max(sup, w.sharp ? std::log(sharp_gamma(w.k2, 1e300)) : 0.0);
  return log_A + sup;
}

struct Bracket {
  double lower = kNegInf;
  double upper = kNegInf;
  double tail = kNegInf;
  bool vanishing = false;
  std::size_t samples = 0;
};

Bracket evaluate(const MeasureSymbol& mu, int k2, double shift, bool sharp, double r, double R, Exec exec,
                 double vanish_tol = 0.05) {
  if (k2 < 0) throw ValidationError("carleson: order must be nonnegative");
  const double k = 0.5 * k2;
  // Decay of the shifted measure against the required 2k.
  const double decay_full = 2.0 * declared_fc_order(mu) - 2.0 * shift;
  if (decay_full < k2 - 1e-12)
    throw TailNotCertified("declared decay " + std::to_string(decay_full) + " is below 2k = " +
                           std::to_string(k2));
  const Search s = sample(mu, shift, r, R, exec);
  const Weight w{k, sharp, k2};
  const double d = 1.5 * std::sqrt(2.0) * s.pitch;
  const double factor = sharp ? 0.0 : 2.0 * log_factorial(k);
  Bracket b;
  b.samples = s.points.size();
  double lower = kNegInf;
  double upper = kNegInf;
  const int annuli = static_cast<int>(std::ceil(s.R_eff)) + 1;
  std::vector<double> annulus(static_cast<std::size_t>(annuli), kNegInf);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const double t = std::abs(s.points[i]);
    if (s.log_mass[i] == kNegInf) continue;
    upper = std::max(upper, s.log_mass[i] + w.log_max_near(t, d));
    if (t > s.R_eff) continue;
    const double v = s.log_mass[i] + w.log_at(t);
    lower = std::max(lower, v);
    auto& a = annulus[static_cast<std::size_t>(std::min<int>(annuli - 1, static_cast<int>(t)))];
    a = std::max(a, s.log_mass[i] + k * std::log1p(t * t));
  }
  const bool compact = std::isfinite(support_radius(mu));
  if (!compact) {
    const double decay = std::isfinite(decay_full) ? decay_full : k2 + 2.0;
    b.tail = log_tail(s, w, decay, r);
    if (b.tail != kNegInf) b.tail += factor;
  }
  b.lower = lower == kNegInf ? kNegInf : lower + factor;
  b.upper = upper == kNegInf ? kNegInf : upper + kCoverLog + factor;
  b.upper = std::max(b.upper, b.tail);
  // Vanishing: last full annulus below tolerance and tail certified to 0.
  const double global = *std::max_element(annulus.begin(), annulus.end());
  const int last = static_cast<int>(std::floor(s.R_eff)) - 1;
  const double last_max = last >= 0 ? annulus[static_cast<std::size_t>(last)] : kNegInf;
  const bool small = global == kNegInf || last_max <= global + std::log(vanish_tol);
  b.vanishing = small && (compact || decay_full > k2 + 1e-12);
  return b;
}

LogReal as_log(double v) { return v == kNegInf ? LogReal{} : LogReal::from_log(v); }

CarlesonReport make_report(const MeasureSymbol& mu, int k2, double r, double R, bool sharp, Exec exec) {
  const Bracket plain = evaluate(mu, k2, 0.0, false, r, R, exec);
  const Bracket sh = evaluate(mu, k2, 0.0, true, r, R, exec);
  const Bracket& b = sharp ? sh : plain;
  CarlesonReport rep;
  rep.k2 = k2;
  rep.r = r;
  rep.R = R;
  rep.C_k = as_log(plain.lower);
  rep.C_tilde_k = as_log(sh.lower);
  rep.lower = as_log(b.lower);
  rep.upper = as_log(b.upper);
  rep.tail = as_log(b.tail);
  rep.vanishing = plain.vanishing;
  rep.varpi_bound = rep.upper;
  rep.samples = b.samples;
  return rep;
}

}  // namespace

double sharp_gamma(int k2, double modulus) { return std::exp(log_growth_factor(0.5 * k2, modulus)); }

double disk_mass(const MeasureSymbol& mu, Complex c, double r, double shift) {
  if (const auto* a = std::get_if<Atoms>(&mu.body)) {
    double m = 0.0;
    for (const Atom& at : a->atoms)
      if (inside(at.point, c, r)) m += std::abs(at.weight) * shift_weight(at.point, shift);
    return m;
  }
  if (const auto* lat = std::get_if<Lattice>(&mu.body)) {
    double m = 0.0;
    const int i0 = static_cast<int>(std::floor(c.real() - r));
    const int i1 = static_cast<int>(std::ceil(c.real() + r));
    const int j0 = static_cast<int>(std::floor(c.imag() - r));
    const int j1 = static_cast<int>(std::ceil(c.imag() + r));
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j) {
        const Complex n(i, j);
        if (!inside(n, c, r)) continue;
        m += std::abs(lat->weight.at_node(i, j)) * shift_weight(n, shift);
      }
    return m;
  }
  const auto& d = std::get<Density>(mu.body);
  if (d.radius > 0.0) {
    if (std::abs(c) > d.radius + r) return 0.0;
    if (std::abs(c) + r > d.radius)
      return clipped_disk_integral([&](Complex w) { return std::abs(d.field(w)) * shift_weight(w, shift); }, c, r,
                                   d.radius);
  }
  return disk_integral([&](Complex w) { return std::abs(d.field(w)) * shift_weight(w, shift); }, c, r);
}

CarlesonReport fc_constant(const MeasureSymbol& mu, int k2, double r, double R, Exec exec) {
  return make_report(mu, k2, r, R, false, exec);
}

CarlesonReport fc_constant_sharp(const MeasureSymbol& mu, int k2, double r, double R, Exec exec) {
  return make_report(mu, k2, r, R, true, exec);
}

RatioBracket equivalence_shift(const MeasureSymbol& mu, int k2, int p, double r, double R) {
  if (p < 0) throw ValidationError("equivalence_shift: p must be nonnegative");
  const double k = 0.5 * k2;
  const Bracket base = evaluate(mu, k2, 0.0, false, r, R, Exec::parallel);
  const Bracket shifted = evaluate(mu, 2 * p, k - p, false, r, R, Exec::parallel);
  const double norm = 2.0 * (log_factorial(k) - log_factorial(p));
  RatioBracket out;
  out.ratio = std::exp(shifted.lower - base.lower + norm);
  out.lower = std::exp(shifted.lower - base.upper + norm);
  out.upper = std::exp(shifted.upper - base.lower + norm);
  return out;
}

bool vanishing_check(const MeasureSymbol& mu, int k2, double r, double R, double tolerance) {
  return evaluate(mu, k2, 0.0, false, r, R, Exec::parallel, tolerance).vanishing;
}

LogReal form_norm_bound(const CoderivedSymbol& s, double r, double R) {
  if (s.alpha < 0 || s.beta < 0) throw ValidationError("form_norm_bound: negative order");
  const double k = 0.5 * (s.alpha + s.beta);
  const Bracket a = evaluate(s.base, 2 * s.alpha, k - s.alpha, false, r, R, Exec::parallel);
  const Bracket b = s.alpha == s.beta ? a : evaluate(s.base, 2 * s.beta, k - s.beta, false, r, R, Exec::parallel);
  if (a.upper == kNegInf || b.upper == kNegInf) return {};
  double v = 0.5 * (a.upper + b.upper);
  if (s.mode == WeightMode::omega) v -= std::log(kPi);
  return LogReal::from_log(v);
}

SeriesGateReport series_gate_report(const SeriesSymbol& s, double r, double R, double tolerance) {
  SeriesGateReport rep;
  rep.term_bounds.reserve(s.terms.size());
  for (const CoderivedSymbol& t : s.terms) rep.term_bounds.push_back(form_norm_bound(t, r, R));
  std::size_t idx = 0;
  for (const SeriesGroup& g : series_term_groups(s)) {
    LogReal sum;
    for (std::size_t i = 0; i < g.terms.size(); ++i) sum = log_add(sum, rep.term_bounds[idx++]);
    rep.group_j.push_back(g.j);
    rep.group_bounds.push_back(sum);
    rep.total = log_add(rep.total, sum);
  }
  const std::size_t n = rep.group_bounds.size();
  double ratio = 0.0;
  for (std::size_t i = n >= 4 ? n - 4 : 0; i + 1 < n; ++i) {
    const LogReal& a = rep.group_bounds[i];
    const LogReal& b = rep.group_bounds[i + 1];
    if (b.is_zero()) continue;
    ratio = a.is_zero() ? std::numeric_limits<double>::infinity() : std::max(ratio, std::exp(b.log_abs - a.log_abs));
  }
  rep.ratio = ratio;
  LogReal extrapolated;
  if (n > 0 && ratio > 0.0 && ratio < 1.0)
    extrapolated = rep.group_bounds.back() * LogReal::from_double(ratio / (1.0 - ratio));
  else if (ratio >= 1.0)
    extrapolated = LogReal::infinity();
  rep.tail_after.assign(n, LogReal{});
  LogReal acc = extrapolated;
  for (std::size_t i = n; i-- > 0;) {
    rep.tail_after[i] = acc;
    acc = log_add(acc, rep.group_bounds[i]);
  }
  const bool finite = rep.total.is_finite() && extrapolated.is_finite();
  rep.converged = finite && ratio < 1.0 &&
                  (extrapolated.is_zero() ||
                   extrapolated.log_abs <= rep.total.log_abs + std::log(tolerance));
  return rep;
}

SeriesGateReport series_gate(const SeriesSymbol& s, double r, double R, double tolerance) {
  SeriesGateReport rep = series_gate_report(s, r, R, tolerance);
  if (!rep.converged)
    throw SeriesDiverges("series norm gate failed: group ratio " + std::to_string(rep.ratio) +
                         ", total bound 10^" + std::to_string(rep.total.log10_abs()));
  return rep;
}

}  // namespace fock
