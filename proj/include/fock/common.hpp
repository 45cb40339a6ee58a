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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace fock {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path; `parallel` uses OpenMP and must produce bit-identical results.
enum class Exec { serial, parallel };

/// Positive-or-signed real stored as (sign, natural log of magnitude).
/// Factorial and Gaussian growth overflow doubles long before the quantities
/// of interest stop being meaningful, so every such value travels in this form.
struct LogReal {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;  // -1, 0, +1

  static LogReal from_double(double x) {
    if (x == 0.0) return {};
    return {std::log(std::abs(x)), x > 0 ? 1 : -1};
  }
  static LogReal from_log(double log_abs, int sign = 1) {
    if (!(log_abs > -std::numeric_limits<double>::infinity())) return {};
    return {log_abs, sign};
  }
  static LogReal infinity() { return {std::numeric_limits<double>::infinity(), 1}; }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  double log10_abs() const { return log_abs / std::numbers::ln10; }
  bool is_finite() const { return sign == 0 || std::isfinite(log_abs); }
  bool is_zero() const { return sign == 0; }

  friend LogReal operator*(LogReal a, LogReal b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }
  friend bool operator<(LogReal a, LogReal b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    return a.sign > 0 ? a.log_abs < b.log_abs : a.log_abs > b.log_abs;
  }
  friend bool operator<=(LogReal a, LogReal b) { return !(b < a); }
};

/// Sum of nonnegative log-scaled values (log-sum-exp).
inline LogReal log_add(LogReal a, LogReal b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.sign < 0 || b.sign < 0) throw std::invalid_argument("log_add: negative operand");
  const double hi = std::max(a.log_abs, b.log_abs);
  if (std::isinf(hi)) return LogReal::infinity();
  const double lo = std::min(a.log_abs, b.log_abs);
  return {hi + std::log1p(std::exp(lo - hi)), 1};
}

inline double log_factorial(double k) { return std::lgamma(k + 1.0); }

// Error taxonomy. Domain errors (everything except ParseError/ValidationError
// raised on malformed input) map to CLI exit code 1.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, const std::string& message)
      : Error("parse error at " + std::to_string(position) + ": " + message +
              (expected.empty() ? std::string{} : " (expected " + expected + ")")),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class TailNotSummable : public Error {
 public:
  using Error::Error;
};

class TailNotCertified : public Error {
 public:
  using Error::Error;
};

class SeriesDiverges : public Error {
 public:
  using Error::Error;
};

class UnboundedComposition : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace fock
