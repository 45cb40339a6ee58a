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

#include "cli_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "fock/expr.hpp"

namespace fock::cli {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string read_symbol_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open symbol file '" + path + "'");
  std::string text;
  std::string line;
  while (std::getline(in, line)) {
    // Blank comments and line breaks in place so offsets match the file.
    if (const auto hash = line.find('#'); hash != std::string::npos)
      std::fill(line.begin() + static_cast<std::ptrdiff_t>(hash), line.end(), ' ');
    text += line;
    text += ' ';
  }
  return text;
}

std::string matrix_csv(const OperatorMatrix& m) {
  std::string out = "m,n,re,im\n";
  for (std::size_t r = 0; r <= m.degree(); ++r)
    for (std::size_t c = 0; c <= m.degree(); ++c) {
      const Complex v = m(r, c);
      if (v == Complex{}) continue;
      out += std::to_string(r) + ',' + std::to_string(c) + ',' + g17(v.real()) + ',' + g17(v.imag()) + '\n';
    }
  return out;
}

Json matrix_json(const OperatorMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r <= m.degree(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c <= m.degree(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return Json{{"degree", m.degree()}, {"entries", std::move(rows)}};
}

OperatorMatrix read_matrix_csv(const std::string& path, long degree) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("m,n,re,im", 0) != 0)
    throw UsageError(path + ": expected header 'm,n,re,im'");
  std::vector<std::tuple<std::size_t, std::size_t, Complex>> entries;
  std::size_t top = 0;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    long r = -1;
    long c = -1;
    double re = 0.0;
    double im = 0.0;
    char s1 = 0, s2 = 0, s3 = 0;
    if (!(ss >> r >> s1 >> c >> s2 >> re >> s3 >> im) || s1 != ',' || s2 != ',' || s3 != ',' || r < 0 || c < 0)
      throw UsageError(path + ":" + std::to_string(lineno) + ": malformed entry");
    entries.emplace_back(static_cast<std::size_t>(r), static_cast<std::size_t>(c), Complex(re, im));
    top = std::max({top, static_cast<std::size_t>(r), static_cast<std::size_t>(c)});
  }
  if (degree >= 0 && top > static_cast<std::size_t>(degree))
    throw UsageError(path + ": entry index exceeds --degree");
  OperatorMatrix m(degree >= 0 ? static_cast<std::size_t>(degree) : top);
  for (const auto& [r, c, v] : entries) m(r, c) = v;
  return m;
}

Json log_json(const LogReal& v) {
  if (v.is_zero()) return Json{{"log10_magnitude", nullptr}, {"sign", 0}};
  if (!v.is_finite()) return Json{{"log10_magnitude", "inf"}, {"sign", v.sign}};
  return Json{{"log10_magnitude", v.log10_abs()}, {"sign", v.sign}};
}

Json complex_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex parse_complex(const std::string& text) {
  if (const auto comma = text.find(','); comma != std::string::npos) {
    try {
      return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
      throw UsageError("cannot read complex number '" + text + "'");
    }
  }
  try {
    const expr::Expression e = expr::parse_expression(text);
    return e.evaluate(expr::Point{});
  } catch (const Error& e) {
    throw UsageError("cannot read complex number '" + text + "': " + e.what());
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& path, std::size_t offset) {
  std::ifstream in(path);
  std::size_t line = 1;
  std::size_t col = 1;
  char ch = 0;
  for (std::size_t i = 0; i < offset && in.get(ch); ++i) {
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

}  // namespace fock::cli
