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

// File formats of the command-line tool.

#pragma once

#include <string>

#include "fock/assembly.hpp"
#include "json.hpp"

namespace fock::cli {

using Json = nlohmann::ordered_json;

/// Thrown for bad flags, missing files and malformed inputs (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symbol document: DSL text, `#` starts a comment that runs to the end of
/// the line, line breaks are insignificant. Comments and line breaks become
/// blanks, so offsets into the result are offsets into the file.
std::string read_symbol_file(const std::string& path);

/// Sparse triplets with header "m,n,re,im", 17 significant digits.
std::string matrix_csv(const OperatorMatrix& m);
/// {"degree": N, "entries": [[[re, im], ...], ...]} with entries[m][n].
Json matrix_json(const OperatorMatrix& m);
/// Reads the CSV form. The degree is the largest index unless given.
OperatorMatrix read_matrix_csv(const std::string& path, long degree = -1);

/// {"log10_magnitude": x, "sign": s}; zero has magnitude null and sign 0.
Json log_json(const LogReal& v);
/// {"re": x, "im": y}.
Json complex_json(Complex c);

/// Parses "x", "x,y" or "x+yi" into a complex number.
Complex parse_complex(const std::string& text);

/// 1-based line and column of a byte offset in a file.
std::pair<std::size_t, std::size_t> line_column(const std::string& path, std::size_t offset);

/// Writes `text` to `path`, or to standard output when `path` is empty or "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace fock::cli
