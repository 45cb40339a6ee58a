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

// Integer form of the point-distribution action at the origin.
//
// For T e_k = c e_{q-p+k}, the table stores pi * sqrt(k! (q-p+k)!) * c, which
// is the integer (-1)^{q-k} p! q! / (p-k)!.

#pragma once

#include <array>
#include <cstdint>

namespace fock::oracle {

struct ActionEntry {
  int p;
  int q;
  int k;
  std::int64_t value;
};

// Generated from exact integer arithmetic for p, q <= 4.
inline constexpr std::array<ActionEntry, 55> kActionTable{{
    {0, 0, 0, 1}, {0, 1, 0, -1}, {0, 2, 0, 2}, {0, 3, 0, -6}, {0, 4, 0, 24},
    {1, 0, 1, -1}, {1, 1, 0, -1}, {1, 1, 1, 1}, {1, 2, 0, 2}, {1, 2, 1, -2},
    {1, 3, 0, -6}, {1, 3, 1, 6}, {1, 4, 0, 24}, {1, 4, 1, -24}, {2, 0, 2, 2},
    {2, 1, 1, 2}, {2, 1, 2, -2}, {2, 2, 0, 2}, {2, 2, 1, -4}, {2, 2, 2, 4},
    {2, 3, 0, -6}, {2, 3, 1, 12}, {2, 3, 2, -12}, {2, 4, 0, 24}, {2, 4, 1, -48},
    {2, 4, 2, 48}, {3, 0, 3, -6}, {3, 1, 2, -6}, {3, 1, 3, 6}, {3, 2, 1, -6},
    {3, 2, 2, 12}, {3, 2, 3, -12}, {3, 3, 0, -6}, {3, 3, 1, 18}, {3, 3, 2, -36},
    {3, 3, 3, 36}, {3, 4, 0, 24}, {3, 4, 1, -72}, {3, 4, 2, 144}, {3, 4, 3, -144},
    {4, 0, 4, 24}, {4, 1, 3, 24}, {4, 1, 4, -24}, {4, 2, 2, 24}, {4, 2, 3, -48},
    {4, 2, 4, 48}, {4, 3, 1, 24}, {4, 3, 2, -72}, {4, 3, 3, 144}, {4, 3, 4, -144},
    {4, 4, 0, 24}, {4, 4, 1, -96}, {4, 4, 2, 288}, {4, 4, 3, -576}, {4, 4, 4, 576},
}};

inline constexpr std::int64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace fock::oracle
