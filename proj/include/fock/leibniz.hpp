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

#include "fock/common.hpp"

namespace fock {

/// d_w^p d_wbar^q [ omega(w) e_n(w) conj(e_m(w)) ] at w = z0, with w and wbar
/// treated as independent variables. Exact double Leibniz expansion of
/// u^n v^m e^{-uv} / (pi sqrt(n! m!)); every term is formed in log scale.
Complex leibniz_point_derivative(int p, int q, int n, int m, Complex z0);

/// Closed form of the point-distribution action at the origin:
///   T e_k = c(p,q,k) e_{q-p+k},
///   c(p,q,k) = (-1)^{q-k} / pi * p! q! / ( sqrt(k! (q-p+k)!) (p-k)! )
/// for max(0, p-q) <= k <= p, and T e_k = 0 otherwise.
double origin_action_coefficient(int p, int q, int k);

/// pi * sqrt(k! (q-p+k)!) * c(p,q,k), an integer: (-1)^{q-k} p! q! / (p-k)!.
/// Returned as a double, exact for p, q <= 10.
double origin_action_integer(int p, int q, int k);

}  // namespace fock
