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

#include <cstdint>
#include <vector>

#include "fock/assembly.hpp"
#include "fock/symbol.hpp"

namespace fock {

/// Entrywise sum; the smaller operand is zero-padded to the larger degree.
OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix scale(const OperatorMatrix& m, Complex c);

/// Matrix product a * b. Exact only when the range of b stays inside the
/// truncation (finite-rank and diagonal families); otherwise the tail of the
/// intermediate range is dropped. Degrees must agree.
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix adjoint(const OperatorMatrix& m);

struct NormOptions {
  double tolerance = 1e-10;
  int max_iterations = 200000;
  int restarts = 3;
  std::uint64_t seed = 0x5eedf0c5ULL;
  int squarings = 30;         // start vectors are preconditioned by (M^H M)^(2^squarings)
  long squaring_limit = 512;  // largest dimension for which squaring is used
};

/// Largest singular value by power iteration on M^H M. Each run starts from a
/// seeded random vector pushed through repeated squarings of M^H M and stops
/// when the residual |M^H M v - theta v| falls below tolerance * theta; the
/// maximum over the restarts is returned. Throws NoConvergence otherwise.
double op_norm(const OperatorMatrix& m, const NormOptions& opt = {});

/// J e_k = (-1)^k e_k.
OperatorMatrix reflection_matrix(std::size_t degree);

/// Form G(f, g) = ∫ f(-z) conj(g(z)) dν assembled by the polar rule.
OperatorMatrix reflection_form_matrix(std::size_t degree, const QuadratureSpec& spec = {});

/// Composition f -> f(a z + b):
///   entries(j, k) = sqrt(j!/k!) C(k, j) a^j b^{k-j},  j <= k.
/// Throws UnboundedComposition unless |a| < 1, or |a| = 1 and b = 0.
OperatorMatrix composition_matrix(Complex a, Complex b, std::size_t degree);

/// Compression by the projection onto span{e_0..e_j}; the degree is kept.
OperatorMatrix truncate(const OperatorMatrix& m, std::size_t j);

struct DecompositionResult {
  std::size_t degree = 0;
  std::vector<PointTerm> terms;  // sum coeff * Psi_{p,q}, coeff = entries(q, p)
  PointDistribution point_form;  // the same operator as a point distribution at 0
  Symbol symbol() const { return psi_sum(terms); }
};

/// Rank-one expansion of a truncated matrix. The point form uses
///   Psi_{p,q} = (-1)^{p+q} / sqrt(p! q!) * sum_t pi C(p,t) C(q,t) t! Phi_{p-t,q-t}.
DecompositionResult decompose_to_symbol(const OperatorMatrix& m);

/// Point-distribution terms of c * Psi_{p,q} at the origin.
std::vector<PointTerm> psi_point_terms(int p, int q, Complex c = 1.0);

/// ||P_{e_n, phi} - S_m|| for m = 0..m_max, phi = sum_k (k!)^{-k} e_k, k <= N.
std::vector<double> rank_one_approximation_experiment(std::size_t n, std::size_t m_max, std::size_t degree);

/// Exact value (sum_{m < k <= N} (k!)^{-2k})^{1/2} of the same distances.
double rank_one_tail(std::size_t m, std::size_t degree);

}  // namespace fock
