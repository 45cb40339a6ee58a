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

#include "fock/core.hpp"
#include "fock/quadrature.hpp"
#include "fock/symbol.hpp"

namespace fock {

/// Discretization of W dmu as sum_i c_i delta_{z_i}.
///
/// When `gaussian_in_weights` is true (densities) the c_i already carry the
/// factor e^{-|z_i|^2}, folded in by the Laguerre weights. Otherwise (atoms,
/// lattices) the caller supplies it, normally through
/// weighted_basis_derivatives, so that far points do not overflow.
struct MeasureNodes {
  std::vector<Complex> z;
  std::vector<Complex> c;
  bool gaussian_in_weights = false;
};

/// `max_degree` bounds the polynomial degree of the integrands to be paired
/// with the measure; it fixes the lattice cutoff. Throws TailNotSummable if
/// a lattice weight decays slower than declared, ValidationError if it is not
/// finite at some node.
MeasureNodes measure_nodes(const MeasureSymbol& mu, WeightMode mode, const QuadratureSpec& spec,
                           std::size_t max_degree);

/// ∫ f^(alpha) conj(g^(beta)) W dmu with W = e^{-|z|^2} (plain) or
/// e^{-|z|^2}/pi (omega). Densities are integrated by the polar rule with a
/// doubling check; atoms and lattices are summed directly.
Complex measure_form_integral(const MeasureSymbol& mu, int alpha, int beta, const FockVector& f,
                              const FockVector& g, WeightMode mode, const QuadratureSpec& spec = {});

/// Largest k for which the measure is k-FC by its declaration: +inf for
/// compact support or Gaussian decay, -p/2 for a density with
/// |h| <= C (1+|z|)^p, decay/2 for a lattice.
double declared_fc_order(const MeasureSymbol& mu);

/// Lattice half-width L such that the sum over max(|n1|,|n2|) > L of
/// s^k e^{-s} / k! (s = |n|^2, k <= max_degree) is below 1e-18.
int lattice_cutoff(std::size_t max_degree);

}  // namespace fock
