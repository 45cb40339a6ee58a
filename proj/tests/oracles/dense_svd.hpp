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

// Small-N operator-norm oracle: largest singular value by dense
// bidiagonalization (divide and conquer SVD).

#pragma once

#include <Eigen/SVD>

#include "fock/assembly.hpp"

namespace fock::oracle {

inline double dense_norm(const OperatorMatrix& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.matrix());
  return svd.singularValues()(0);
}

}  // namespace fock::oracle
