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

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "fock/assembly.hpp"
#include "fock/carleson.hpp"
#include "fock/symbol.hpp"

namespace {

using fock::Exec;

fock::Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_WeightedGram(benchmark::State& state) {
  const auto degree = static_cast<Eigen::Index>(state.range(0));
  const Eigen::Index nodes = 96 * 256;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd basis(nodes, degree + 1);
  for (Eigen::Index i = 0; i < basis.size(); ++i) basis.data()[i] = {g(rng), g(rng)};
  std::vector<fock::Complex> c(static_cast<std::size_t>(nodes));
  for (auto& w : c) w = {g(rng), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(fock::kernels::weighted_gram(basis, basis, c, exec_of(state)));
}
BENCHMARK(BM_WeightedGram)->ArgsProduct({{16, 32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_AssembleDensity(benchmark::State& state) {
  const fock::Symbol s = fock::parse_symbol("density(z*exp(-abs2(z)))");
  fock::AssemblyOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(fock::assemble(s, static_cast<std::size_t>(state.range(0)), opt));
}
BENCHMARK(BM_AssembleDensity)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CarlesonGrid(benchmark::State& state) {
  const fock::Symbol s = fock::parse_symbol("density((1+abs2(z))^(-2))");
  const auto& mu = std::get<fock::MeasureSymbol>(s.v);
  for (auto _ : state)
    benchmark::DoNotOptimize(fock::fc_constant(mu, 2, fock::kDefaultCarlesonRadius,
                                               static_cast<double>(state.range(0)), exec_of(state)));
}
BENCHMARK(BM_CarlesonGrid)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
