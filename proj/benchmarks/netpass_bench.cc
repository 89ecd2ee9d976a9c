/*
 * Copyright 2026 The netpass Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "netpass/dqstamp.h"
#include "netpass/netcase.h"
#include "netpass/passcheck.h"
#include "netpass/passivate.h"
#include "netpass/polarmodels.h"
#include "netpass/powerflow.h"

namespace netpass {
namespace {

const NetworkCase& NineBus() {
  static const NetworkCase net =
      LoadCase(std::string(NETPASS_FIXTURE_DIR) + "/ieee9.case");
  return net;
}

void BM_ParseCase(benchmark::State& state) {
  const std::string text = SerializeCase(NineBus());
  for (auto _ : state) benchmark::DoNotOptimize(ParseCase(text));
}
BENCHMARK(BM_ParseCase);

void BM_AssembleYdq(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(AssembleYdq(NineBus()));
}
BENCHMARK(BM_AssembleYdq);

void BM_SolvePowerflow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(SolvePowerflow(NineBus()));
}
BENCHMARK(BM_SolvePowerflow);

void BM_JacobianEigenvalues(benchmark::State& state) {
  const OperatingPoint op = SolvePowerflow(NineBus());
  for (auto _ : state) {
    const JacobianLF j = BuildJlfAnalytic(NineBus(), op);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j.Symmetrized());
    benchmark::DoNotOptimize(es.eigenvalues());
  }
}
BENCHMARK(BM_JacobianEigenvalues);

void BM_StateEigenvalues(benchmark::State& state) {
  const OperatingPoint op = SolvePowerflow(NineBus());
  const StateSpace jdf = BuildJdf(BuildJofS(AssembleYdq(NineBus()), op), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(StateEigenvalues(jdf.a));
}
BENCHMARK(BM_StateEigenvalues);

void BM_SweepYdq(benchmark::State& state) {
  const FrequencyResponse model(AssembleYdq(NineBus()));
  SweepGrid grid;
  grid.points_per_decade = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SweepPsd(model, grid));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(grid.Frequencies().size()));
}
BENCHMARK(BM_SweepYdq)->Arg(5)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_ClassifyModel(benchmark::State& state) {
  const auto model = static_cast<ModelKind>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ClassifyModel(NineBus(), {}, model, Analysis::kWideband));
  }
}
BENCHMARK(BM_ClassifyModel)
    ->DenseRange(0, 3)
    ->Unit(benchmark::kMillisecond);

void BM_MinUniformKqv(benchmark::State& state) {
  const JacobianLF j = BuildJlfAnalytic(NineBus(), SolvePowerflow(NineBus()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MinUniformKqv(j, {1, 2, 3, 5, 6, 8}));
  }
}
BENCHMARK(BM_MinUniformKqv);

void BM_SimulateDissipation(benchmark::State& state) {
  const StateSpace ss = AssembleYdq(NineBus());
  std::mt19937_64 rng(1);
  const Multisine u = Multisine::Random(ss.num_inputs(), 3, 1.0, 5e3, 0.1, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateDissipation(ss, u, 0.1));
  }
}
BENCHMARK(BM_SimulateDissipation)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace netpass

BENCHMARK_MAIN();
