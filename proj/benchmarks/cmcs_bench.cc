// Copyright 2026 The splp-cmcs Authors
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

#include <benchmark/benchmark.h>

#include "splp/cmcs.h"
#include "splp/instance.h"
#include "splp/solution.h"

namespace splp {
namespace {

// Fixed number of component applications of a preset on a class-a instance.
void BM_Preset(benchmark::State& state, const char* name) {
  const int m = static_cast<int>(state.range(0));
  const Problem problem(generate_kg_instance(KgClass::kA, m, m, false, 11));
  const Configuration config = preset(name);
  Budget budget{1e12, ClockKind::kWork, 1000};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    const auto initial = random_initial_sites(m, rng);
    benchmark::DoNotOptimize(run_cmcs(config, problem, initial, budget, rng).best_value);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK_CAPTURE(BM_Preset, paper2, "paper-2")->Arg(250)->Arg(750)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Preset, paper3, "paper-3")->Arg(250)->Arg(750)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace splp

BENCHMARK_MAIN();
