#include <benchmark/benchmark.h>

#include "sdf/action_path.hpp"
#include "sdf/choice.hpp"
#include "sdf/generators.hpp"
#include "sdf/sigma.hpp"

using namespace sdf;

namespace {

PathOutcomes timing_on(int times) {
    std::vector<Time> t;
    for (int k = 0; k < times; ++k) t.emplace_back(k);
    return timing_outcomes(ScenarioSpace::discrete({"1", "2"}), TimeAxis(t), {"a", "b"});
}

void BM_VerifySimple(benchmark::State& state) {
    Sdf s = build_simple();
    for (auto _ : state) benchmark::DoNotOptimize(verify_sdf(s));
}
BENCHMARK(BM_VerifySimple);

void BM_EnumerateEis(benchmark::State& state) {
    Sdf s = build_action_path_sdf(timing_example()).sdf;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_eis(s));
}
BENCHMARK(BM_EnumerateEis);

// Axiom 3e dominates once the exhaustive mode kicks in.
void BM_VerifyTiming(benchmark::State& state) {
    BuildOptions b;
    b.verify = false;
    Sdf s = build_action_path_sdf(timing_on(static_cast<int>(state.range(0))), b).sdf;
    VerifyOptions o;
    o.max_x = static_cast<std::size_t>(state.range(1));
    state.counters["moves"] = static_cast<double>(s.move_count());
    for (auto _ : state) benchmark::DoNotOptimize(verify_sdf(s, o));
}
BENCHMARK(BM_VerifyTiming)->Args({2, 0})->Args({3, 0})->Args({3, 12})->Args({4, 0});

void BM_Apw(benchmark::State& state) {
    PathOutcomes po = timing_on(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_apw(po));
}
BENCHMARK(BM_Apw)->Arg(2)->Arg(3)->Arg(4);

void BM_BuildActionPath(benchmark::State& state) {
    PathOutcomes po = timing_on(static_cast<int>(state.range(0)));
    BuildOptions b;
    b.verify = false;
    for (auto _ : state) benchmark::DoNotOptimize(build_action_path_sdf(po, b));
}
BENCHMARK(BM_BuildActionPath)->Arg(2)->Arg(3)->Arg(4);

void BM_Predecessors(benchmark::State& state) {
    Sdf s = build_action_path_sdf(timing_on(4)).sdf;
    IndexSet c(s.forest().outcome_count());
    for (std::size_t w = 0; w < c.universe(); w += 2) c.set(w);
    for (auto _ : state) benchmark::DoNotOptimize(predecessors(s, c));
}
BENCHMARK(BM_Predecessors);

void BM_AgentRcs(benchmark::State& state) {
    ActionPathSdf ap = build_action_path_sdf(timing_example());
    for (auto _ : state) benchmark::DoNotOptimize(agent_rcs(ap, 0));
}
BENCHMARK(BM_AgentRcs);

void BM_OwnRepresentation(benchmark::State& state) {
    SetForest f = build_action_path_sdf(timing_on(3)).sdf.forest();
    for (auto _ : state) benchmark::DoNotOptimize(verify_own_representation(f));
}
BENCHMARK(BM_OwnRepresentation);

}  // namespace

BENCHMARK_MAIN();
