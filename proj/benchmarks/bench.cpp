#include <benchmark/benchmark.h>

#include "urel/datagen.hpp"
#include "urel/exec.hpp"
#include "urel/optimizer.hpp"
#include "urel/parser.hpp"
#include "urel/planner.hpp"

using namespace urel;

namespace {

UDatabase benchDb(double s) {
    GenParams p;
    p.s = s;
    p.x = 0.05;
    return generate(p);
}

void BM_Merge(benchmark::State& state) {
    UDatabase db = benchDb(0.002);
    // pick the relation with the most partitions so the merge does real work
    const LogicalRelation* rel = nullptr;
    for (const auto& [name, r] : db.relations)
        if (!rel || r.partitions.size() > rel->partitions.size()) rel = &r;
    for (auto _ : state) {
        URelation m = rel->partitions[0].rel;
        for (std::size_t i = 1; i < rel->partitions.size(); ++i)
            m = opMerge(m, rel->partitions[i].rel);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_Merge);

void BM_Join(benchmark::State& state) {
    UDatabase db = benchDb(0.002);
    LogicalPtr q = parseQuery(sampleQueries()[1].second);
    PlanPtr plan = optimize(planQuery(
        q->kind == LogicalNode::Kind::Poss ? q->children[0] : q, db));
    for (auto _ : state) {
        URelation r = evaluate(plan, db);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_Join);

void BM_QueryEndToEnd(benchmark::State& state) {
    UDatabase db = benchDb(0.001 * (double)state.range(0));
    for (auto _ : state) {
        LogicalPtr q = parseQuery(sampleQueries()[0].second);
        PlainRelation r = possAnswers(q, db);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_QueryEndToEnd)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
