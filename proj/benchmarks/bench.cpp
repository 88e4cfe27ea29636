#include "ibl/dibl.hpp"
#include "ibl/green.hpp"
#include "ibl/homology.hpp"
#include "ibl/models.hpp"
#include "ibl/ribbon.hpp"

#include <benchmark/benchmark.h>

using namespace ibl;

namespace {

Cochain dense(const CyclicStructure& s, int weight)
{
    Cochain c;
    c.weight_bound = kInfiniteWeight;
    int i = 1;
    for (const auto& w : s.words().canonical_words(weight))
        c.values[w] = i++ % 5 - 2;
    std::erase_if(c.values, [](const auto& x) { return x.second == 0; });
    return c;
}

void bm_q210(benchmark::State& st)
{
    auto s = build_cpn(2).structure;
    Cochain a = dense(s, int(st.range(0))), b = dense(s, int(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(q210(s, a, b));
}
BENCHMARK(bm_q210)->Arg(2)->Arg(3)->Arg(4);

void bm_homology(benchmark::State& st)
{
    auto s = build_cpn(2).structure;
    DualOperator b = [s](const Word& u) { return cyclic_b(s, u); };
    for (auto _ : st)
        benchmark::DoNotOptimize(graded_homology(s.words(), b, int(st.range(0))));
}
BENCHMARK(bm_homology)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void bm_enumerate(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(enumerate_graphs(int(st.range(0)), 1, int(st.range(1)), int(st.range(0)) + 2));
}
BENCHMARK(bm_enumerate)->Args({2, 0})->Args({3, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);

void bm_green(benchmark::State& st)
{
    auto s = random_cyclic_complex(8, 1);
    for (auto _ : st)
        benchmark::DoNotOptimize(green_pipeline(s));
}
BENCHMARK(bm_green)->Unit(benchmark::kMillisecond);

void bm_pushforward(benchmark::State& st)
{
    auto s = shifted_structure(classical_heisenberg(), "heisenberg");
    auto sp = harmonic_splitting(s);
    auto K = schwartz_kernel(s, green_pipeline(s));
    for (auto _ : st)
        benchmark::DoNotOptimize(pushforward_mc(s, K, sp, int(st.range(0)), 0, 1));
}
BENCHMARK(bm_pushforward)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
