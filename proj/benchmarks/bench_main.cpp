#include <benchmark/benchmark.h>

#include <random>

#include "nilcps/complexity.hpp"
#include "nilcps/config.hpp"

using namespace nilcps;

namespace {

SchemeSpec scheme(const char* name) {
    return load_scheme(std::string(NILCPS_DATA_DIR) + "/schemes/" + name + ".json");
}

void BM_HeisenbergMultiply(benchmark::State& st) {
    auto h = GroupSpec::heisenberg();
    GroupPoint x{ExactScalar::quadratic(2, 1, 3), ExactScalar::quadratic(2, -2, 1), ExactScalar::quadratic(2, 5, -7)};
    GroupPoint y{ExactScalar::quadratic(2, Rational(1, 3), 1), ExactScalar::quadratic(2, 4, 0),
                 ExactScalar::quadratic(2, 0, 2)};
    for (auto _ : st) benchmark::DoNotOptimize(bch_multiply(h, x, y));
}
BENCHMARK(BM_HeisenbergMultiply);

void BM_HeisenbergSlab(benchmark::State& st) {
    auto s = scheme("heisenberg");
    Rational r(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(slab(s, r).size());
}
BENCHMARK(BM_HeisenbergSlab)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FibonacciCensus(benchmark::State& st) {
    auto s = scheme("fibonacci");
    Rational r(st.range(0));
    auto sl = slab(s, r);
    for (auto _ : st) benchmark::DoNotOptimize(complexity_census(s, sl, 16 * r).p_hat);
}
BENCHMARK(BM_FibonacciCensus)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CubicCensus(benchmark::State& st) {
    auto s = scheme("cubic-plane");
    Rational r(st.range(0));
    auto sl = slab(s, r);
    for (auto _ : st) benchmark::DoNotOptimize(complexity_census(s, sl, 64 * r).p_hat);
}
BENCHMARK(BM_CubicCensus)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

Arrangement random_lines(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Arrangement arr;
    arr.dim = 2;
    while (int(arr.size()) < n) {
        long a = long(rng() % 41) - 20, b = long(rng() % 41) - 20;
        if (a == 0 && b == 0) continue;
        HyperplaneH P({ExactScalar(a), ExactScalar(b)}, ExactScalar(Rational(long(rng() % 201) - 100, 7)));
        bool dup = false;
        for (const auto& Q : arr.planes) dup = dup || Q.canonical() == P.canonical();
        if (!dup) arr.planes.push_back(P);
    }
    return arr;
}

void BM_RegionsPlanar(benchmark::State& st) {
    auto arr = random_lines(int(st.range(0)), 5);
    auto B = Polytope::box({ExactScalar(-20), ExactScalar(-20)}, {ExactScalar(20), ExactScalar(20)});
    for (auto _ : st) benchmark::DoNotOptimize(count_regions_in_B(arr, B));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_RegionsPlanar)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond)->Complexity();

void BM_CharPoly(benchmark::State& st) {
    auto arr = random_lines(int(st.range(0)), 6);
    auto B = Polytope::box({ExactScalar(-20), ExactScalar(-20)}, {ExactScalar(20), ExactScalar(20)});
    for (auto _ : st) benchmark::DoNotOptimize(characteristic_polynomial_wrt_B(arr, B));
}
BENCHMARK(BM_CharPoly)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_WindowParameters(benchmark::State& st) {
    auto s = scheme("heisenberg");
    for (auto _ : st) benchmark::DoNotOptimize(window_parameters(s).O_W);
}
BENCHMARK(BM_WindowParameters)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
