#include <benchmark/benchmark.h>

#include <random>

#include "tmom/moments.hpp"
#include "tmom/sos.hpp"

using namespace tmom;

namespace {

LaurentPoly random_poly(std::mt19937& gen, int deg, int terms) {
    std::uniform_int_distribution<int> e(0, deg);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    LaurentPoly p;
    for (int t = 0; t < terms; ++t) p.set({e(gen), e(gen)}, {c(gen), c(gen)});
    return p;
}

void bm_poly_multiply(benchmark::State& state) {
    std::mt19937 gen(1u);
    const LaurentPoly a = random_poly(gen, static_cast<int>(state.range(0)), 24);
    const LaurentPoly b = random_poly(gen, static_cast<int>(state.range(0)), 24);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_poly_multiply)->Arg(4)->Arg(8)->Arg(16);

void bm_jacobi_eigh(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 gen(2u);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const Coeff v{c(gen), i == j ? 0.0 : c(gen)};
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_hermitian(m));
}
BENCHMARK(bm_jacobi_eigh)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void bm_sos_feasibility(benchmark::State& state) {
    LaurentPoly target;
    target.set({2, 2}, 1.0);
    target.set({1, 1}, -2.0);
    target.set({0, 0}, 1.0);
    const std::vector<MonomialIndex> basis{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(sos_feasibility(target, basis, 200, 1e-8));
}
BENCHMARK(bm_sos_feasibility);

void bm_fejer_riesz(benchmark::State& state) {
    const int deg = static_cast<int>(state.range(0));
    std::mt19937 gen(3u);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    TrigPoly q(1);
    for (int i = 0; i <= deg; ++i) q.set({i}, {c(gen), c(gen)});
    const TrigPoly p = mod_squared(q);
    for (auto _ : state) benchmark::DoNotOptimize(fejer_riesz(p, 1e-9));
}
BENCHMARK(bm_fejer_riesz)->Arg(4)->Arg(8)->Arg(16);

void bm_kernel_psd(benchmark::State& state) {
    MomentData gauss;
    gauss.semigroup = IndexClass::n();
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n) {
            double v = 0.0;
            if (m == n) {
                v = 1.0;
                for (int i = 2; i <= m; ++i) v *= i;
            }
            gauss.values[{m, n}] = v;
        }
    std::vector<MonomialIndex> f;
    for (int m = 0; m <= 6; ++m) f.push_back({m, m});
    for (auto _ : state)
        benchmark::DoNotOptimize(kernel_psd_check(gauss, f, KernelMode::NPlus, default_kernel_tol()));
}
BENCHMARK(bm_kernel_psd);

}  // namespace

BENCHMARK_MAIN();
