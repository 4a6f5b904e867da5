#include <benchmark/benchmark.h>

#include <random>

#include "specshift/constructions.hpp"
#include "specshift/matrix_oracle.hpp"
#include "specshift/phase_shift.hpp"
#include "specshift/transforms.hpp"

using namespace specshift;

namespace {

AtomicMeasure dense_measure(int n) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> wd(0.1, 1.0);
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i)
        atoms.push_back({double(i + 1) / (n + 1), wd(rng)});
    return make_measure(std::move(atoms));
}

PhaseShift dense_shift(int n) {
    std::vector<Interval> ivs;
    for (int i = 0; i < n; ++i) {
        double l = double(2 * i) / (2 * n);
        ivs.push_back({l, l + 0.4 / n});
    }
    return exact_shift(+1, std::move(ivs));
}

void BM_perturb_spectrum(benchmark::State& state) {
    AtomicMeasure m = dense_measure(static_cast<int>(state.range(0)));
    OracleModel model = measure_to_model(m);
    for (auto _ : state)
        benchmark::DoNotOptimize(perturb_spectrum(model, {1.0}, 4096));
}
BENCHMARK(BM_perturb_spectrum)->Arg(64)->Arg(256)->Arg(512);

void BM_pair_from_shift(benchmark::State& state) {
    PhaseShift u = dense_shift(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pair_from_shift(u, 1.0));
}
BENCHMARK(BM_pair_from_shift)->Arg(64)->Arg(512)->Arg(4096);

void BM_exp_K_shift(benchmark::State& state) {
    PhaseShift u = dense_shift(static_cast<int>(state.range(0)));
    Complex z{0.37, 0.21};
    for (auto _ : state) benchmark::DoNotOptimize(exp_K_shift(u, z));
}
BENCHMARK(BM_exp_K_shift)->Arg(64)->Arg(1024)->Arg(4096);

void BM_atom_criterion(benchmark::State& state) {
    PhaseShift u = dense_shift(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(atom_criterion_mu(u, u.intervals[0].left));
}
BENCHMARK(BM_atom_criterion)->Arg(64)->Arg(1024);

void BM_classify_sweep(benchmark::State& state) {
    CantorTree tree = cantor_build(default_cantor_spec(
        static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            classify_lambda_sweep(tree, tree.spec.depth, {2.0}));
}
BENCHMARK(BM_classify_sweep)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
