#include <benchmark/benchmark.h>

#include "pcw/compound.hpp"
#include "pcw/constants.hpp"
#include "pcw/heuristic.hpp"
#include "pcw/numerics.hpp"
#include "pcw/slab_optics.hpp"

namespace {

const double kTheta60 = pcw::constants::pi / 3.0;

pcw::heuristic::DesignProblem reference_problem() {
    return {238.0, 925.0, 160.0, pcw::slab_optics::MaterialModel::gaas(), kTheta60};
}

void BM_FresnelCS(benchmark::State &state) {
    const double u = state.range(0) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcw::numerics::fresnel_cs(u));
    }
}
BENCHMARK(BM_FresnelCS)->Arg(5)->Arg(15)->Arg(30);

void BM_DesignRadius(benchmark::State &state) {
    const auto problem = reference_problem();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcw::heuristic::design_radius(problem));
    }
}
BENCHMARK(BM_DesignRadius);

void BM_DesignRadiusWarmStart(benchmark::State &state) {
    const auto problem = reference_problem();
    const double r = pcw::heuristic::design_radius(problem).spec.r_nm;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcw::heuristic::design_radius(problem, r));
    }
}
BENCHMARK(BM_DesignRadiusWarmStart);

void BM_PeakWavelength(benchmark::State &state) {
    const auto d = pcw::heuristic::design_radius(reference_problem());
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcw::heuristic::peak_wavelength(d.spec, {845.0, 1005.0}));
    }
}
BENCHMARK(BM_PeakWavelength);

void BM_Perturbation(benchmark::State &state) {
    const auto cd = pcw::compound::build_compound(
        233.0, 238.0, 925.0, 925.0, 160.0, pcw::slab_optics::MaterialModel::gaas(), kTheta60);
    pcw::compound::PerturbationConfig cfg;
    cfg.n_runs = static_cast<int>(state.range(0));
    cfg.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcw::compound::run_perturbation(cd, cfg));
    }
}
BENCHMARK(BM_Perturbation)->Arg(10)->Arg(100);

} // namespace

BENCHMARK_MAIN();
