#include "qsteer/analysis.hpp"
#include "qsteer/montecarlo.hpp"
#include "qsteer/oracle.hpp"

#include <benchmark/benchmark.h>

namespace {

qsteer::ExperimentConfig replica_config(std::uint64_t events) {
    qsteer::HonestAlice alice;
    alice.heralding = 0.6175;
    return qsteer::ExperimentConfig::make(qsteer::werner_state(0.9678), qsteer::make_mub_triad(),
                                          alice, qsteer::BobApparatus::ideal(), events, 1234);
}

void BM_SimulateAndAnalyze(benchmark::State& state) {
    const auto config = replica_config(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        const auto tables = qsteer::simulate_experiment(config);
        qsteer::ReportOptions options;
        options.w = 1.0115;
        options.epsilon = 0.0134;
        benchmark::DoNotOptimize(qsteer::make_report(tables, options));
    }
}
BENCHMARK(BM_SimulateAndAnalyze)->Arg(1000)->Arg(1000000);

void BM_BootstrapSigma(benchmark::State& state) {
    const auto tables = qsteer::simulate_experiment(replica_config(1000000));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qsteer::bootstrap_poisson_sigma(
            tables, qsteer::Estimator::steering, static_cast<int>(state.range(0)), 99));
    }
}
BENCHMARK(BM_BootstrapSigma)->Arg(200)->Arg(1000);

void BM_SphereSearch(benchmark::State& state) {
    const auto geometry = qsteer::worst_case_directions(3, 0.0134);
    const auto set = qsteer::MeasurementSet::make(geometry.directions);
    const auto asym = qsteer::DetectorAsymmetry::from_ratio(1.0115);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qsteer::lhs_max_over_sphere(set, asym, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_SphereSearch)->Arg(10000)->Arg(100000);

void BM_RandomLhsSweep(benchmark::State& state) {
    const auto set = qsteer::make_mub_triad();
    const auto asym = qsteer::DetectorAsymmetry::from_ratio(1.0115);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qsteer::random_lhs_sweep(set, asym, 1.0, static_cast<int>(state.range(0)), 5));
    }
}
BENCHMARK(BM_RandomLhsSweep)->Arg(1000);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
