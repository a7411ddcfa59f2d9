#include <benchmark/benchmark.h>

#include "syndyn/correction.hpp"
#include "syndyn/stability.hpp"
#include "syndyn/suppression.hpp"

using namespace syndyn;

static void BM_ClassifySteane(benchmark::State &state) {
    const auto &code = builtin_code("steane");
    auto model = ErrorModel::from_types(7, "xz");
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(code, model, 2));
    }
}
BENCHMARK(BM_ClassifySteane);

static void BM_BuildGraphSteane(benchmark::State &state) {
    const auto &code = builtin_code("steane");
    auto model = ErrorModel::from_types(7, "xz");
    auto table = classify(code, model, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_graph(code, model, table));
    }
}
BENCHMARK(BM_BuildGraphSteane);

static void BM_MarkovRate(benchmark::State &state) {
    auto j = SpectralDensity::lorentz_drude(0.1, 3);
    double w = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(markov_rate(j, 1, w));
        w += 1e-9;
    }
}
BENCHMARK(BM_MarkovRate);

static void BM_TimedepRateOhmic(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(timedep_rate_ohmic(0.1, 3, 1, 4, 0.5, RateSign::Minus));
    }
}
BENCHMARK(BM_TimedepRateOhmic);

static void BM_LeakageRatesEgpQuadrature(benchmark::State &state) {
    auto corr = exponential_correlation(1, 3);
    double alpha = double(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(leakage_rates(corr, EgpModulation{alpha, 1}, 5));
    }
}
BENCHMARK(BM_LeakageRatesEgpQuadrature)->Arg(1)->Arg(10)->Arg(100);

static void BM_IntegrateSteane(benchmark::State &state) {
    const auto &code = builtin_code("steane");
    auto model = ErrorModel::from_types(7, "xz");
    auto table = classify(code, model, 2);
    auto graph = build_graph(code, model, table);
    CorrectionConfig c;
    c.graph = &graph;
    c.alpha = 1;
    c.eps_bar.constant = 0.05;
    c.bath = SpectralDensity::lorentz_drude(0.1, 3);
    RateMatrix m(c);
    IntegrateOptions o;
    o.method = state.range(0) ? IntegrationMethod::MatrixExponential : IntegrationMethod::RK4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(m, codespace_state(m), 100, o));
    }
}
BENCHMARK(BM_IntegrateSteane)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_LogHittingTime(benchmark::State &state) {
    auto c = LumpedChain::constant(size_t(state.range(0)), 4802.0 * 100, std::log(100.0), 3,
                                   SpectralDensity::lorentz_drude(0.1, 200), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_hitting_time(c));
    }
}
BENCHMARK(BM_LogHittingTime)->Arg(20)->Arg(40)->Arg(200);

static void BM_MonteCarloOracle(benchmark::State &state) {
    auto c = LumpedChain::constant(3, 12, 0.8, 1, SpectralDensity::lorentz_drude(0.1, 3), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_hitting_oracle(c, 10000, 1, 1));
    }
}
BENCHMARK(BM_MonteCarloOracle)->Unit(benchmark::kMillisecond);

static void BM_StabilityScan(benchmark::State &state) {
    ScanRequest r;
    r.scaling = BarrierScaling::Linear;
    r.alphas = {3};
    r.temperatures = {0.5, 1, 1.5};
    for (int i = 0; i <= 30; i++) {
        r.n_l.push_back(std::pow(10.0, i / 10.0));
    }
    r.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan(r));
    }
}
BENCHMARK(BM_StabilityScan)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
