#include <benchmark/benchmark.h>

#include "spcfmcw/scenario.hpp"

namespace {

using namespace spcfmcw;

ScenarioConfig small_config(const std::string& type, std::size_t n_chips) {
    ScenarioConfig cfg = preset("desk");
    cfg.code.type = type;
    cfg.code.n_chips = n_chips;
    return cfg;
}

void BM_CodedEnvelope(benchmark::State& state) {
    const auto cfg = small_config("gmsk", static_cast<std::size_t>(state.range(0)));
    const PhaseCode code = resolve_code(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coded_envelope(code, cfg.chirp.tx_rate));
    }
}
BENCHMARK(BM_CodedEnvelope)->Arg(64)->Arg(256)->Arg(1024);

void BM_CompensatePhaseLag(benchmark::State& state) {
    const auto cfg = small_config("gmsk", 256);
    const PhaseCode code = resolve_code(cfg);
    const CodedEnvelope env = coded_envelope(code, cfg.chirp.tx_rate);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compensate_phase_lag(env, cfg.chirp.k()));
    }
}
BENCHMARK(BM_CompensatePhaseLag);

void BM_ReceiveChain(benchmark::State& state) {
    const auto cfg = small_config("gmsk", 256);
    const PhaseCode code = resolve_code(cfg);
    CodedEnvelope env = coded_envelope(code, cfg.chirp.tx_rate);
    env = compensate_phase_lag(env, cfg.chirp.k());
    const ComplexBaseband tx = pc_fmcw(cfg.chirp, env);
    const ComplexBaseband rx = propagate(tx, cfg.targets, cfg.chirp);
    const ReceiverConfig rc = cfg.receiver.with_defaults();
    for (auto _ : state) {
        benchmark::DoNotOptimize(receive_chain(rx, cfg.chirp, rc, code));
    }
}
BENCHMARK(BM_ReceiveChain);

void BM_FullScenario(benchmark::State& state) {
    const auto cfg = small_config("gmsk", static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(cfg));
    }
}
BENCHMARK(BM_FullScenario)->Arg(64)->Arg(1024);

void BM_Fft(benchmark::State& state) {
    std::vector<cplx> x(static_cast<std::size_t>(state.range(0)), cplx{1.0, 0.5});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fft(x));
    }
}
BENCHMARK(BM_Fft)->Arg(1 << 12)->Arg(50000)->Arg(1 << 18);

}  // namespace

BENCHMARK_MAIN();
