#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spcfmcw/scenario.hpp"

namespace {

using namespace spcfmcw;

ScenarioConfig resolve_config(const std::string& config_path, const std::string& preset_name,
                              std::optional<std::uint64_t> seed) {
    ScenarioConfig cfg;
    if (!config_path.empty() && !preset_name.empty()) {
        throw ConfigError("config: give either --config or --preset, not both");
    }
    if (!config_path.empty()) {
        cfg = load_scenario(config_path);
    } else if (!preset_name.empty()) {
        cfg = preset(preset_name);
    } else {
        throw ConfigError("config: --config PATH or --preset NAME is required");
    }
    if (seed) {
        cfg.seed = *seed;
        cfg.validate();
    }
    return cfg;
}

int cmd_generate(const ScenarioConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    ComplexBaseband tx;
    if (cfg.chain == ChainKind::FMCW) {
        tx = fmcw_chirp(cfg.chirp);
    } else {
        const PhaseCode code = resolve_code(cfg);
        CodedEnvelope env = coded_envelope(code, cfg.chirp.tx_rate);
        if (cfg.chain == ChainKind::PROPOSED) env = compensate_phase_lag(env, cfg.chirp.k());
        tx = pc_fmcw(cfg.chirp, env);
        write_code_file(out_dir + "/code.txt", code.bits);
        std::cout << out_dir << "/code.txt\n";
    }
    write_signal_csv(out_dir + "/waveform.csv", tx);
    std::cout << out_dir << "/waveform.csv\n";
    return 0;
}

int cmd_run(const ScenarioConfig& cfg, const std::string& out_dir) {
    const RunResult res = run_scenario(cfg);
    for (const auto& f : write_products(res, cfg, out_dir)) std::cout << f << "\n";
    return 0;
}

int cmd_sweep(const ScenarioConfig& cfg, const std::string& out_dir, const std::string& axis,
              const std::vector<std::string>& values, unsigned jobs) {
    if (values.empty()) throw ConfigError("sweep: at least one --value is required");
    const auto rows = sweep(cfg, axis, values, jobs);
    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/sweep_" + axis + ".csv";
    append_metrics_csv(path, rows);
    std::cout << path << "\n";
    return 0;
}

int cmd_compare_mf(const ScenarioConfig& cfg, const std::string& out_dir) {
    const MatchedFilterComparison cmp = compare_matched_filter(cfg);
    std::filesystem::create_directories(out_dir);
    write_profile_csv(out_dir + "/chain_profile.csv", cmp.chain_profile.range_axis,
                      cmp.chain_profile.magnitude_db, "range_m", "magnitude_db");
    write_profile_csv(out_dir + "/matched_profile.csv", cmp.matched_profile.range_axis,
                      cmp.matched_profile.magnitude_db, "range_m", "magnitude_db");
    std::cout << out_dir << "/chain_profile.csv\n" << out_dir << "/matched_profile.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smoothed phase-coded FMCW waveform simulator"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir = "out", axis;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> values;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", config_path, "scenario config file (key=value)");
        sub->add_option("--preset", preset_name, "built-in preset name");
        sub->add_option("--seed", seed, "override the scenario seed");
        if (needs_out) sub->add_option("--out", out_dir, "output directory");
    };

    CLI::App* gen = app.add_subcommand("generate", "write the transmit waveform as CSV");
    add_common(gen, true);
    CLI::App* run = app.add_subcommand("run", "run one scenario and write its products");
    add_common(run, true);
    CLI::App* swp = app.add_subcommand("sweep", "sweep one axis, aggregate metrics");
    add_common(swp, true);
    swp->add_option("--axis", axis,
                    "sweep axis: n_chips | target_range_fraction | doppler_hz | phase_type")
        ->required();
    swp->add_option("--value", values, "axis values (repeatable)");
    swp->add_option("--jobs", jobs, "worker threads");
    CLI::App* cmp = app.add_subcommand("compare-mf", "chain profile vs full-band matched filter");
    add_common(cmp, true);
    CLI::App* pre = app.add_subcommand("presets", "list built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pre->parsed()) {
            for (const auto& n : spcfmcw::preset_names()) std::cout << n << "\n";
            return 0;
        }
        const spcfmcw::ScenarioConfig cfg = resolve_config(config_path, preset_name, seed);
        if (gen->parsed()) return cmd_generate(cfg, out_dir);
        if (run->parsed()) return cmd_run(cfg, out_dir);
        if (swp->parsed()) return cmd_sweep(cfg, out_dir, axis, values, jobs);
        if (cmp->parsed()) return cmd_compare_mf(cfg, out_dir);
    } catch (const spcfmcw::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
