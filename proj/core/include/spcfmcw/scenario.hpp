#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spcfmcw/io.hpp"
#include "spcfmcw/metrics.hpp"
#include "spcfmcw/receiver.hpp"

namespace spcfmcw {

// Configuration problems (unknown key, inconsistent values) vs runtime/stage
// failures; the CLI maps these to distinct exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ChainKind { PROPOSED, LEGACY, FMCW };

struct CodeSpec {
    std::string type = "gmsk";  // fmcw | bpsk | gaussian | gmsk
    std::size_t n_chips = 64;
    std::optional<std::uint64_t> seed;  // falls back to the scenario seed
    std::string file;                   // optional code file; overrides seed
    double bs_factor = 2.0;
    double modulation_scale = 0.0;  // 0 selects the 1/T_c default
};

struct InterfererSpec {
    bool enabled = false;
    double delay = 0.0;
    std::uint64_t seed = 1;
    double amplitude_db = 0.0;
    double sync_offset = 0.0;
};

struct ScenarioConfig {
    ChirpParams chirp{3.315e9, 0.25e-3, 50e6, 200e6};
    CodeSpec code;
    ReceiverConfig receiver{10e6, 0.0, 0.0, 100.0};
    FrameParams frame{1, 0.0};
    std::vector<Target> targets;
    InterfererSpec interferer;
    ChainKind chain = ChainKind::PROPOSED;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 42;
    std::vector<std::string> outputs{"profile", "metrics"};

    void validate() const;  // throws ConfigError naming the offending key
};

// Flat key=value text with dotted sections; '#' starts a comment.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

struct RunResult {
    std::vector<ComplexBaseband> decoded_pulses;
    RangeProfile profile;                    // first pulse
    std::optional<RangeDopplerMap> map;      // when n_pulses > 1
    ComplexBaseband transmit;                // transmitted waveform (first pulse)
    std::vector<MetricRow> metrics;
    std::string manifest;                    // resolved parameters, sorted keys
    std::string scenario_hash;
};

RunResult run_scenario(const ScenarioConfig& cfg);

// Writes the products requested in cfg.outputs plus manifest.txt; returns the
// list of files written.
std::vector<std::string> write_products(const RunResult& result, const ScenarioConfig& cfg,
                                        const std::string& out_dir);

// Parameter sweep; rows ordered by (value, phase type) regardless of jobs.
std::vector<MetricRow> sweep(const ScenarioConfig& base, const std::string& axis,
                             const std::vector<std::string>& values, unsigned jobs);

struct MatchedFilterComparison {
    RangeProfile chain_profile;
    RangeProfile matched_profile;
};

MatchedFilterComparison compare_matched_filter(const ScenarioConfig& cfg);

// Resolves the code specification into a PhaseCode on the scenario's grid.
PhaseCode resolve_code(const ScenarioConfig& cfg);

}  // namespace spcfmcw
