#include "spcfmcw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace spcfmcw {

namespace {

const char* kVersion = "1.0.0";

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-integer value '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

PhaseType parse_phase_type(const std::string& t) {
    if (t == "bpsk") return PhaseType::BPSK;
    if (t == "gaussian") return PhaseType::GAUSSIAN;
    if (t == "gmsk") return PhaseType::GMSK;
    throw ConfigError("config: unknown code.type '" + t + "'");
}

// FNV-1a over the manifest text; stable fingerprint for the metrics ledger.
std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

void ScenarioConfig::validate() const {
    try {
        chirp.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: chirp: ") + e.what());
    }
    const double k = chirp.k();
    if (code.type != "fmcw" && code.type != "bpsk" && code.type != "gaussian" &&
        code.type != "gmsk") {
        throw ConfigError("config: unknown code.type '" + code.type + "'");
    }
    if (code.type != "fmcw" && code.n_chips == 0) {
        throw ConfigError("config: code.n_chips must be >= 1");
    }
    try {
        receiver.validate(chirp.tx_rate);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: receiver: ") + e.what());
    }
    if (targets.empty() && !interferer.enabled) {
        throw ConfigError("config: no targets given (target.1.range = ...)");
    }
    const ReceiverConfig rc = receiver.with_defaults();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i].range < 0.0 || targets[i].range > rc.r_max(k)) {
            throw ConfigError("config: target." + std::to_string(i + 1) +
                              ".range outside [0, R_max]");
        }
    }
    if (frame.n_pulses == 0) throw ConfigError("config: frame.n_pulses must be >= 1");
    if (chain != ChainKind::FMCW && code.type == "fmcw") {
        throw ConfigError("config: chain requires a coded waveform but code.type is fmcw");
    }
}

ScenarioConfig parse_scenario(const std::string& text) {
    ScenarioConfig cfg;
    cfg.targets.clear();
    std::map<std::size_t, Target> target_map;
    bool chain_set = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "chirp.fc") cfg.chirp.f_c = to_double(key, value);
        else if (key == "chirp.T") cfg.chirp.T = to_double(key, value);
        else if (key == "chirp.B") cfg.chirp.B = to_double(key, value);
        else if (key == "chirp.tx_rate") cfg.chirp.tx_rate = to_double(key, value);
        else if (key == "code.type") cfg.code.type = value;
        else if (key == "code.n_chips") cfg.code.n_chips = to_u64(key, value);
        else if (key == "code.seed") cfg.code.seed = to_u64(key, value);
        else if (key == "code.file") cfg.code.file = value;
        else if (key == "code.bs_factor") cfg.code.bs_factor = to_double(key, value);
        else if (key == "code.modulation_scale") cfg.code.modulation_scale = to_double(key, value);
        else if (key == "receiver.f_cut") cfg.receiver.f_cut = to_double(key, value);
        else if (key == "receiver.f_s") cfg.receiver.f_s = to_double(key, value);
        else if (key == "receiver.f_b_max") cfg.receiver.f_b_max = to_double(key, value);
        else if (key == "receiver.window_db") cfg.receiver.window_sidelobe_db = to_double(key, value);
        else if (key == "frame.n_pulses") cfg.frame.n_pulses = to_u64(key, value);
        else if (key == "frame.pri") cfg.frame.pulse_repetition_interval = to_double(key, value);
        else if (key == "noise.snr_db") {
            cfg.snr_db = value == "inf" ? std::numeric_limits<double>::infinity()
                                        : to_double(key, value);
        } else if (key == "seed") cfg.seed = to_u64(key, value);
        else if (key == "chain") {
            chain_set = true;
            if (value == "proposed") cfg.chain = ChainKind::PROPOSED;
            else if (value == "legacy") cfg.chain = ChainKind::LEGACY;
            else if (value == "fmcw") cfg.chain = ChainKind::FMCW;
            else throw ConfigError("config: unknown chain '" + value + "'");
        } else if (key == "outputs") {
            cfg.outputs.clear();
            std::istringstream row(value);
            std::string tok;
            while (std::getline(row, tok, ',')) cfg.outputs.push_back(trim(tok));
        } else if (key.rfind("interferer.", 0) == 0) {
            cfg.interferer.enabled = true;
            const std::string sub = key.substr(11);
            if (sub == "delay") cfg.interferer.delay = to_double(key, value);
            else if (sub == "seed") cfg.interferer.seed = to_u64(key, value);
            else if (sub == "amplitude_db") cfg.interferer.amplitude_db = to_double(key, value);
            else if (sub == "sync_offset") cfg.interferer.sync_offset = to_double(key, value);
            else if (sub == "enabled") cfg.interferer.enabled = value == "true" || value == "1";
            else throw ConfigError("config: unknown key '" + key + "'");
        } else if (key.rfind("target.", 0) == 0) {
            const auto dot = key.find('.', 7);
            if (dot == std::string::npos) throw ConfigError("config: unknown key '" + key + "'");
            std::size_t idx = 0;
            try {
                idx = std::stoull(key.substr(7, dot - 7));
            } catch (const std::exception&) {
                throw ConfigError("config: bad target index in '" + key + "'");
            }
            const std::string sub = key.substr(dot + 1);
            Target& tgt = target_map[idx];
            if (sub == "range") tgt.range = to_double(key, value);
            else if (sub == "velocity") tgt.velocity = to_double(key, value);
            else if (sub == "amplitude_db") {
                tgt.amplitude = std::pow(10.0, to_double(key, value) / 20.0);
            } else throw ConfigError("config: unknown key '" + key + "'");
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    for (auto& [idx, tgt] : target_map) cfg.targets.push_back(tgt);
    if (!chain_set && cfg.code.type == "fmcw") cfg.chain = ChainKind::FMCW;
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::vector<std::string> preset_names() { return {"desk", "paper-sim", "table-1"}; }

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig cfg;
    cfg.targets.clear();
    if (name == "desk") {
        cfg.chirp = {3.315e9, 0.25e-3, 50e6, 200e6};
        cfg.receiver = {10e6, 0.0, 0.0, 100.0};
        cfg.code = {"gmsk", 64, std::nullopt, "", 2.0, 0.0};
        // beat frequency 1 MHz (on the 1/T grid), R/R_max = 0.2
        cfg.targets.push_back({749.481145, 0.0, cplx{1.0, 0.0}});
    } else if (name == "paper-sim") {
        cfg.chirp = {3.315e9, 1e-3, 200e6, 800e6};
        cfg.receiver = {40e6, 0.0, 0.0, 100.0};
        cfg.code = {"gmsk", 1024, std::nullopt, "", 2.0, 0.0};
        // beat frequency 4 MHz, R/R_max = 0.2
        cfg.targets.push_back({2997.92458, 0.0, cplx{1.0, 0.0}});
    } else if (name == "table-1") {
        cfg.chirp = {3.315e9, 1e-3, 40e6, 400e6};
        cfg.receiver = {40e6, 0.0, 0.0, 100.0};
        cfg.code = {"gmsk", 1024, std::nullopt, "", 2.0, 0.0};
        cfg.frame = {128, 0.0};
        cfg.targets.push_back({7494.81145, 0.0, cplx{1.0, 0.0}});  // f_b = 2 MHz
    } else {
        throw ConfigError("config: unknown preset '" + name + "' (try: desk, paper-sim, table-1)");
    }
    cfg.validate();
    return cfg;
}

PhaseCode resolve_code(const ScenarioConfig& cfg) {
    if (cfg.code.type == "fmcw") throw ConfigError("resolve_code: fmcw has no code");
    std::vector<int> bits;
    if (!cfg.code.file.empty()) {
        bits = load_code_file(cfg.code.file);
    } else {
        bits = random_code(cfg.code.n_chips, cfg.code.seed.value_or(cfg.seed));
    }
    return make_phase_code(std::move(bits), parse_phase_type(cfg.code.type), cfg.chirp.T,
                           cfg.code.bs_factor, cfg.code.modulation_scale);
}

namespace {

std::string build_manifest(const ScenarioConfig& cfg, const PhaseCode* code) {
    std::map<std::string, std::string> kv;
    kv["version"] = kVersion;
    kv["chirp.fc"] = format_double(cfg.chirp.f_c);
    kv["chirp.T"] = format_double(cfg.chirp.T);
    kv["chirp.B"] = format_double(cfg.chirp.B);
    kv["chirp.k"] = format_double(cfg.chirp.k());
    kv["chirp.tx_rate"] = format_double(cfg.chirp.tx_rate);
    kv["code.type"] = cfg.code.type;
    if (code) {
        kv["code.n_chips"] = std::to_string(code->n_chips());
        kv["code.T_c"] = format_double(code->T_c);
        kv["code.B_c"] = format_double(code->B_c);
        kv["code.B_s"] = format_double(code->B_s);
        kv["code.eta"] = format_double(code->eta);
        kv["code.modulation_scale"] = format_double(code->modulation_scale);
        kv["code.seed"] = std::to_string(cfg.code.seed.value_or(cfg.seed));
        if (!cfg.code.file.empty()) kv["code.file"] = cfg.code.file;
    }
    const ReceiverConfig rc = cfg.receiver.with_defaults();
    kv["receiver.f_cut"] = format_double(rc.f_cut);
    kv["receiver.f_s"] = format_double(rc.f_s);
    kv["receiver.f_b_max"] = format_double(rc.f_b_max);
    kv["receiver.tau_max"] = format_double(rc.tau_max(cfg.chirp.k()));
    kv["receiver.r_max"] = format_double(rc.r_max(cfg.chirp.k()));
    kv["receiver.window_db"] = format_double(rc.window_sidelobe_db);
    kv["frame.n_pulses"] = std::to_string(cfg.frame.n_pulses);
    kv["frame.pri"] = format_double(cfg.frame.pulse_repetition_interval > 0.0
                                        ? cfg.frame.pulse_repetition_interval
                                        : cfg.chirp.T);
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const std::string p = "target." + std::to_string(i + 1) + ".";
        kv[p + "range"] = format_double(cfg.targets[i].range);
        kv[p + "velocity"] = format_double(cfg.targets[i].velocity);
        kv[p + "amplitude_db"] =
            format_double(20.0 * std::log10(std::abs(cfg.targets[i].amplitude)));
    }
    if (cfg.interferer.enabled) {
        kv["interferer.delay"] = format_double(cfg.interferer.delay);
        kv["interferer.seed"] = std::to_string(cfg.interferer.seed);
        kv["interferer.amplitude_db"] = format_double(cfg.interferer.amplitude_db);
        kv["interferer.sync_offset"] = format_double(cfg.interferer.sync_offset);
    }
    kv["chain"] = cfg.chain == ChainKind::PROPOSED ? "proposed"
                 : cfg.chain == ChainKind::LEGACY  ? "legacy"
                                                   : "fmcw";
    kv["noise.snr_db"] = std::isinf(cfg.snr_db) ? "inf" : format_double(cfg.snr_db);
    kv["seed"] = std::to_string(cfg.seed);
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const ReceiverConfig rc = cfg.receiver.with_defaults();
    const double k = cfg.chirp.k();
    const bool coded = cfg.chain != ChainKind::FMCW;
    std::optional<PhaseCode> code;
    CodedEnvelope env;
    if (coded) {
        code = resolve_code(cfg);
        env = coded_envelope(*code, cfg.chirp.tx_rate);
        if (cfg.chain == ChainKind::PROPOSED) env = compensate_phase_lag(env, k);
    } else {
        env.signal.samples.assign(cfg.chirp.n_samples(), cplx{1.0, 0.0});
        env.signal.sample_rate = cfg.chirp.tx_rate;
    }
    std::optional<Interferer> intf;
    if (cfg.interferer.enabled) {
        Interferer i;
        if (coded) {
            PhaseCode icode = make_phase_code(
                random_code(code->n_chips(), cfg.interferer.seed), code->phase_type, cfg.chirp.T,
                cfg.code.bs_factor, cfg.code.modulation_scale);
            i.envelope = coded_envelope(icode, cfg.chirp.tx_rate);
            if (cfg.chain == ChainKind::PROPOSED) i.envelope = compensate_phase_lag(i.envelope, k);
        } else {
            i.envelope.signal.samples.assign(cfg.chirp.n_samples(), cplx{1.0, 0.0});
            i.envelope.signal.sample_rate = cfg.chirp.tx_rate;
        }
        i.delay = cfg.interferer.delay;
        i.amplitude = std::pow(10.0, cfg.interferer.amplitude_db / 20.0);
        i.sync_offset = cfg.interferer.sync_offset;
        intf = std::move(i);
    }
    RunResult res;
    res.transmit = pc_fmcw(cfg.chirp, env);
    const double pri =
        cfg.frame.pulse_repetition_interval > 0.0 ? cfg.frame.pulse_repetition_interval : cfg.chirp.T;
    for (std::size_t m = 0; m < cfg.frame.n_pulses; ++m) {
        ComplexBaseband tx = res.transmit;
        tx.t0 = static_cast<double>(m) * pri;
        ComplexBaseband rx = propagate(tx, cfg.targets, cfg.chirp);
        if (intf) rx = add_interferer(rx, *intf, cfg.chirp);
        if (!std::isinf(cfg.snr_db)) rx = add_awgn(rx, cfg.snr_db, cfg.seed + 1000003ull * m);
        res.decoded_pulses.push_back(
            receive_chain(rx, cfg.chirp, rc, coded ? code : std::optional<PhaseCode>{}));
    }
    res.profile = range_profile(res.decoded_pulses.front(), rc, k);
    if (cfg.frame.n_pulses > 1) res.map = range_doppler(res.decoded_pulses, rc, cfg.chirp);
    res.manifest = build_manifest(cfg, code ? &*code : nullptr);
    res.scenario_hash = fnv1a_hex(res.manifest);
    // Standard metrics.
    const std::vector<double> win = chebyshev_window(res.decoded_pulses.front().size(),
                                                     rc.window_sidelobe_db);
    const std::size_t hw = window_mainlobe_halfwidth(win, res.profile.magnitude_db.size());
    const std::uint64_t seed = cfg.code.seed.value_or(cfg.seed);
    res.metrics.push_back({"psl", psl(res.profile, hw), "dB", res.scenario_hash, seed});
    res.metrics.push_back({"papr", papr(res.transmit), "ratio", res.scenario_hash, seed});
    if (coded) {
        res.metrics.push_back(
            {"spreading_factor", spreading_factor(code->n_chips()), "dB", res.scenario_hash, seed});
    }
    if (!cfg.targets.empty()) {
        const double fb = k * cfg.targets.front().delay();
        const auto eps = residual_phase_error(res.decoded_pulses.front(), fb);
        res.metrics.push_back(
            {"max_residual_phase_error", max_abs(eps), "rad", res.scenario_hash, seed});
    }
    return res;
}

std::vector<std::string> write_products(const RunResult& result, const ScenarioConfig& cfg,
                                        const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto want = [&cfg](const std::string& name) {
        return std::find(cfg.outputs.begin(), cfg.outputs.end(), name) != cfg.outputs.end();
    };
    const std::string base = out_dir + "/";
    {
        std::ofstream m(base + "manifest.txt");
        if (!m) throw std::runtime_error("write_products: cannot open manifest.txt");
        m << result.manifest << "scenario_hash=" << result.scenario_hash << "\n";
        written.push_back(base + "manifest.txt");
    }
    if (want("profile")) {
        write_profile_csv(base + "range_profile.csv", result.profile.range_axis,
                          result.profile.magnitude_db, "range_m", "magnitude_db");
        written.push_back(base + "range_profile.csv");
    }
    if (want("map") && result.map) {
        write_matrix_csv(base + "range_doppler.csv", result.map->magnitude_db,
                         result.map->velocity_axis, result.map->range_axis, "velocity_mps\\range_m");
        written.push_back(base + "range_doppler.csv");
    }
    if (want("signal")) {
        write_signal_csv(base + "transmit.csv", result.transmit);
        written.push_back(base + "transmit.csv");
    }
    if (want("beat")) {
        write_signal_csv(base + "decoded_beat.csv", result.decoded_pulses.front());
        written.push_back(base + "decoded_beat.csv");
    }
    if (want("metrics")) {
        append_metrics_csv(base + "metrics.csv", result.metrics);
        written.push_back(base + "metrics.csv");
    }
    return written;
}

std::vector<MetricRow> sweep(const ScenarioConfig& base, const std::string& axis,
                             const std::vector<std::string>& values, unsigned jobs) {
    static const std::vector<std::string> kAxes = {"n_chips", "target_range_fraction", "doppler_hz",
                                                   "phase_type"};
    if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end()) {
        std::string msg = "sweep: unsupported axis '" + axis + "'; supported:";
        for (const auto& a : kAxes) msg += " " + a;
        throw ConfigError(msg);
    }
    struct Task {
        std::string value;
        std::string type;
    };
    std::vector<Task> tasks;
    const std::vector<std::string> types =
        axis == "phase_type" ? std::vector<std::string>{""}
                             : std::vector<std::string>{"bpsk", "gaussian", "gmsk"};
    for (const auto& v : values) {
        for (const auto& t : types) tasks.push_back({v, t});
    }
    std::vector<std::vector<MetricRow>> rows(tasks.size());
    std::mutex err_mutex;
    std::string first_error;
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < tasks.size(); i += step) {
            try {
                ScenarioConfig cfg = base;
                const std::string type = axis == "phase_type" ? tasks[i].value : tasks[i].type;
                cfg.code.type = type;
                if (type == "fmcw") cfg.chain = ChainKind::FMCW;
                if (axis == "n_chips") {
                    cfg.code.n_chips = to_u64("sweep value", tasks[i].value);
                } else if (axis == "target_range_fraction") {
                    const double frac = to_double("sweep value", tasks[i].value);
                    const ReceiverConfig rc = cfg.receiver.with_defaults();
                    if (cfg.targets.empty()) cfg.targets.push_back({});
                    cfg.targets.front().range = frac * rc.r_max(cfg.chirp.k());
                } else if (axis == "doppler_hz") {
                    const double fd = to_double("sweep value", tasks[i].value);
                    if (cfg.targets.empty()) cfg.targets.push_back({});
                    cfg.targets.front().velocity = fd * kSpeedOfLight / (2.0 * cfg.chirp.f_c);
                }
                RunResult r = run_scenario(cfg);
                const std::string tag = axis == "phase_type"
                                            ? axis + "=" + tasks[i].value
                                            : axis + "=" + tasks[i].value + ",type=" + type;
                for (auto& row : r.metrics) row.name = tag + ":" + row.name;
                rows[i] = std::move(r.metrics);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, tasks.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(work, w, n_threads);
    for (auto& th : pool) th.join();
    if (!first_error.empty()) throw std::runtime_error("sweep: " + first_error);
    std::vector<MetricRow> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

MatchedFilterComparison compare_matched_filter(const ScenarioConfig& cfg) {
    cfg.validate();
    if (cfg.targets.empty()) throw ConfigError("compare_matched_filter: needs a target");
    MatchedFilterComparison out;
    RunResult r = run_scenario(cfg);
    out.chain_profile = r.profile;
    ComplexBaseband rx = propagate(r.transmit, cfg.targets, cfg.chirp);
    out.matched_profile = matched_filter_profile(rx, r.transmit, cfg.chirp);
    return out;
}

}  // namespace spcfmcw
