#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "spcfmcw/scenario.hpp"

using namespace spcfmcw;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ScenarioConfig tiny() {
    ScenarioConfig cfg = preset("desk");
    cfg.code.n_chips = 16;
    return cfg;
}

}  // namespace

TEST_CASE("parse_scenario reads dotted keys, comments and targets") {
    const ScenarioConfig cfg = parse_scenario(
        "# comment line\n"
        "chirp.fc = 1e9\n"
        "chirp.T = 0.25e-3\n"
        "chirp.B = 50e6   # inline comment\n"
        "chirp.tx_rate = 200e6\n"
        "code.type = bpsk\n"
        "code.n_chips = 32\n"
        "receiver.f_cut = 10e6\n"
        "target.1.range = 100\n"
        "target.1.velocity = -3.5\n"
        "target.2.range = 200\n"
        "noise.snr_db = 20\n"
        "seed = 9\n");
    CHECK(cfg.chirp.f_c == 1e9);
    CHECK(cfg.code.type == "bpsk");
    CHECK(cfg.code.n_chips == 32);
    REQUIRE(cfg.targets.size() == 2);
    CHECK(cfg.targets[0].velocity == -3.5);
    CHECK(cfg.targets[1].range == 200.0);
    CHECK(cfg.snr_db == 20.0);
    CHECK(cfg.seed == 9);
}

TEST_CASE("config errors name the offending key") {
    const std::string base =
        "chirp.T = 0.25e-3\nchirp.B = 50e6\nchirp.tx_rate = 200e6\n"
        "receiver.f_cut = 10e6\ntarget.1.range = 100\n";
    CHECK_THROWS_WITH_AS(parse_scenario(base + "chirp.slope = 1\n"),
                         doctest::Contains("chirp.slope"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario(base + "code.n_chips = twelve\n"),
                         doctest::Contains("code.n_chips"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("chirp.T = 0.25e-3\nchirp.B = 50e6\n"
                                   "chirp.tx_rate = 200e6\nreceiver.f_cut = 10e6\n"),
                    ConfigError);  // no targets
    CHECK_THROWS_AS(parse_scenario(base + "chain = turbo\n"), ConfigError);
}

TEST_CASE("presets resolve to the documented scales") {
    const auto names = preset_names();
    CHECK(names == std::vector<std::string>{"desk", "paper-sim", "table-1"});
    const ScenarioConfig paper = preset("paper-sim");
    CHECK(paper.chirp.f_c == 3.315e9);
    CHECK(paper.chirp.T == 1e-3);
    CHECK(paper.chirp.B == 200e6);
    CHECK(paper.receiver.f_cut == 40e6);
    // 40 MHz over 1 ms: 40000 range cells per chirp
    CHECK(paper.chirp.T * paper.receiver.with_defaults().f_s == doctest::Approx(40000.0));
    const ScenarioConfig t1 = preset("table-1");
    CHECK(t1.chirp.B == 40e6);
    CHECK(t1.code.n_chips == 1024);
    CHECK(t1.frame.n_pulses == 128);
    const auto code = resolve_code(t1);
    CHECK(code.T_c == doctest::Approx(1e-3 / 1024.0));
    CHECK(code.B_s == doctest::Approx(2.048e6));
    CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("run_scenario emits metrics and a sorted manifest") {
    const auto res = run_scenario(tiny());
    CHECK(!res.metrics.empty());
    CHECK(res.scenario_hash.size() == 16);
    CHECK(res.manifest.find("chain=proposed") != std::string::npos);
    CHECK(res.manifest.find("receiver.f_b_max=5000000") != std::string::npos);  // filled default
    // every metric row carries the run's hash
    for (const auto& row : res.metrics) CHECK(row.scenario_hash == res.scenario_hash);
}

TEST_CASE("identical config and seed give byte-identical products") {
    namespace fs = std::filesystem;
    const ScenarioConfig cfg = tiny();
    const std::string d1 = (fs::temp_directory_path() / "spcfmcw_run_a").string();
    const std::string d2 = (fs::temp_directory_path() / "spcfmcw_run_b").string();
    fs::remove_all(d1);
    fs::remove_all(d2);
    const auto f1 = write_products(run_scenario(cfg), cfg, d1);
    const auto f2 = write_products(run_scenario(cfg), cfg, d2);
    REQUIRE(f1.size() == f2.size());
    for (std::size_t i = 0; i < f1.size(); ++i) {
        CHECK(slurp(f1[i]) == slurp(f2[i]));
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("sweep validates its axis and orders rows deterministically") {
    CHECK_THROWS_WITH_AS(sweep(tiny(), "bogus", {"1"}, 2), doctest::Contains("n_chips"),
                         ConfigError);
    const auto rows1 = sweep(tiny(), "n_chips", {"16", "32"}, 1);
    const auto rows4 = sweep(tiny(), "n_chips", {"16", "32"}, 4);
    REQUIRE(rows1.size() == rows4.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].name == rows4[i].name);
        CHECK(rows1[i].value == rows4[i].value);
    }
}

TEST_CASE("matched-filter comparison places both peaks at the target") {
    const auto cmp = compare_matched_filter(tiny());
    const double want = preset("desk").targets.front().range;
    const auto& cp = cmp.chain_profile;
    const auto& mp = cmp.matched_profile;
    CHECK(cp.range_axis[cp.mainlobe_bin] == doctest::Approx(want).epsilon(1e-6));
    CHECK(mp.range_axis[mp.mainlobe_bin] == doctest::Approx(want).epsilon(1e-3));
}
