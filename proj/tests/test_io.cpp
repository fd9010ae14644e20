#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "spcfmcw/io.hpp"

using namespace spcfmcw;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("signal CSV round-trips bit-exactly") {
    ComplexBaseband sig;
    sig.sample_rate = 48000.0;
    sig.t0 = 0.125;
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 257; ++i) sig.samples.push_back({u(gen), u(gen)});
    const std::string path = temp_path("spcfmcw_sig.csv");
    write_signal_csv(path, sig);
    const auto back = read_signal_csv(path);
    REQUIRE(back.size() == sig.size());
    CHECK(back.sample_rate == sig.sample_rate);
    CHECK(back.t0 == sig.t0);
    for (std::size_t i = 0; i < sig.size(); ++i) CHECK(back.samples[i] == sig.samples[i]);
    CHECK(slurp(path).rfind("t,re,im\n", 0) == 0);
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".meta");
}

TEST_CASE("code files accept commas, newlines and comments") {
    const std::string path = temp_path("spcfmcw_code.txt");
    {
        std::ofstream out(path);
        out << "# header comment\n1, 0, 1\n0 1\n# trailing\n1\n";
    }
    const auto bits = load_code_file(path);
    CHECK(bits == std::vector<int>{1, 0, 1, 0, 1, 1});
    std::filesystem::remove(path);
}

TEST_CASE("code files reject non-binary tokens naming the line") {
    const std::string path = temp_path("spcfmcw_badcode.txt");
    {
        std::ofstream out(path);
        out << "1,0\n2\n";
    }
    CHECK_THROWS_WITH_AS(load_code_file(path), doctest::Contains("line 2"), std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("code file writer round-trips") {
    const std::string path = temp_path("spcfmcw_code_rt.txt");
    const std::vector<int> bits{0, 1, 1, 0, 1};
    write_code_file(path, bits);
    CHECK(load_code_file(path) == bits);
    std::filesystem::remove(path);
}

TEST_CASE("metrics ledger appends with a single header") {
    const std::string path = temp_path("spcfmcw_metrics.csv");
    std::filesystem::remove(path);
    append_metrics_csv(path, {{"psl", -94.5, "dB", "abc123", 7}});
    append_metrics_csv(path, {{"papr", 1.5, "ratio", "abc123", 7}});
    const std::string text = slurp(path);
    CHECK(text.rfind("name,value,unit,scenario_hash,seed\n", 0) == 0);
    CHECK(text.find("psl,-94.5,dB,abc123,7") != std::string::npos);
    CHECK(text.find("papr,1.5,ratio,abc123,7") != std::string::npos);
    CHECK(text.find("name,value", 10) == std::string::npos);  // header only once
    std::filesystem::remove(path);
}

TEST_CASE("format_double is round-trip exact") {
    for (double v : {0.1, 1.0 / 3.0, 3.315e9, -94.87105348383174, 1e-300}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("matrix CSV carries both axes") {
    const std::string path = temp_path("spcfmcw_matrix.csv");
    write_matrix_csv(path, {{1.0, 2.0}, {3.0, 4.0}}, {-1.0, 1.0}, {10.0, 20.0}, "v\\r");
    const std::string text = slurp(path);
    CHECK(text.rfind("v\\r,10,20\n", 0) == 0);
    CHECK(text.find("-1,1,2") != std::string::npos);
    CHECK(text.find("1,3,4") != std::string::npos);
    std::filesystem::remove(path);
}
