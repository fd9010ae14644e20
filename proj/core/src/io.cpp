#include "spcfmcw/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spcfmcw {

std::string format_double(double v) {
    char buf[32];
    // 17 significant digits round-trips any double exactly.
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_signal_csv(const std::string& path, const ComplexBaseband& sig) {
    sig.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_signal_csv: cannot open " + path);
    out << "t,re,im\n";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const double t = sig.t0 + static_cast<double>(i) / sig.sample_rate;
        out << format_double(t) << ',' << format_double(sig.samples[i].real()) << ','
            << format_double(sig.samples[i].imag()) << '\n';
    }
    std::ofstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("write_signal_csv: cannot open " + path + ".meta");
    meta << "sample_rate=" << format_double(sig.sample_rate) << '\n';
    meta << "t0=" << format_double(sig.t0) << '\n';
}

ComplexBaseband read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_signal_csv: cannot open " + path);
    std::ifstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("read_signal_csv: missing sidecar " + path + ".meta");
    ComplexBaseband sig;
    std::string line;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const double val = std::stod(line.substr(eq + 1));
        if (key == "sample_rate") sig.sample_rate = val;
        else if (key == "t0") sig.t0 = val;
    }
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(row, tok, ',')) throw std::runtime_error("read_signal_csv: short row");
            vals[i] = std::stod(tok);
        }
        sig.samples.emplace_back(vals[1], vals[2]);
    }
    sig.validate();
    return sig;
}

std::vector<int> load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_code_file: cannot open " + path);
    std::vector<int> bits;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string tok;
        while (std::getline(row, tok, ',')) {
            // also accept whitespace-separated tokens inside a field
            std::istringstream ws(tok);
            std::string t;
            while (ws >> t) {
                if (t == "0") bits.push_back(0);
                else if (t == "1") bits.push_back(1);
                else throw std::runtime_error("load_code_file: non-binary token '" + t +
                                              "' at line " + std::to_string(lineno));
            }
        }
    }
    if (bits.empty()) throw std::runtime_error("load_code_file: no code bits in " + path);
    return bits;
}

void write_code_file(const std::string& path, const std::vector<int>& bits) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_code_file: cannot open " + path);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out << bits[i];
        out << (i + 1 == bits.size() ? '\n' : ',');
    }
}

void append_metrics_csv(const std::string& path, const std::vector<MetricRow>& rows) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("append_metrics_csv: cannot open " + path);
    if (fresh) out << "name,value,unit,scenario_hash,seed\n";
    for (const auto& r : rows) {
        out << r.name << ',' << format_double(r.value) << ',' << r.unit << ',' << r.scenario_hash
            << ',' << r.seed << '\n';
    }
}

void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& m,
                      const std::vector<double>& row_axis, const std::vector<double>& col_axis,
                      const std::string& corner_label) {
    if (m.size() != row_axis.size()) throw std::invalid_argument("write_matrix_csv: row axis mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_csv: cannot open " + path);
    out << corner_label;
    for (double c : col_axis) out << ',' << format_double(c);
    out << '\n';
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (m[r].size() != col_axis.size())
            throw std::invalid_argument("write_matrix_csv: column axis mismatch");
        out << format_double(row_axis[r]);
        for (double v : m[r]) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_profile_csv(const std::string& path, const std::vector<double>& axis,
                       const std::vector<double>& values, const std::string& axis_label,
                       const std::string& value_label) {
    if (axis.size() != values.size()) throw std::invalid_argument("write_profile_csv: length mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_profile_csv: cannot open " + path);
    out << axis_label << ',' << value_label << '\n';
    for (std::size_t i = 0; i < axis.size(); ++i) {
        out << format_double(axis[i]) << ',' << format_double(values[i]) << '\n';
    }
}

}  // namespace spcfmcw
