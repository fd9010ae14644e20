#pragma once

#include <string>
#include <vector>

#include "spcfmcw/signal.hpp"

namespace spcfmcw {

// Signal CSV: header "t,re,im", one row per sample, 17 significant digits.
// A sidecar file <path>.meta holds key=value lines (sample_rate, t0).
void write_signal_csv(const std::string& path, const ComplexBaseband& sig);
ComplexBaseband read_signal_csv(const std::string& path);

// Code file: 0/1 tokens separated by commas or newlines, '#' comment lines.
std::vector<int> load_code_file(const std::string& path);
void write_code_file(const std::string& path, const std::vector<int>& bits);

struct MetricRow {
    std::string name;
    double value = 0.0;
    std::string unit;
    std::string scenario_hash;
    unsigned long long seed = 0;
};

// Appends rows to a metrics ledger CSV, writing the header if the file is new.
void append_metrics_csv(const std::string& path, const std::vector<MetricRow>& rows);

// Generic matrix CSV with a leading column-axis header row and a row-axis
// first column (used for range-Doppler maps and spectrograms).
void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& m,
                      const std::vector<double>& row_axis, const std::vector<double>& col_axis,
                      const std::string& corner_label);

// Two-column CSV (axis,value) used for range profiles.
void write_profile_csv(const std::string& path, const std::vector<double>& axis,
                       const std::vector<double>& values, const std::string& axis_label,
                       const std::string& value_label);

std::string format_double(double v);  // shortest round-trip-exact decimal text

}  // namespace spcfmcw
