#pragma once

#include <string>
#include <vector>

// Minimal CSV plumbing for the pipeline's flat schemas (no quoting needed:
// fields are tickers, ISO dates and numbers). Two float formats exist on
// purpose: interchange files round-trip doubles exactly, report files carry
// 9 significant digits for stable diffs.

namespace vigil::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

std::vector<std::string> split_line(const std::string& line);

Table read_file(const std::string& path);

// shortest round-trip representation (interchange artifacts)
std::string format_full(double x);

// 9 significant digits (report artifacts)
std::string format_9(double x);

// "NaN" aware
double parse_double(const std::string& s);
long parse_long(const std::string& s);

// temp file + rename; creates parent directories
void atomic_write(const std::string& path, const std::string& content);

std::string join(const std::vector<std::string>& fields);

}  // namespace vigil::csv
