#pragma once

#include <string>
#include <vector>

#include "fnmix/chain.hpp"

namespace fnmix {

// Chain file: {"d": int, "P": [row-major d*d reals], "pi": optional [d reals]}.
TransitionMatrix read_chain_json(const std::string& path);
void write_chain_json(const TransitionMatrix& chain, const std::string& path);

// Function file: JSON array (or {"values": [...]}) or single-column CSV.
Vector read_function_values(const std::string& path);
void write_function_json(const Vector& values, const std::string& path);

// CSV with headers and 17 significant digits; `comment` lines are prefixed
// with "# " so outputs stay self-describing yet machine-readable.
struct CsvWriter {
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void comment(const std::string& text);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

  private:
    struct Impl;
    Impl* impl_;
};

std::string format_sig17(double v);

}  // namespace fnmix
