// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kahlerstat {

/// Rectangular numeric result plus the configuration that produced it.
struct Table {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
        rows.push_back(std::move(row));
    }
};

/// Shortest text that reads back to the same double (17 significant digits).
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// '#'-prefixed config lines, a header row, then comma-separated values.
inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [key, value] : t.config) os << "# " << key << " = " << value << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

}  // namespace kahlerstat
