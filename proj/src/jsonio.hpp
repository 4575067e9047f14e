// Deterministic text output helpers: shortest round-trip number formatting,
// CSV writing, and snapshot file I/O (CSV or binary, both self-describing).
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "solver.hpp"

namespace pqlab {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

/// One CSV line from string cells (no quoting; cells must be comma-free).
std::string csv_line(const std::vector<std::string>& cells);

void write_text_file(const std::filesystem::path& path, const std::string& content);

enum class SnapshotFormat { Csv, Binary };

/// Snapshot files carry {t, n, N, dt_seed} plus the row-major cell values.
void write_snapshot(const std::filesystem::path& path, const SnapshotRecord& snap,
                    SnapshotFormat format);
SnapshotRecord read_snapshot(const std::filesystem::path& path);

}  // namespace pqlab
