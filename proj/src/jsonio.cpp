#include "jsonio.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pqlab {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

constexpr char kBinaryMagic[8] = {'P', 'Q', 'S', 'N', 'A', 'P', '1', '\n'};

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SnapshotRecord& snap,
                    SnapshotFormat format) {
  if (format == SnapshotFormat::Csv) {
    std::string out;
    out += "# pqlab snapshot v1\n";
    out += "t," + format_double(snap.t) + "\n";
    out += "n," + std::to_string(snap.state.n) + "\n";
    out += "N," + std::to_string(snap.state.N) + "\n";
    out += "dt_seed," + format_double(snap.dt_seed) + "\n";
    for (int i = 0; i < snap.state.n; ++i) {
      std::vector<std::string> cells;
      cells.reserve(static_cast<std::size_t>(snap.state.N));
      for (int a = 0; a < snap.state.N; ++a) cells.push_back(format_double(snap.state.at(i, a)));
      out += csv_line(cells);
    }
    write_text_file(path, out);
    return;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(kBinaryMagic, sizeof(kBinaryMagic));
  std::int64_t n = snap.state.n, N = snap.state.N;
  out.write(reinterpret_cast<const char*>(&snap.t), sizeof(double));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&N), sizeof(N));
  out.write(reinterpret_cast<const char*>(&snap.dt_seed), sizeof(double));
  out.write(reinterpret_cast<const char*>(snap.state.values.data()),
            static_cast<std::streamsize>(snap.state.values.size() * sizeof(double)));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

double parse_double_exact(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError("malformed number '" + s + "' in snapshot");
  return v;
}

SnapshotRecord read_snapshot_csv(std::ifstream& in, const std::filesystem::path& path) {
  SnapshotRecord snap;
  std::string line;
  auto next_kv = [&](const char* key) {
    if (!std::getline(in, line)) throw IoError("truncated snapshot '" + path.string() + "'");
    auto comma = line.find(',');
    if (comma == std::string::npos || line.substr(0, comma) != key)
      throw IoError("expected '" + std::string(key) + "' header in '" + path.string() + "'");
    return line.substr(comma + 1);
  };
  snap.t = parse_double_exact(next_kv("t"));
  int n = static_cast<int>(parse_double_exact(next_kv("n")));
  int N = static_cast<int>(parse_double_exact(next_kv("N")));
  snap.dt_seed = parse_double_exact(next_kv("dt_seed"));
  if (n < 1 || N < 1) throw IoError("corrupt snapshot header in '" + path.string() + "'");
  snap.state = StateField(n, N, snap.t);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw IoError("truncated snapshot '" + path.string() + "'");
    std::stringstream row(line);
    std::string cell;
    for (int a = 0; a < N; ++a) {
      if (!std::getline(row, cell, ',')) throw IoError("short row in '" + path.string() + "'");
      snap.state.at(i, a) = parse_double_exact(cell);
    }
  }
  return snap;
}

}  // namespace

SnapshotRecord read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in) throw IoError("truncated snapshot '" + path.string() + "'");
  if (std::memcmp(magic, kBinaryMagic, sizeof(magic)) == 0) {
    SnapshotRecord snap;
    std::int64_t n = 0, N = 0;
    in.read(reinterpret_cast<char*>(&snap.t), sizeof(double));
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&N), sizeof(N));
    in.read(reinterpret_cast<char*>(&snap.dt_seed), sizeof(double));
    if (!in || n < 1 || N < 1 || n > (1 << 28) || N > (1 << 10))
      throw IoError("corrupt snapshot header in '" + path.string() + "'");
    snap.state = StateField(static_cast<int>(n), static_cast<int>(N), snap.t);
    in.read(reinterpret_cast<char*>(snap.state.values.data()),
            static_cast<std::streamsize>(snap.state.values.size() * sizeof(double)));
    if (!in) throw IoError("truncated snapshot '" + path.string() + "'");
    return snap;
  }

  // CSV variant: first line is the comment marker
  in.seekg(0);
  std::string first;
  std::getline(in, first);
  if (first.rfind("# pqlab snapshot", 0) != 0)
    throw IoError("unrecognized snapshot file '" + path.string() + "'");
  return read_snapshot_csv(in, path);
}

}  // namespace pqlab
