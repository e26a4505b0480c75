#include "htdepth/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace htdepth {

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& path, long long lineno) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &consumed);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
    }
    while (consumed < cell.size() && std::isspace(static_cast<unsigned char>(cell[consumed]))) {
      ++consumed;
    }
    if (consumed != cell.size()) {
      throw IoError(path + ":" + std::to_string(lineno) + ": trailing junk in cell '" + cell + "'");
    }
    if (!std::isfinite(v)) {
      throw IoError(path + ":" + std::to_string(lineno) + ": non-finite value");
    }
    row.push_back(v);
  }
  return row;
}

std::vector<std::vector<double>> read_rows(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && skip_header) continue;
    if (line.empty()) continue;
    std::vector<double> row = parse_row(line, path, lineno);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected " +
                    std::to_string(rows.front().size()) + " columns, got " +
                    std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path + ": no data rows");
  return rows;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PointCloud read_point_cloud(const std::string& path, bool skip_header) {
  const auto rows = read_rows(path, skip_header);
  const int d = static_cast<int>(rows.front().size());
  if (d < 1) throw IoError(path + ": empty rows");
  std::vector<double> data;
  data.reserve(rows.size() * static_cast<std::size_t>(d));
  for (const auto& row : rows) data.insert(data.end(), row.begin(), row.end());
  return PointCloud(std::move(data), static_cast<long long>(rows.size()), d);
}

void write_point_cloud(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open file for writing: " + path);
  for (long long i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (int c = 0; c < cloud.dim(); ++c) {
      if (c > 0) out << ',';
      out << format_full(p[static_cast<std::size_t>(c)]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

HPolytope read_hpolytope(const std::string& path) {
  const auto rows = read_rows(path, false);
  const int d = static_cast<int>(rows.front().size()) - 1;
  if (d < 2) throw IoError(path + ": H-polytope rows need at least 3 columns (u_1..u_d,t)");
  HPolytope poly(d);
  long long lineno = 0;
  for (const auto& row : rows) {
    ++lineno;
    Vec normal(row.begin(), row.end() - 1);
    const double len = norm(normal);
    if (len < 1e-300) {
      throw IoError(path + ": zero normal in H-polytope row " + std::to_string(lineno));
    }
    // renormalize |u| = 1 and rescale the offset to keep the same halfspace
    poly.add(Halfspace{Direction(std::move(normal)), row.back() / len});
  }
  return poly;
}

void write_hpolytope(const std::string& path, const HPolytope& poly) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open file for writing: " + path);
  for (const Halfspace& h : poly.halfspaces()) {
    for (int c = 0; c < poly.dim(); ++c) out << format_full(h.normal[c]) << ',';
    out << format_full(h.offset) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace htdepth
