#include "csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fdb {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field, const std::string& name, int lineno) {
  double v = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    fail(ErrorCode::parse, name + " line " + std::to_string(lineno) + ": bad number '" + field + "'");
  return v;
}

}  // namespace

CurveSet read_curveset_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::parse, name + ": empty file, expected a header of grid times");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> head = split_fields(line);
  const int m = static_cast<int>(head.size());
  Eigen::VectorXd times(m);
  for (int l = 0; l < m; ++l) times(l) = parse_double(head[l], name, 1);

  CurveSet cs;
  try {
    cs.grid = Grid::from_points(times);
  } catch (const Error& e) {
    fail(ErrorCode::parse, name + " line 1: " + e.what());
  }

  std::vector<Eigen::VectorXd> rows;
  std::vector<int> labels;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) fail(ErrorCode::parse, name + " line " + std::to_string(lineno) + ": empty line");
    const std::vector<std::string> fields = split_fields(line);
    if (static_cast<int>(fields.size()) != m + 1)
      fail(ErrorCode::parse, name + " line " + std::to_string(lineno) + ": expected " + std::to_string(m + 1) +
                                 " fields (label + " + std::to_string(m) + " values), got " +
                                 std::to_string(fields.size()));
    int y;
    if (fields[0] == "0")
      y = 0;
    else if (fields[0] == "1")
      y = 1;
    else if (fields[0] == "?")
      y = -1;
    else
      fail(ErrorCode::parse,
           name + " line " + std::to_string(lineno) + ": label must be 0, 1 or ?, got '" + fields[0] + "'");
    Eigen::VectorXd row(m);
    for (int l = 0; l < m; ++l) row(l) = parse_double(fields[l + 1], name, lineno);
    rows.push_back(std::move(row));
    labels.push_back(y);
  }

  cs.values.resize(rows.size(), m);
  for (std::size_t i = 0; i < rows.size(); ++i) cs.values.row(i) = rows[i].transpose();
  cs.labels = std::move(labels);
  cs.validate();
  return cs;
}

CurveSet read_curveset_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "' for reading");
  return read_curveset_csv(in, path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curveset_to_csv(const CurveSet& cs) {
  cs.validate();
  std::string out;
  for (int l = 0; l < cs.grid.size(); ++l) {
    if (l) out += ',';
    out += format_double(cs.grid.points(l));
  }
  out += '\n';
  for (int i = 0; i < cs.size(); ++i) {
    out += cs.labels[i] == -1 ? "?" : std::to_string(cs.labels[i]);
    for (int l = 0; l < cs.grid.size(); ++l) {
      out += ',';
      out += format_double(cs.values(i, l));
    }
    out += '\n';
  }
  return out;
}

void write_curveset_csv_file(const CurveSet& cs, const std::string& path) {
  write_text_file(path, curveset_to_csv(cs));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(ErrorCode::io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fdb
