#pragma once

#include <iosfwd>
#include <string>

#include "grid.hpp"

namespace fdb {

/// Curve CSV: line 1 holds the m grid times; every later line holds a
/// label field ("0", "1", or "?") followed by m values. A file with only
/// the header line is an empty set (valid for prediction input).
CurveSet read_curveset_csv(std::istream& in, const std::string& name);
CurveSet read_curveset_csv_file(const std::string& path);

std::string curveset_to_csv(const CurveSet& cs);
void write_curveset_csv_file(const CurveSet& cs, const std::string& path);

/// Shortest-width decimal that round-trips the double exactly.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace fdb
