#pragma once

#include <iosfwd>
#include <string>

#include "pprd/point_pattern.hpp"

namespace pprd {

// One pattern per line: "k;d;x1,y1;x2,y2;..." with full double precision.
std::string pattern_to_line(const PointPattern& pattern);
PointPattern pattern_from_line(const std::string& line);

// Codebook file: header "M;d;distortion;c;heuristic;seed" followed by one
// codeword per line in the pattern line format.
void save_codebook(std::ostream& out, const Codebook& cb);
Codebook load_codebook(std::istream& in);
void save_codebook_file(const std::string& path, const Codebook& cb);
Codebook load_codebook_file(const std::string& path);

// Shortest round-trip-exact decimal rendering of a double.
std::string format_double(double v);

// Comma-separated row for an RD point: D,R,bound_id,key=value;...
std::string rd_point_csv(const RdPoint& point);

}  // namespace pprd
