#include "pprd/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pprd {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad number in pattern line: " + s);
  return v;
}

std::size_t parse_size(const std::string& s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer in line: " + s);
  return v;
}

}  // namespace

std::string pattern_to_line(const PointPattern& pattern) {
  std::string line = std::to_string(pattern.size()) + ";" + std::to_string(pattern.dim());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    line += ';';
    for (std::size_t c = 0; c < pattern.dim(); ++c) {
      if (c > 0) line += ',';
      line += format_double(pattern.point(i)[c]);
    }
  }
  return line;
}

PointPattern pattern_from_line(const std::string& line) {
  const auto parts = split(line, ';');
  if (parts.size() < 2) throw std::invalid_argument("pattern line: missing k;d header");
  const std::size_t k = parse_size(parts[0]);
  const std::size_t d = parse_size(parts[1]);
  if (parts.size() != 2 + k)
    throw std::invalid_argument("pattern line: point count mismatch");
  std::vector<double> coords;
  coords.reserve(k * d);
  for (std::size_t i = 0; i < k; ++i) {
    const auto nums = split(parts[2 + i], ',');
    if (nums.size() != d) throw std::invalid_argument("pattern line: dimension mismatch");
    for (const auto& n : nums) coords.push_back(parse_double(n));
  }
  return PointPattern(std::move(coords), d);
}

void save_codebook(std::ostream& out, const Codebook& cb) {
  const bool usospa = cb.distortion.kind == DistortionKind::Usospa;
  out << cb.size() << ';' << cb.dim() << ';' << (usospa ? "usospa" : "rho2") << ';'
      << format_double(cb.distortion.cutoff) << ';' << cb.metadata.heuristic << ';'
      << cb.metadata.seed << '\n';
  for (const auto& codeword : cb.codewords) out << pattern_to_line(codeword) << '\n';
}

Codebook load_codebook(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("codebook: missing header");
  const auto parts = split(header, ';');
  if (parts.size() != 6) throw std::invalid_argument("codebook: malformed header");
  Codebook cb;
  const std::size_t m = parse_size(parts[0]);
  const double cutoff = parse_double(parts[3]);
  if (parts[2] == "usospa") {
    cb.distortion = DistortionSpec::usospa(cutoff);
  } else if (parts[2] == "rho2") {
    cb.distortion = DistortionSpec::rho2();
  } else {
    throw std::invalid_argument("codebook: unknown distortion " + parts[2]);
  }
  cb.metadata.heuristic = parts[4];
  cb.metadata.seed = parse_size(parts[5]);
  std::string line;
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::getline(in, line)) throw std::invalid_argument("codebook: truncated file");
    cb.codewords.push_back(pattern_from_line(line));
  }
  return cb;
}

void save_codebook_file(const std::string& path, const Codebook& cb) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_codebook(out, cb);
}

Codebook load_codebook_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_codebook(in);
}

std::string rd_point_csv(const RdPoint& point) {
  std::string row = format_double(point.distortion_D) + "," + format_double(point.rate_R) +
                    "," + point.bound_id + ",";
  for (std::size_t i = 0; i < point.params.size(); ++i) {
    if (i > 0) row += ';';
    row += point.params[i].first + "=" + point.params[i].second;
  }
  return row;
}

}  // namespace pprd
