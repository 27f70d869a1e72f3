#include "pprd/point_pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace pprd {

PointPattern::PointPattern(std::vector<double> coords, std::size_t dim)
    : coords_(std::move(coords)), dim_(dim) {
  if (dim_ == 0) throw std::invalid_argument("PointPattern: dimension must be positive");
  if (coords_.size() % dim_ != 0)
    throw std::invalid_argument("PointPattern: coordinate count not a multiple of dim");
}

namespace {

// Canonical order of the stored points: lexicographic by coordinates.
std::vector<std::size_t> sorted_index(const PointPattern& p) {
  std::vector<std::size_t> idx(p.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(p.point(a), p.point(a) + p.dim(), p.point(b),
                                        p.point(b) + p.dim());
  });
  return idx;
}

}  // namespace

bool PointPattern::operator==(const PointPattern& other) const {
  if (dim_ != other.dim_ || size() != other.size()) return false;
  const auto ia = sorted_index(*this);
  const auto ib = sorted_index(other);
  for (std::size_t r = 0; r < ia.size(); ++r) {
    if (!std::equal(point(ia[r]), point(ia[r]) + dim_, other.point(ib[r]))) return false;
  }
  return true;
}

PointPattern pattern_from_vector(const std::vector<double>& coords, std::size_t k,
                                 std::size_t d) {
  if (coords.size() != k * d)
    throw std::invalid_argument("pattern_from_vector: expected k*d coordinates");
  return PointPattern(coords, d);
}

double squared_distance(const PointPattern& a, std::size_t i, const PointPattern& b,
                        std::size_t j) {
  const double* pa = a.point(i);
  const double* pb = b.point(j);
  double acc = 0.0;
  for (std::size_t c = 0; c < a.dim(); ++c) {
    const double diff = pa[c] - pb[c];
    acc += diff * diff;
  }
  return acc;
}

DistortionSpec DistortionSpec::usospa(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("DistortionSpec: cutoff must be positive");
  return {DistortionKind::Usospa, c};
}

}  // namespace pprd
