#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pprd {

// A finite multiset of points in R^d. Points are stored as a flat row-major
// array (one row per point); the stored order carries no meaning. Repeated
// points are legal. Immutable after construction.
class PointPattern {
 public:
  PointPattern() = default;

  // coords holds size() * dim values, row per point. Throws on length mismatch.
  PointPattern(std::vector<double> coords, std::size_t dim);

  static PointPattern empty(std::size_t dim) { return PointPattern({}, dim); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool is_empty() const { return coords_.empty(); }

  const double* point(std::size_t i) const { return coords_.data() + i * dim_; }
  const std::vector<double>& coords() const { return coords_; }

  // Multiset equality: exact coordinate comparison after lexicographic sort.
  bool operator==(const PointPattern& other) const;
  bool operator!=(const PointPattern& other) const { return !(*this == other); }

 private:
  std::vector<double> coords_;
  std::size_t dim_ = 0;
};

// Builds a pattern from an ordered flat vector of k points in R^d,
// forgetting the order. Throws std::invalid_argument on length mismatch.
PointPattern pattern_from_vector(const std::vector<double>& coords, std::size_t k,
                                 std::size_t d);

// Squared Euclidean distance between point i of a and point j of b.
double squared_distance(const PointPattern& a, std::size_t i, const PointPattern& b,
                        std::size_t j);

enum class DistortionKind { FixedCardinalitySquared, Usospa };

// Which distortion is in use: rho2 (equal cardinality only) or USOSPA with
// cut-off c.
struct DistortionSpec {
  DistortionKind kind = DistortionKind::FixedCardinalitySquared;
  double cutoff = 0.0;

  static DistortionSpec rho2() { return {DistortionKind::FixedCardinalitySquared, 0.0}; }
  static DistortionSpec usospa(double c);
};

struct CodebookMetadata {
  std::string heuristic;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
};

struct Codebook {
  std::vector<PointPattern> codewords;
  DistortionSpec distortion;
  CodebookMetadata metadata;

  std::size_t size() const { return codewords.size(); }
  std::size_t dim() const { return codewords.empty() ? 0 : codewords.front().dim(); }
};

// One row of an RD curve: distortion/rate in nats plus provenance.
struct RdPoint {
  double distortion_D = 0.0;
  double rate_R = 0.0;
  std::string bound_id;
  std::vector<std::pair<std::string, std::string>> params;
};

}  // namespace pprd
