#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pprd/point_pattern.hpp"
#include "pprd/rng.hpp"

namespace pprd {

// A choice of one point per pattern per clique: permutations[p][i] is the
// index of the point of cell pattern p assigned to clique i. sum_cost is the
// total intra-clique cost, i.e. the sum over cliques of all pairwise squared
// distances between members (ordered pairs).
struct CliqueAssignment {
  std::vector<std::vector<std::size_t>> permutations;
  double sum_cost = 0.0;
};

// Total intra-clique cost of an assignment, recomputed from the definition.
double clique_sum_cost(const std::vector<PointPattern>& cell,
                       const CliqueAssignment& assignment);

// Pattern of the arithmetic means of the cliques.
PointPattern clique_means(const std::vector<PointPattern>& cell,
                          const CliqueAssignment& assignment);

// Single-hub alignment: every pattern is optimally assigned to the hub.
CliqueAssignment assign_single_hub(const std::vector<PointPattern>& cell,
                                   std::size_t hub_index);

enum class CenterHeuristic { Exact, SingleHub, MultiHub, ModifiedSingleHub };

std::string to_string(CenterHeuristic h);
CenterHeuristic center_heuristic_from_string(const std::string& name);

// Exact center point pattern by exhaustive search over permutation
// collections (the first pattern fixed to identity). Throws std::length_error
// when (k!)^(|cell|-1) exceeds 1e6.
PointPattern center_exact(const std::vector<PointPattern>& cell);

PointPattern center_single_hub(const std::vector<PointPattern>& cell,
                               std::size_t hub_index);

// Runs the single-hub heuristic with every pattern as hub and returns the
// center with the smallest average rho2 over the cell (lowest hub index on ties).
PointPattern center_multi_hub(const std::vector<PointPattern>& cell);

// Sequentially assigns each pattern (in the given processing order) to the
// running center and updates it as a running mean. |cell|-1 assignment solves.
PointPattern center_modified_single_hub(const std::vector<PointPattern>& cell,
                                        const std::vector<std::size_t>& order);

// Index of the nearest codeword under the codebook's distortion;
// ties broken by the smallest index. Throws on an empty codebook.
std::size_t nearest_codeword(const PointPattern& x, const Codebook& cb);

struct LbgOptions {
  std::size_t max_iters = 50;
  double rel_tol = 1e-4;  // on the best average distortion over a 3-iteration window
};

// LBG training: alternates nearest-codeword partitioning and per-cell center
// recomputation. Empty cells are re-seeded from a random training sample.
// Returns the best codebook observed across iterations.
Codebook lbg_train(const std::vector<PointPattern>& samples, std::size_t M,
                   const DistortionSpec& distortion_spec, CenterHeuristic heuristic,
                   const LbgOptions& options, Rng& rng);

struct CodebookFamily {
  std::map<std::size_t, Codebook> per_cardinality;
  double cutoff = 0.0;  // USOSPA cut-off used for evaluation

  // log of the total number of codewords.
  double total_rate() const;
};

// Per-cardinality training: groups samples by |X| and trains one codebook per
// group under the equal-cardinality specialization of USOSPA (assignment
// costs capped at c^2). budget maps cardinality -> M_k and must cover every
// cardinality present in the samples (k = 0 is served by the empty pattern).
CodebookFamily lbg_train_per_cardinality(const std::vector<PointPattern>& samples,
                                         const std::map<std::size_t, std::size_t>& budget,
                                         double cutoff, CenterHeuristic heuristic,
                                         const LbgOptions& options, Rng& rng);

struct DistortionEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

using PatternSource = std::function<PointPattern(Rng&)>;

// Monte Carlo distortion of the nearest-codeword encoder on fresh samples.
DistortionEstimate estimate_distortion(const Codebook& cb, const PatternSource& source,
                                       std::size_t n_samples, Rng& rng);

// Family variant: a sample of cardinality k is encoded with the codebook of
// the nearest available cardinality (largest <= k, else smallest available)
// and full USOSPA distortion.
DistortionEstimate estimate_distortion(const CodebookFamily& family,
                                       const PatternSource& source,
                                       std::size_t n_samples, Rng& rng);

// Operational RD point (D-tilde, log M) for a trained codebook.
RdPoint operational_point(const Codebook& cb, const DistortionEstimate& estimate);

}  // namespace pprd
