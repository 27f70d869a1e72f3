#include "pprd/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pprd/assignment.hpp"
#include "pprd/distortion.hpp"

namespace pprd {

namespace {

void check_cell(const std::vector<PointPattern>& cell) {
  if (cell.empty()) throw std::invalid_argument("center: cell must be nonempty");
  const std::size_t k = cell.front().size();
  const std::size_t d = cell.front().dim();
  for (const auto& p : cell) {
    if (p.size() != k || p.dim() != d)
      throw std::invalid_argument("center: mixed cardinality or dimension in cell");
  }
  if (k == 0) throw std::invalid_argument("center: empty patterns have no center");
}

// tau(i) = index of the pattern point matched to reference point i.
std::vector<std::size_t> optimal_assignment_to(const PointPattern& reference,
                                               const PointPattern& pattern) {
  const std::size_t k = reference.size();
  std::vector<double> cost(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      cost[i * k + j] = squared_distance(reference, i, pattern, j);
  return solve_assignment_flat(cost, k).permutation;
}

std::pair<std::size_t, double> nearest_with_distortion(const PointPattern& x,
                                                       const std::vector<PointPattern>& codewords,
                                                       const DistortionSpec& spec) {
  if (codewords.empty()) throw std::invalid_argument("nearest_codeword: empty codebook");
  std::size_t best = 0;
  double best_d = distortion(spec, x, codewords[0]);
  for (std::size_t j = 1; j < codewords.size(); ++j) {
    const double dj = distortion(spec, x, codewords[j]);
    if (dj < best_d) {  // strict: ties keep the smallest index
      best_d = dj;
      best = j;
    }
  }
  return {best, best_d};
}

double average_cell_rho2(const std::vector<PointPattern>& cell, const PointPattern& center) {
  double acc = 0.0;
  for (const auto& p : cell) acc += rho2(p, center);
  return acc / static_cast<double>(cell.size());
}

std::size_t factorial_small(std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double clique_sum_cost(const std::vector<PointPattern>& cell,
                       const CliqueAssignment& assignment) {
  check_cell(cell);
  const std::size_t k = cell.front().size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t p = 0; p < cell.size(); ++p) {
      for (std::size_t q = 0; q < cell.size(); ++q) {
        total += squared_distance(cell[p], assignment.permutations[p][i], cell[q],
                                  assignment.permutations[q][i]);
      }
    }
  }
  return total;
}

PointPattern clique_means(const std::vector<PointPattern>& cell,
                          const CliqueAssignment& assignment) {
  check_cell(cell);
  const std::size_t k = cell.front().size();
  const std::size_t d = cell.front().dim();
  std::vector<double> coords(k * d, 0.0);
  for (std::size_t p = 0; p < cell.size(); ++p) {
    for (std::size_t i = 0; i < k; ++i) {
      const double* pt = cell[p].point(assignment.permutations[p][i]);
      for (std::size_t c = 0; c < d; ++c) coords[i * d + c] += pt[c];
    }
  }
  const double inv = 1.0 / static_cast<double>(cell.size());
  for (double& v : coords) v *= inv;
  return PointPattern(std::move(coords), d);
}

CliqueAssignment assign_single_hub(const std::vector<PointPattern>& cell,
                                   std::size_t hub_index) {
  check_cell(cell);
  if (hub_index >= cell.size())
    throw std::invalid_argument("assign_single_hub: hub index out of range");
  const std::size_t k = cell.front().size();
  CliqueAssignment assignment;
  assignment.permutations.resize(cell.size());
  std::vector<std::size_t> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  for (std::size_t p = 0; p < cell.size(); ++p) {
    assignment.permutations[p] =
        p == hub_index ? identity : optimal_assignment_to(cell[hub_index], cell[p]);
  }
  assignment.sum_cost = clique_sum_cost(cell, assignment);
  return assignment;
}

std::string to_string(CenterHeuristic h) {
  switch (h) {
    case CenterHeuristic::Exact: return "exact";
    case CenterHeuristic::SingleHub: return "single_hub";
    case CenterHeuristic::MultiHub: return "multi_hub";
    case CenterHeuristic::ModifiedSingleHub: return "modified_single_hub";
  }
  return "unknown";
}

CenterHeuristic center_heuristic_from_string(const std::string& name) {
  if (name == "exact") return CenterHeuristic::Exact;
  if (name == "single_hub") return CenterHeuristic::SingleHub;
  if (name == "multi_hub") return CenterHeuristic::MultiHub;
  if (name == "modified_single_hub") return CenterHeuristic::ModifiedSingleHub;
  throw std::invalid_argument("unknown center heuristic: " + name);
}

PointPattern center_exact(const std::vector<PointPattern>& cell) {
  check_cell(cell);
  const std::size_t m = cell.size();
  const std::size_t k = cell.front().size();
  if (m == 1) return cell.front();
  if (k > 9) throw std::length_error("center_exact: cardinality too large, use a heuristic");
  const std::size_t kfact = factorial_small(k);
  double combos = 1.0;
  for (std::size_t p = 1; p < m; ++p) {
    combos *= static_cast<double>(kfact);
    if (combos > 1e6)
      throw std::length_error("center_exact: instance too large, use a heuristic");
  }

  // All permutations of {0..k-1}, indexable.
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Mixed-radix enumeration over the m-1 non-fixed patterns; the first
  // pattern keeps the identity since clique labels are arbitrary.
  CliqueAssignment candidate;
  candidate.permutations.assign(m, perms.front());
  std::vector<std::size_t> digits(m - 1, 0);
  CliqueAssignment best = candidate;
  best.sum_cost = clique_sum_cost(cell, best);
  for (;;) {
    // advance
    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < kfact) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
    for (std::size_t p = 0; p < digits.size(); ++p)
      candidate.permutations[p + 1] = perms[digits[p]];
    candidate.sum_cost = clique_sum_cost(cell, candidate);
    if (candidate.sum_cost < best.sum_cost) best = candidate;
  }
  return clique_means(cell, best);
}

PointPattern center_single_hub(const std::vector<PointPattern>& cell,
                               std::size_t hub_index) {
  return clique_means(cell, assign_single_hub(cell, hub_index));
}

PointPattern center_multi_hub(const std::vector<PointPattern>& cell) {
  check_cell(cell);
  PointPattern best;
  double best_avg = 0.0;
  for (std::size_t hub = 0; hub < cell.size(); ++hub) {
    PointPattern center = center_single_hub(cell, hub);
    const double avg = average_cell_rho2(cell, center);
    if (hub == 0 || avg < best_avg) {  // strict: ties keep the lowest hub index
      best = std::move(center);
      best_avg = avg;
    }
  }
  return best;
}

PointPattern center_modified_single_hub(const std::vector<PointPattern>& cell,
                                        const std::vector<std::size_t>& order) {
  check_cell(cell);
  if (order.size() != cell.size())
    throw std::invalid_argument("center_modified_single_hub: order size mismatch");
  {
    std::vector<char> seen(cell.size(), 0);
    for (std::size_t idx : order) {
      if (idx >= cell.size() || seen[idx])
        throw std::invalid_argument("center_modified_single_hub: order is not a permutation");
      seen[idx] = 1;
    }
  }
  const std::size_t k = cell.front().size();
  const std::size_t d = cell.front().dim();
  std::vector<double> center = std::vector<double>(cell[order[0]].coords());
  for (std::size_t r = 2; r <= cell.size(); ++r) {
    const PointPattern running(center, d);
    const PointPattern& next = cell[order[r - 1]];
    const std::vector<std::size_t> tau = optimal_assignment_to(running, next);
    const double w = static_cast<double>(r - 1) / static_cast<double>(r);
    for (std::size_t i = 0; i < k; ++i) {
      const double* pt = next.point(tau[i]);
      for (std::size_t c = 0; c < d; ++c)
        center[i * d + c] = w * center[i * d + c] + pt[c] / static_cast<double>(r);
    }
  }
  return PointPattern(std::move(center), d);
}

std::size_t nearest_codeword(const PointPattern& x, const Codebook& cb) {
  return nearest_with_distortion(x, cb.codewords, cb.distortion).first;
}

namespace {

PointPattern compute_center(const std::vector<PointPattern>& cell,
                            CenterHeuristic heuristic, Rng& rng) {
  switch (heuristic) {
    case CenterHeuristic::Exact:
      return center_exact(cell);
    case CenterHeuristic::SingleHub:
      return center_single_hub(cell, 0);
    case CenterHeuristic::MultiHub:
      return center_multi_hub(cell);
    case CenterHeuristic::ModifiedSingleHub: {
      std::vector<std::size_t> order(cell.size());
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);
      return center_modified_single_hub(cell, order);
    }
  }
  throw std::invalid_argument("unknown center heuristic");
}

}  // namespace

Codebook lbg_train(const std::vector<PointPattern>& samples, std::size_t M,
                   const DistortionSpec& distortion_spec, CenterHeuristic heuristic,
                   const LbgOptions& options, Rng& rng) {
  if (M == 0) throw std::invalid_argument("lbg_train: M must be positive");
  if (samples.size() < M)
    throw std::invalid_argument("lbg_train: need at least M training samples");
  if (distortion_spec.kind == DistortionKind::FixedCardinalitySquared) {
    const std::size_t k = samples.front().size();
    for (const auto& s : samples) {
      if (s.size() != k)
        throw std::invalid_argument("lbg_train: rho2 requires equal cardinality samples");
    }
  }

  Codebook cb;
  cb.distortion = distortion_spec;
  cb.metadata.heuristic = to_string(heuristic);
  cb.metadata.sample_count = samples.size();

  // Initialization: M distinct codewords drawn from the training set.
  cb.codewords.reserve(M);
  for (std::size_t j = 0; j < M; ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      const PointPattern& candidate = samples[rng.next_below(samples.size())];
      placed = std::none_of(cb.codewords.begin(), cb.codewords.end(),
                            [&](const PointPattern& w) { return w == candidate; });
      if (placed) cb.codewords.push_back(candidate);
    }
    if (!placed)
      throw std::runtime_error("lbg_train: could not draw distinct initial codewords");
  }

  Codebook best = cb;
  double best_avg = std::numeric_limits<double>::infinity();
  std::vector<double> best_history;

  std::vector<std::vector<PointPattern>> cells(M);
  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    // Step 1: nearest-codeword partition of the training set.
    for (auto& cell : cells) cell.clear();
    double total = 0.0;
    for (const auto& sample : samples) {
      const auto [index, dist] = nearest_with_distortion(sample, cb.codewords, distortion_spec);
      cells[index].push_back(sample);
      total += dist;
    }
    const double avg = total / static_cast<double>(samples.size());
    if (avg < best_avg) {
      best_avg = avg;
      best = cb;
    }
    best_history.push_back(best_avg);

    const std::size_t window = 3;
    if (best_history.size() > window) {
      const double before = best_history[best_history.size() - 1 - window];
      if (before - best_avg < options.rel_tol * std::max(before, 1e-300)) break;
    }

    // Step 2: recompute the center of every cell; re-seed empty cells.
    for (std::size_t j = 0; j < M; ++j) {
      if (cells[j].empty()) {
        cb.codewords[j] = samples[rng.next_below(samples.size())];
      } else {
        cb.codewords[j] = compute_center(cells[j], heuristic, rng);
      }
    }
  }

  return best;
}

double CodebookFamily::total_rate() const {
  std::size_t total = 0;
  for (const auto& [k, cb] : per_cardinality) total += cb.size();
  return std::log(static_cast<double>(total));
}

CodebookFamily lbg_train_per_cardinality(const std::vector<PointPattern>& samples,
                                         const std::map<std::size_t, std::size_t>& budget,
                                         double cutoff, CenterHeuristic heuristic,
                                         const LbgOptions& options, Rng& rng) {
  if (!(cutoff > 0.0))
    throw std::invalid_argument("lbg_train_per_cardinality: cutoff must be positive");
  std::map<std::size_t, std::vector<PointPattern>> groups;
  std::size_t dim = 0;
  for (const auto& s : samples) {
    groups[s.size()].push_back(s);
    if (s.dim() > 0) dim = s.dim();
  }
  if (dim == 0) dim = 2;

  CodebookFamily family;
  family.cutoff = cutoff;
  for (auto& [k, group] : groups) {
    const auto it = budget.find(k);
    if (it == budget.end()) {
      std::ostringstream os;
      os << "lbg_train_per_cardinality: no codeword budget for cardinality " << k;
      throw std::invalid_argument(os.str());
    }
    if (k == 0) {
      // The empty pattern is the unique codeword for cardinality zero.
      Codebook cb;
      cb.distortion = DistortionSpec::usospa(cutoff);
      cb.codewords.push_back(PointPattern::empty(dim));
      cb.metadata.heuristic = to_string(heuristic);
      family.per_cardinality.emplace(k, std::move(cb));
      continue;
    }
    const std::size_t m = std::min(it->second, group.size());
    family.per_cardinality.emplace(
        k, lbg_train(group, m, DistortionSpec::usospa(cutoff), heuristic, options,
                     rng));
  }
  return family;
}

namespace {

DistortionEstimate summarize(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

DistortionEstimate estimate_distortion(const Codebook& cb, const PatternSource& source,
                                       std::size_t n_samples, Rng& rng) {
  if (n_samples < 100)
    throw std::invalid_argument("estimate_distortion: need at least 100 samples");
  std::vector<double> values;
  values.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const PointPattern sample = source(rng);
    values.push_back(nearest_with_distortion(sample, cb.codewords, cb.distortion).second);
  }
  return summarize(values);
}

DistortionEstimate estimate_distortion(const CodebookFamily& family,
                                       const PatternSource& source,
                                       std::size_t n_samples, Rng& rng) {
  if (n_samples < 100)
    throw std::invalid_argument("estimate_distortion: need at least 100 samples");
  if (family.per_cardinality.empty())
    throw std::invalid_argument("estimate_distortion: empty codebook family");
  const DistortionSpec spec = DistortionSpec::usospa(family.cutoff);
  std::vector<double> values;
  values.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const PointPattern sample = source(rng);
    // Nearest available cardinality group: largest <= |X|, else the smallest.
    auto it = family.per_cardinality.upper_bound(sample.size());
    if (it != family.per_cardinality.begin()) --it;
    values.push_back(nearest_with_distortion(sample, it->second.codewords, spec).second);
  }
  return summarize(values);
}

RdPoint operational_point(const Codebook& cb, const DistortionEstimate& estimate) {
  RdPoint point;
  point.distortion_D = estimate.mean;
  point.rate_R = std::log(static_cast<double>(cb.size()));
  point.bound_id = "codebook";
  std::ostringstream stderr_str;
  stderr_str.precision(17);
  stderr_str << estimate.stderr_;
  point.params = {{"M", std::to_string(cb.size())},
                  {"heuristic", cb.metadata.heuristic},
                  {"seed", std::to_string(cb.metadata.seed)},
                  {"samples", std::to_string(cb.metadata.sample_count)},
                  {"stderr", stderr_str.str()}};
  return point;
}

}  // namespace pprd
