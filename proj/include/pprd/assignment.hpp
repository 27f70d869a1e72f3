#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pprd {

// A minimum-cost bijection on {0..n-1} and its total cost.
struct Assignment {
  std::vector<std::size_t> permutation;  // row i is matched to column permutation[i]
  double total_cost = 0.0;
};

// Globally optimal assignment for a square, finite cost matrix
// (Jonker-Volgenant shortest augmenting path, O(n^3)).
// Throws std::invalid_argument on a non-square or non-finite matrix.
Assignment solve_assignment(const std::vector<std::vector<double>>& cost);

// Flat row-major variant; used by the distortion kernels.
Assignment solve_assignment_flat(const std::vector<double>& cost, std::size_t n);

// Number of assignment solves in this thread since program start.
// Exposed so complexity contracts of the center heuristics can be tested.
std::uint64_t assignment_solve_count();

}  // namespace pprd
