#pragma once

#include <cstdint>
#include <vector>

#include "aggpack/model.hpp"

namespace aggpack {

/// Everything produced when a bounded equality ILP is collapsed into a
/// single knapsack equation: the slack-extended system, the modulus M, the
/// sum of the original upper bounds U, and the aggregated equation whose
/// non-negative integer solutions coincide with those of the extended
/// system.
struct AggregationContext {
  EqualityIlp original;
  EqualityIlp extended;  // d+n+1 rows over 2n+1 variables
  BigInt big_m;
  BigInt upper_sum;  // U = sum of the original upper bounds
  KnapsackEquality aggregated;
};

/// Adds one row x_j + s_j = u_j per variable and the closing row
/// sum_j (x_j + s_j) + s_{n+1} = U.  Upper bounds of the new system are u_j
/// for x_j, u_j for s_j and U for s_{n+1}.
EqualityIlp extend_with_slacks(const EqualityIlp& ilp);

/// M = Delta * U + max(||b||_inf, ||u||_inf) + Delta + 2 with
/// Delta = ||A||_inf and U = sum_j u_j.
BigInt compute_big_m(const EqualityIlp& ilp);

/// Weights row i by m^i, sums rows and right-hand sides into one equation.
KnapsackEquality aggregate_rows(const EqualityIlp& system, const BigInt& m);

AggregationContext aggregate(const EqualityIlp& ilp);

/// Same construction with a caller-chosen modulus. Used to probe what breaks
/// when the modulus is too small; `aggregate` passes compute_big_m(ilp).
AggregationContext aggregate_with_m(const EqualityIlp& ilp, const BigInt& m);

/// Term decomposition of the weighted system at x:
/// T_i = m^i * (row_i . x - rhs_i), i = 0..d-1.
/// x solves the system iff every T_i = 0; x solves the aggregate iff the
/// T_i sum to zero.
std::vector<BigInt> term_decompose(const EqualityIlp& system, const BigInt& m,
                                   const SolutionVector& x);
std::vector<BigInt> term_decompose(const AggregationContext& ctx,
                                   const SolutionVector& x);

/// Pads a feasible solution of `original` with the forced slack values
/// (s_j = u_j - x_j, closing slack 0) of its extended system.
SolutionVector extend_solution(const EqualityIlp& original,
                               const SolutionVector& x);

struct EquivalenceReport {
  std::vector<SolutionVector> extended_solutions;   // lexicographic
  std::vector<SolutionVector> aggregate_solutions;  // lexicographic
  bool identical = false;
};

/// Enumerates the full box prod_j [0, u'_j] of the extended system and lists
/// the points solving the extended system and the points solving the
/// aggregated equation. A difference between the two lists means the
/// aggregation is broken; the report says so, it does not throw.
/// Throws BudgetExceededError when the box holds more than `box_limit`
/// points.
EquivalenceReport verify_equivalence(const AggregationContext& ctx,
                                     std::uint64_t box_limit);

}  // namespace aggpack
