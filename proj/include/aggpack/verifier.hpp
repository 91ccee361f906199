#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "aggpack/hard_instance.hpp"
#include "aggpack/model.hpp"

namespace aggpack {

/// Deterministic 64-bit generator (splitmix update). All randomized checks
/// in this library draw from it so that a seed pins the whole run.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
};

/// Uniform draw from [0, bound] inclusive, by rejection on the bit length.
BigInt uniform_bigint(SplitMix64& rng, const BigInt& bound);

/// Calls fn for every lattice point of the box prod_j [0, upper_j] in
/// lexicographic order. Throws BudgetExceededError when the box holds more
/// than `budget` points.
void for_each_box_point(const std::vector<BigInt>& upper, std::uint64_t budget,
                        const std::function<void(const SolutionVector&)>& fn);

/// All x in the box with A x = b, lexicographically ordered.
std::vector<SolutionVector> naive_box_enumeration(const EqualityIlp& ilp,
                                                  std::uint64_t budget);

struct ConicSearchResult {
  // Multiplicity vectors over the k non-zero points, aligned with
  // PointSet::points[1..k] (norm ascending), lexicographically sorted.
  std::vector<std::vector<BigInt>> solutions;
  std::vector<BigInt> search_bounds;  // per-point cap used by the search
};

/// Depth-first search for every non-negative integer combination of the
/// non-zero points reaching `target` exactly. The zero point is excluded;
/// each multiplicity is capped by min(cap, componentwise quotient). The
/// search walks points in descending norm so the dominant coordinate prunes
/// first.
ConicSearchResult conic_combinations(const PointSet& points,
                                     const std::vector<BigInt>& target,
                                     const BigInt& cap);

enum class SearchMode { Structural, Exhaustive };

struct SupportReport {
  std::size_t min_support = 0;
  // configuration -> multiplicity, only non-zero multiplicities
  std::vector<std::pair<SolutionVector, BigInt>> witness;
  SearchMode method = SearchMode::Structural;
};

/// Minimum number of distinct configurations in any packing of the hard
/// instance into its bin budget.
///
/// Structural mode follows the construction: the multiplicities weigh
/// exactly k full bins (asserted), so a k-bin packing can only use the
/// full-capacity configurations X*; projecting X* reduces the question to
/// the conic search over the point set. Exhaustive mode (dprime <= 2)
/// additionally enumerates every multiset of X* of size <= k.
/// Throws std::runtime_error("construction violated kC identity") if the
/// mass balance fails.
SupportReport min_support_packing(const HardInstance& hi, SearchMode mode);

struct RejectionReport {
  std::uint64_t satisfied_count = 0;
  std::vector<SolutionVector> satisfying;  // in draw order
};

/// Draws `trials` uniform vectors from the box prod_j [0, bounds_j] and
/// counts how many satisfy w^T x = C. Satisfying draws are returned so the
/// caller can match them against the known solution set.
RejectionReport reject_random_nonsolutions(const KnapsackEquality& kp,
                                           const std::vector<BigInt>& bounds,
                                           std::uint64_t trials,
                                           std::uint64_t seed);

/// Seeded small instance family used by the equivalence fuzz checks:
/// d, n <= 3, |A entries| <= 3, u_j <= 3, and half the draws get a right
/// hand side that is feasible by construction.
EqualityIlp random_test_ilp(SplitMix64& rng);

}  // namespace aggpack
