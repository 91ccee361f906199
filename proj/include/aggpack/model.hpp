#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aggpack/bigint.hpp"

namespace aggpack {

/// Non-negative integer assignment to the variables of a system.
using SolutionVector = std::vector<BigInt>;

/// Equality-constrained integer program  A x = b,  0 <= x <= u,  x integer,
/// with an optional cost vector that none of the constructions here use.
///
/// `var_names` are presentation labels only: they are not serialized and do
/// not participate in equality comparisons.
struct EqualityIlp {
  std::vector<std::vector<BigInt>> rows;  // d x n coefficient matrix
  std::vector<BigInt> rhs;                // length d
  std::vector<BigInt> upper;              // length n, entries >= 0
  std::optional<std::vector<BigInt>> cost;
  std::vector<std::string> var_names;  // length n

  std::size_t num_constraints() const { return rows.size(); }
  std::size_t num_vars() const { return upper.size(); }

  /// Throws std::invalid_argument if dimensions are inconsistent or some
  /// upper bound is negative.
  void validate() const;
};

bool operator==(const EqualityIlp& a, const EqualityIlp& b);

/// Single equation  w^T x = C  over non-negative integer variables.
/// Weights may be negative while the equation is an intermediate aggregate;
/// instance construction asserts positivity before calling them item sizes.
struct KnapsackEquality {
  std::vector<BigInt> weights;
  BigInt rhs;
  std::vector<std::string> var_names;

  std::size_t num_vars() const { return weights.size(); }
};

bool operator==(const KnapsackEquality& a, const KnapsackEquality& b);

/// High-multiplicity bin packing instance: `multiplicities[i]` items of size
/// `sizes[i]` must be packed into bins of size `capacity`; `bin_budget` is
/// the bin count of the decision form when present.
struct BinPackingInstance {
  std::vector<BigInt> sizes;
  std::vector<BigInt> multiplicities;
  BigInt capacity;
  std::optional<std::uint64_t> bin_budget;

  std::size_t num_item_types() const { return sizes.size(); }

  /// Throws std::invalid_argument unless 0 < s_i <= capacity and a_i >= 0.
  void validate() const;
};

bool operator==(const BinPackingInstance& a, const BinPackingInstance& b);

/// Largest absolute value of any matrix entry. Throws on an empty matrix.
BigInt infinity_norm(const std::vector<std::vector<BigInt>>& matrix);

/// Number of non-zero entries.
std::size_t evaluate_support(const SolutionVector& x);

/// True iff A x = b and 0 <= x <= u componentwise.
/// Throws std::invalid_argument when x has the wrong length.
bool check_solution(const EqualityIlp& ilp, const SolutionVector& x);

BigInt dot(const std::vector<BigInt>& coeffs, const SolutionVector& x);

}  // namespace aggpack
