#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aggpack/model.hpp"

namespace aggpack {

/// Parameters of the power-of-gamma gadget: `digits` binary digits of the
/// exponent (d >= 1) and the base gamma >= 2.
struct GadgetParams {
  std::size_t digits = 1;
  BigInt gamma = 2;

  void validate() const;
  std::size_t num_vars() const { return 12 * digits + 4; }  // 12d+4
  std::size_t num_rows() const { return 9 * digits + 4; }   // alpha = 9d+4
};

/// Full variable assignment of the gadget for one exponent: binary digits
/// xbin, quotient witnesses y, remainder-recursion witnesses z, remainders
/// r(0..d), and every slack of the equality rows.
struct GadgetAssignment {
  std::vector<BigInt> xbin;  // d entries in {0,1}
  std::vector<BigInt> y;     // d entries
  std::vector<BigInt> z;     // d entries
  std::vector<BigInt> r;     // d+1 entries, r[0]..r[d]
  std::vector<BigInt> s1, s2, s3, s4, s5, s7, s8, s9;  // d entries each
  BigInt s_lo;   // slack of r(d) >= 2
  BigInt s_hi;   // slack of r(d) <= gamma^(2^d - 1)
  BigInt s_sum;  // slack of the all-variables box row

  /// Flattens into the canonical variable order
  ///   xbin(0..d-1), y(0..d-1), z(0..d-1), r(0..d),
  ///   s1(0..d-1), ..., s5(0..d-1), s7(0..d-1), s8(0..d-1), s9(0..d-1),
  ///   s_lo, s_hi, s_sum                       (12d+4 entries)
  SolutionVector to_vector() const;
  static GadgetAssignment from_vector(const GadgetParams& params,
                                      const SolutionVector& v);

  /// sum_l 2^l * xbin[l]
  BigInt exponent() const;
};

enum class Relation { LessEq, Eq, GreaterEq };

/// One constraint row over an explicit variable order; inequality systems
/// keep their relations, equality systems live in EqualityIlp instead.
struct LinearRelation {
  std::vector<BigInt> coeffs;
  Relation rel = Relation::Eq;
  BigInt rhs;
  std::string label;
};

bool satisfies(const LinearRelation& c, const std::vector<BigInt>& x);

/// Runs the digit-extraction recursion for exponent i (1 <= i <= 2^d - 1):
/// r(d) = gamma^i, then per level either divides off gamma^(2^l) and records
/// a one bit or keeps the remainder and records a zero bit. All witness
/// variables and slacks are filled in; the result satisfies
/// build_equality_system(params).
/// Throws std::invalid_argument("exponent out of range") otherwise.
GadgetAssignment decimal_to_binary_trace(const GadgetParams& params,
                                         const BigInt& exponent);

/// The 13d+3 inequality/equality constraints over (xbin, y, z, r), with
/// denominators cleared to integer coefficients. Variable order is the
/// prefix of the canonical order: xbin(0..d-1), y(0..d-1), z(0..d-1),
/// r(0..d).
std::vector<LinearRelation> build_inequality_system(const GadgetParams& params);

/// The equality form: 9d+4 rows over the 12d+4 canonical variables,
/// one row per modulus power, including the closing box row
/// (sum of all variables) + nothing = U. Upper bounds come with the system.
EqualityIlp build_equality_system(const GadgetParams& params);

/// Sum of the upper bounds of every gadget variable except the box slack;
/// the box slack is then bounded by this value itself.
BigInt gadget_upper_sum(const GadgetParams& params);

/// 2*gamma^(2^d) * U + gamma^(2^d - 1) + 2*gamma^(2^d) + 2.
BigInt gadget_big_m(const GadgetParams& params, const BigInt& upper_sum);

/// Weights the 9d+4 equality rows by 1, M, ..., M^(9d+3) with
/// M = gadget_big_m and groups per variable into a single equation.
/// Every grouped weight must be positive and at most the right-hand side;
/// a violation throws std::runtime_error("non-positive item size" / "item
/// size exceeds capacity") and signals a construction bug.
KnapsackEquality build_knapsack_equation(const GadgetParams& params);

enum class EnumerationMode { Exhaustive, Structural };

/// Exhaustive mode scans every candidate r(d) in [2, gamma^(2^d - 1)] and
/// propagates the forced values downward, so it finds every solution of the
/// equality system; it requires gamma^(2^d - 1) <= 10^6 and otherwise throws
/// BudgetExceededError naming the bound. Structural mode returns the traces
/// of all exponents in [1, 2^d - 1] without a completeness argument.
/// Both orders are sorted by r(d) ascending.
std::vector<GadgetAssignment> enumerate_gadget_solutions(
    const GadgetParams& params, EnumerationMode mode);

/// Variant with z(l) replaced by y(l) in the remainder recursion and the
/// four z rows dropped: 6d+3 rows over 8d+3 variables
/// (xbin, y, r, s1..s5, s_lo, s_hi). This system admits extra solutions,
/// e.g. r(2)=29 for d=2, gamma=5, which the full system rejects.
EqualityIlp build_simplified_system(const GadgetParams& params);

/// True iff the assignment matches the forced shape implied by the
/// constraints at every level: y(l) = 0 exactly below the threshold
/// gamma^(2^l), xbin(l) is the threshold indicator, r(l) is the kept or
/// divided remainder and stays below gamma^(2^l), and y(l) equals the
/// floor expression, all checked by cross-multiplied integer comparisons.
bool check_observations(const GadgetParams& params, const GadgetAssignment& a);

}  // namespace aggpack
