#include "aggpack/aggregation.hpp"

#include <algorithm>
#include <stdexcept>

#include "aggpack/verifier.hpp"

namespace aggpack {

EqualityIlp extend_with_slacks(const EqualityIlp& ilp) {
  ilp.validate();
  const std::size_t d = ilp.num_constraints();
  const std::size_t n = ilp.num_vars();
  BigInt total_upper = 0;
  for (const auto& u : ilp.upper) total_upper += u;

  EqualityIlp ext;
  ext.rows.reserve(d + n + 1);
  // Original constraints, zero-padded over the slack columns.
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<BigInt> row(2 * n + 1, 0);
    std::copy(ilp.rows[i].begin(), ilp.rows[i].end(), row.begin());
    ext.rows.push_back(std::move(row));
    ext.rhs.push_back(ilp.rhs[i]);
  }
  // One bound row x_j + s_j = u_j per variable.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<BigInt> row(2 * n + 1, 0);
    row[j] = 1;
    row[n + j] = 1;
    ext.rows.push_back(std::move(row));
    ext.rhs.push_back(ilp.upper[j]);
  }
  // Closing row: every variable, old and new, sums to U.
  ext.rows.emplace_back(2 * n + 1, BigInt(1));
  ext.rhs.push_back(total_upper);

  ext.upper = ilp.upper;
  ext.upper.insert(ext.upper.end(), ilp.upper.begin(), ilp.upper.end());
  ext.upper.push_back(total_upper);

  ext.var_names = ilp.var_names;
  for (std::size_t j = 0; j < n + 1; ++j)
    ext.var_names.push_back("s" + std::to_string(j + 1));
  ext.validate();
  return ext;
}

BigInt compute_big_m(const EqualityIlp& ilp) {
  ilp.validate();
  const BigInt delta = infinity_norm(ilp.rows);
  BigInt total_upper = 0;
  BigInt largest = 0;
  for (const auto& u : ilp.upper) {
    total_upper += u;
    if (u > largest) largest = u;
  }
  for (const auto& b : ilp.rhs) {
    BigInt mag = b < 0 ? BigInt(-b) : b;
    if (mag > largest) largest = mag;
  }
  return delta * total_upper + largest + delta + 2;
}

KnapsackEquality aggregate_rows(const EqualityIlp& system, const BigInt& m) {
  system.validate();
  const std::size_t d = system.num_constraints();
  const std::size_t n = system.num_vars();
  KnapsackEquality kp;
  kp.var_names = system.var_names;
  kp.weights.assign(n, 0);
  // Horner from the top row down gives column weights sum_i m^i * A[i][j].
  for (std::size_t i = d; i-- > 0;) {
    for (std::size_t j = 0; j < n; ++j)
      kp.weights[j] = kp.weights[j] * m + system.rows[i][j];
    kp.rhs = kp.rhs * m + system.rhs[i];
  }
  return kp;
}

AggregationContext aggregate_with_m(const EqualityIlp& ilp, const BigInt& m) {
  AggregationContext ctx;
  ctx.original = ilp;
  ctx.extended = extend_with_slacks(ilp);
  ctx.big_m = m;
  ctx.upper_sum = 0;
  for (const auto& u : ilp.upper) ctx.upper_sum += u;
  ctx.aggregated = aggregate_rows(ctx.extended, m);
  return ctx;
}

AggregationContext aggregate(const EqualityIlp& ilp) {
  return aggregate_with_m(ilp, compute_big_m(ilp));
}

std::vector<BigInt> term_decompose(const EqualityIlp& system, const BigInt& m,
                                   const SolutionVector& x) {
  if (x.size() != system.num_vars())
    throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> terms;
  terms.reserve(system.num_constraints());
  BigInt power = 1;
  for (std::size_t i = 0; i < system.num_constraints(); ++i) {
    terms.push_back(power * (dot(system.rows[i], x) - system.rhs[i]));
    power *= m;
  }
  return terms;
}

std::vector<BigInt> term_decompose(const AggregationContext& ctx,
                                   const SolutionVector& x) {
  return term_decompose(ctx.extended, ctx.big_m, x);
}

SolutionVector extend_solution(const EqualityIlp& original,
                               const SolutionVector& x) {
  if (x.size() != original.num_vars())
    throw std::invalid_argument("dimension mismatch");
  SolutionVector full = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    BigInt slack = original.upper[j] - x[j];
    if (x[j] < 0 || slack < 0)
      throw std::invalid_argument("solution outside variable bounds");
    full.push_back(slack);
  }
  // sum_j (x_j + s_j) equals U exactly, so the closing slack is zero.
  full.push_back(0);
  return full;
}

EquivalenceReport verify_equivalence(const AggregationContext& ctx,
                                     std::uint64_t box_limit) {
  EquivalenceReport report;
  const EqualityIlp& ext = ctx.extended;
  const KnapsackEquality& agg = ctx.aggregated;
  for_each_box_point(ext.upper, box_limit, [&](const SolutionVector& x) {
    bool solves_rows = true;
    for (std::size_t i = 0; i < ext.num_constraints() && solves_rows; ++i)
      solves_rows = dot(ext.rows[i], x) == ext.rhs[i];
    if (solves_rows) report.extended_solutions.push_back(x);
    if (dot(agg.weights, x) == agg.rhs) report.aggregate_solutions.push_back(x);
  });
  report.identical = report.extended_solutions == report.aggregate_solutions;
  return report;
}

}  // namespace aggpack
