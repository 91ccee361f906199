#include "aggpack/gadget.hpp"

#include <stdexcept>

#include "aggpack/aggregation.hpp"
#include "aggpack/errors.hpp"

namespace aggpack {

namespace {

// Canonical variable order of the equality form:
//   xbin(0..d-1), y(0..d-1), z(0..d-1), r(0..d),
//   s1(0..d-1) .. s5(0..d-1), s7(0..d-1), s8(0..d-1), s9(0..d-1),
//   s_lo, s_hi, s_sum
struct Layout {
  std::size_t d;

  std::size_t xbin(std::size_t l) const { return l; }
  std::size_t y(std::size_t l) const { return d + l; }
  std::size_t z(std::size_t l) const { return 2 * d + l; }
  std::size_t r(std::size_t l) const { return 3 * d + l; }  // l in [0, d]
  std::size_t s1(std::size_t l) const { return 4 * d + 1 + l; }
  std::size_t s2(std::size_t l) const { return 5 * d + 1 + l; }
  std::size_t s3(std::size_t l) const { return 6 * d + 1 + l; }
  std::size_t s4(std::size_t l) const { return 7 * d + 1 + l; }
  std::size_t s5(std::size_t l) const { return 8 * d + 1 + l; }
  std::size_t s7(std::size_t l) const { return 9 * d + 1 + l; }
  std::size_t s8(std::size_t l) const { return 10 * d + 1 + l; }
  std::size_t s9(std::size_t l) const { return 11 * d + 1 + l; }
  std::size_t s_lo() const { return 12 * d + 1; }
  std::size_t s_hi() const { return 12 * d + 2; }
  std::size_t s_sum() const { return 12 * d + 3; }
  std::size_t total() const { return 12 * d + 4; }
};

// pow2[l] = gamma^(2^l) for l in [0, d], by repeated squaring.
std::vector<BigInt> level_powers(const GadgetParams& params) {
  std::vector<BigInt> p(params.digits + 1);
  p[0] = params.gamma;
  for (std::size_t l = 1; l <= params.digits; ++l) p[l] = p[l - 1] * p[l - 1];
  return p;
}

BigInt top_remainder_bound(const GadgetParams& params) {
  // gamma^(2^d - 1)
  return bpow(params.gamma, (std::uint64_t{1} << params.digits) - 1);
}

// Worst-case value a slack can take given the bounds of the other variables
// in its row: the slack absorbs whatever the rest of the row leaves open.
BigInt slack_bound_from_row(const std::vector<BigInt>& row, const BigInt& rhs,
                            std::size_t slack, const std::vector<BigInt>& bounds) {
  BigInt bound;
  if (row[slack] == 1) {
    bound = rhs;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (j != slack && row[j] < 0) bound += -row[j] * bounds[j];
  } else {  // coefficient -1
    bound = -rhs;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (j != slack && row[j] > 0) bound += row[j] * bounds[j];
  }
  return bound;
}

std::string level_name(const char* base, std::size_t l) {
  return std::string(base) + "(" + std::to_string(l) + ")";
}

}  // namespace

void GadgetParams::validate() const {
  if (digits < 1) throw std::invalid_argument("gadget needs at least one digit");
  if (digits > 32)
    throw std::invalid_argument("gadget dimension too large to materialize");
  if (gamma < 2) throw std::invalid_argument("gadget base must be at least 2");
}

SolutionVector GadgetAssignment::to_vector() const {
  const Layout L{xbin.size()};
  SolutionVector v(L.total());
  for (std::size_t l = 0; l < L.d; ++l) {
    v[L.xbin(l)] = xbin[l];
    v[L.y(l)] = y[l];
    v[L.z(l)] = z[l];
    v[L.s1(l)] = s1[l];
    v[L.s2(l)] = s2[l];
    v[L.s3(l)] = s3[l];
    v[L.s4(l)] = s4[l];
    v[L.s5(l)] = s5[l];
    v[L.s7(l)] = s7[l];
    v[L.s8(l)] = s8[l];
    v[L.s9(l)] = s9[l];
  }
  for (std::size_t l = 0; l <= L.d; ++l) v[L.r(l)] = r[l];
  v[L.s_lo()] = s_lo;
  v[L.s_hi()] = s_hi;
  v[L.s_sum()] = s_sum;
  return v;
}

GadgetAssignment GadgetAssignment::from_vector(const GadgetParams& params,
                                               const SolutionVector& v) {
  params.validate();
  const Layout L{params.digits};
  if (v.size() != L.total()) throw std::invalid_argument("dimension mismatch");
  GadgetAssignment a;
  auto fill = [&](std::vector<BigInt>& dst, auto index) {
    dst.resize(L.d);
    for (std::size_t l = 0; l < L.d; ++l) dst[l] = v[index(l)];
  };
  fill(a.xbin, [&](std::size_t l) { return L.xbin(l); });
  fill(a.y, [&](std::size_t l) { return L.y(l); });
  fill(a.z, [&](std::size_t l) { return L.z(l); });
  fill(a.s1, [&](std::size_t l) { return L.s1(l); });
  fill(a.s2, [&](std::size_t l) { return L.s2(l); });
  fill(a.s3, [&](std::size_t l) { return L.s3(l); });
  fill(a.s4, [&](std::size_t l) { return L.s4(l); });
  fill(a.s5, [&](std::size_t l) { return L.s5(l); });
  fill(a.s7, [&](std::size_t l) { return L.s7(l); });
  fill(a.s8, [&](std::size_t l) { return L.s8(l); });
  fill(a.s9, [&](std::size_t l) { return L.s9(l); });
  a.r.resize(L.d + 1);
  for (std::size_t l = 0; l <= L.d; ++l) a.r[l] = v[L.r(l)];
  a.s_lo = v[L.s_lo()];
  a.s_hi = v[L.s_hi()];
  a.s_sum = v[L.s_sum()];
  return a;
}

BigInt GadgetAssignment::exponent() const {
  BigInt e = 0;
  for (std::size_t l = xbin.size(); l-- > 0;) e = 2 * e + xbin[l];
  return e;
}

bool satisfies(const LinearRelation& c, const std::vector<BigInt>& x) {
  BigInt lhs = dot(c.coeffs, x);
  switch (c.rel) {
    case Relation::LessEq:
      return lhs <= c.rhs;
    case Relation::Eq:
      return lhs == c.rhs;
    case Relation::GreaterEq:
      return lhs >= c.rhs;
  }
  return false;
}

EqualityIlp build_equality_system(const GadgetParams& params) {
  params.validate();
  const Layout L{params.digits};
  const std::size_t d = params.digits;
  const std::vector<BigInt> p = level_powers(params);
  const BigInt top_bound = top_remainder_bound(params);

  // Bounds of the structural variables; the slack bounds follow from their
  // rows below.
  std::vector<BigInt> bounds(L.total(), 0);
  for (std::size_t l = 0; l < d; ++l) {
    bounds[L.xbin(l)] = 1;
    bounds[L.y(l)] = p[l];
    bounds[L.z(l)] = p[l] - 1;
  }
  for (std::size_t l = 0; l <= d; ++l) bounds[L.r(l)] = p[l] - 1;

  EqualityIlp sys;
  sys.rows.reserve(L.total() - 3 * d);
  auto add_row = [&](std::vector<BigInt> row, BigInt rhs) {
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(std::move(rhs));
  };
  auto add_slack_row = [&](std::vector<BigInt> row, BigInt rhs, std::size_t slack) {
    bounds[slack] = slack_bound_from_row(row, rhs, slack, bounds);
    add_row(std::move(row), std::move(rhs));
  };

  // Row for modulus power 0: r(0) = 1.
  {
    std::vector<BigInt> row(L.total(), 0);
    row[L.r(0)] = 1;
    add_row(std::move(row), 1);
  }
  // Rows for powers 9l+1 .. 9l+9.
  for (std::size_t l = 0; l < d; ++l) {
    const BigInt& g = p[l];
    {  // (g^2 + g) y(l) - (g+1) r(l+1) + s1(l) = g
      std::vector<BigInt> row(L.total(), 0);
      row[L.y(l)] = p[l + 1] + g;
      row[L.r(l + 1)] = -(g + 1);
      row[L.s1(l)] = 1;
      add_slack_row(std::move(row), g, L.s1(l));
    }
    {  // -g y(l) + r(l+1) + s2(l) = g - 1
      std::vector<BigInt> row(L.total(), 0);
      row[L.y(l)] = -g;
      row[L.r(l + 1)] = 1;
      row[L.s2(l)] = 1;
      add_slack_row(std::move(row), g - 1, L.s2(l));
    }
    {  // xbin(l) + s3(l) = 1
      std::vector<BigInt> row(L.total(), 0);
      row[L.xbin(l)] = 1;
      row[L.s3(l)] = 1;
      add_slack_row(std::move(row), 1, L.s3(l));
    }
    {  // xbin(l) - y(l) + s4(l) = 0
      std::vector<BigInt> row(L.total(), 0);
      row[L.xbin(l)] = 1;
      row[L.y(l)] = -1;
      row[L.s4(l)] = 1;
      add_slack_row(std::move(row), 0, L.s4(l));
    }
    {  // y(l) - (g+1) xbin(l) + s5(l) = 0
      std::vector<BigInt> row(L.total(), 0);
      row[L.y(l)] = 1;
      row[L.xbin(l)] = -(g + 1);
      row[L.s5(l)] = 1;
      add_slack_row(std::move(row), 0, L.s5(l));
    }
    {  // (g - 1) z(l) + r(l) - r(l+1) = 0   (no slack)
      std::vector<BigInt> row(L.total(), 0);
      row[L.z(l)] = g - 1;
      row[L.r(l)] = 1;
      row[L.r(l + 1)] = -1;
      add_row(std::move(row), 0);
    }
    {  // g xbin(l) - z(l) + r(l) + s7(l) = g
      std::vector<BigInt> row(L.total(), 0);
      row[L.xbin(l)] = g;
      row[L.z(l)] = -1;
      row[L.r(l)] = 1;
      row[L.s7(l)] = 1;
      add_slack_row(std::move(row), g, L.s7(l));
    }
    {  // -g xbin(l) + z(l) + s8(l) = 0
      std::vector<BigInt> row(L.total(), 0);
      row[L.xbin(l)] = -g;
      row[L.z(l)] = 1;
      row[L.s8(l)] = 1;
      add_slack_row(std::move(row), 0, L.s8(l));
    }
    {  // z(l) - r(l) + s9(l) = 0
      std::vector<BigInt> row(L.total(), 0);
      row[L.z(l)] = 1;
      row[L.r(l)] = -1;
      row[L.s9(l)] = 1;
      add_slack_row(std::move(row), 0, L.s9(l));
    }
  }
  {  // r(d) - s_lo = 2
    std::vector<BigInt> row(L.total(), 0);
    row[L.r(d)] = 1;
    row[L.s_lo()] = -1;
    add_slack_row(std::move(row), 2, L.s_lo());
  }
  {  // r(d) + s_hi = gamma^(2^d - 1)
    std::vector<BigInt> row(L.total(), 0);
    row[L.r(d)] = 1;
    row[L.s_hi()] = 1;
    add_slack_row(std::move(row), top_bound, L.s_hi());
  }
  // Closing box row: the sum of every variable, s_sum included, equals the
  // sum U of the bounds of all other variables.
  BigInt upper_sum = 0;
  for (std::size_t j = 0; j < L.total(); ++j)
    if (j != L.s_sum()) upper_sum += bounds[j];
  bounds[L.s_sum()] = upper_sum;
  add_row(std::vector<BigInt>(L.total(), 1), upper_sum);

  sys.upper = std::move(bounds);
  sys.var_names.resize(L.total());
  for (std::size_t l = 0; l < d; ++l) {
    sys.var_names[L.xbin(l)] = level_name("xbin", l);
    sys.var_names[L.y(l)] = level_name("y", l);
    sys.var_names[L.z(l)] = level_name("z", l);
    sys.var_names[L.s1(l)] = level_name("s1", l);
    sys.var_names[L.s2(l)] = level_name("s2", l);
    sys.var_names[L.s3(l)] = level_name("s3", l);
    sys.var_names[L.s4(l)] = level_name("s4", l);
    sys.var_names[L.s5(l)] = level_name("s5", l);
    sys.var_names[L.s7(l)] = level_name("s7", l);
    sys.var_names[L.s8(l)] = level_name("s8", l);
    sys.var_names[L.s9(l)] = level_name("s9", l);
  }
  for (std::size_t l = 0; l <= d; ++l) sys.var_names[L.r(l)] = level_name("r", l);
  sys.var_names[L.s_lo()] = "s_lo";
  sys.var_names[L.s_hi()] = "s_hi";
  sys.var_names[L.s_sum()] = "s_sum";
  sys.validate();
  return sys;
}

BigInt gadget_upper_sum(const GadgetParams& params) {
  // The box slack is bounded by U itself, so U sits in the last bound slot.
  return build_equality_system(params).upper.back();
}

BigInt gadget_big_m(const GadgetParams& params, const BigInt& upper_sum) {
  params.validate();
  if (upper_sum < 0) throw std::invalid_argument("negative upper bound sum");
  const BigInt gd = bpow(params.gamma, std::uint64_t{1} << params.digits);
  return 2 * gd * upper_sum + top_remainder_bound(params) + 2 * gd + 2;
}

KnapsackEquality build_knapsack_equation(const GadgetParams& params) {
  const EqualityIlp sys = build_equality_system(params);
  const BigInt m = gadget_big_m(params, sys.upper.back());
  KnapsackEquality kp = aggregate_rows(sys, m);
  for (const auto& w : kp.weights) {
    if (w <= 0) throw std::runtime_error("non-positive item size");
    if (w > kp.rhs) throw std::runtime_error("item size exceeds capacity");
  }
  return kp;
}

GadgetAssignment decimal_to_binary_trace(const GadgetParams& params,
                                         const BigInt& exponent) {
  params.validate();
  const std::size_t d = params.digits;
  const BigInt max_exponent = (BigInt(1) << d) - 1;
  if (exponent < 1 || exponent > max_exponent)
    throw std::invalid_argument("exponent out of range");
  const std::vector<BigInt> p = level_powers(params);

  GadgetAssignment a;
  a.xbin.assign(d, 0);
  a.y.assign(d, 0);
  a.z.assign(d, 0);
  a.r.assign(d + 1, 0);
  a.r[d] = bpow(params.gamma, static_cast<std::uint64_t>(exponent));
  for (std::size_t l = d; l-- > 0;) {
    if (a.r[l + 1] >= p[l]) {
      a.xbin[l] = 1;
      a.r[l] = a.r[l + 1] / p[l];  // exact: the exponent contains 2^l
      a.y[l] = a.r[l];
      a.z[l] = a.r[l];
    } else {
      a.xbin[l] = 0;
      a.r[l] = a.r[l + 1];
      a.y[l] = 0;
      a.z[l] = 0;
    }
  }

  // Slacks are forced by their rows.
  a.s1.resize(d);
  a.s2.resize(d);
  a.s3.resize(d);
  a.s4.resize(d);
  a.s5.resize(d);
  a.s7.resize(d);
  a.s8.resize(d);
  a.s9.resize(d);
  for (std::size_t l = 0; l < d; ++l) {
    const BigInt& g = p[l];
    a.s1[l] = g - (p[l + 1] + g) * a.y[l] + (g + 1) * a.r[l + 1];
    a.s2[l] = (g - 1) + g * a.y[l] - a.r[l + 1];
    a.s3[l] = 1 - a.xbin[l];
    a.s4[l] = a.y[l] - a.xbin[l];
    a.s5[l] = (g + 1) * a.xbin[l] - a.y[l];
    a.s7[l] = g - g * a.xbin[l] + a.z[l] - a.r[l];
    a.s8[l] = g * a.xbin[l] - a.z[l];
    a.s9[l] = a.r[l] - a.z[l];
  }
  a.s_lo = a.r[d] - 2;
  a.s_hi = top_remainder_bound(params) - a.r[d];

  const BigInt upper_sum = gadget_upper_sum(params);
  BigInt var_sum = 0;
  for (const auto& v : a.to_vector()) var_sum += v;
  a.s_sum = upper_sum - var_sum;  // to_vector saw s_sum = 0
  return a;
}

std::vector<GadgetAssignment> enumerate_gadget_solutions(
    const GadgetParams& params, EnumerationMode mode) {
  params.validate();
  const std::size_t d = params.digits;

  if (mode == EnumerationMode::Structural) {
    std::vector<GadgetAssignment> result;
    const std::uint64_t count = (std::uint64_t{1} << d) - 1;
    result.reserve(count);
    for (std::uint64_t i = 1; i <= count; ++i)
      result.push_back(decimal_to_binary_trace(params, BigInt(i)));
    return result;
  }

  const BigInt top_bound = top_remainder_bound(params);
  if (top_bound > 1000000)
    throw BudgetExceededError(
        "exhaustive enumeration budget exceeded: " + top_bound.str() +
            " candidates for r(d), limit 1000000",
        top_bound);

  const std::vector<BigInt> p = level_powers(params);
  const EqualityIlp sys = build_equality_system(params);
  const BigInt upper_sum = sys.upper.back();

  std::vector<GadgetAssignment> result;
  // Every solution is pinned by its r(d): the rows force y, xbin, z and the
  // next remainder level by level, so scanning all candidate r(d) values is
  // a complete search.
  for (BigInt candidate = 2; candidate <= top_bound; ++candidate) {
    GadgetAssignment a;
    a.xbin.assign(d, 0);
    a.y.assign(d, 0);
    a.z.assign(d, 0);
    a.r.assign(d + 1, 0);
    a.r[d] = candidate;
    bool feasible = true;
    for (std::size_t l = d; l-- > 0 && feasible;) {
      const BigInt& g = p[l];
      a.y[l] = a.r[l + 1] / g;
      if (a.y[l] == 0) {
        a.xbin[l] = 0;
        a.z[l] = 0;
        a.r[l] = a.r[l + 1];
      } else {
        a.xbin[l] = 1;
        // z(l) = r(l) and g * r(l) = r(l+1): reject when g does not divide
        // the remainder.
        BigInt q, rem;
        boost::multiprecision::divide_qr(a.r[l + 1], g, q, rem);
        if (rem != 0) {
          feasible = false;
          break;
        }
        a.z[l] = q;
        a.r[l] = q;
      }
    }
    if (!feasible || a.r[0] != 1) continue;

    a.s1.resize(d);
    a.s2.resize(d);
    a.s3.resize(d);
    a.s4.resize(d);
    a.s5.resize(d);
    a.s7.resize(d);
    a.s8.resize(d);
    a.s9.resize(d);
    for (std::size_t l = 0; l < d; ++l) {
      const BigInt& g = p[l];
      a.s1[l] = g - (p[l + 1] + g) * a.y[l] + (g + 1) * a.r[l + 1];
      a.s2[l] = (g - 1) + g * a.y[l] - a.r[l + 1];
      a.s3[l] = 1 - a.xbin[l];
      a.s4[l] = a.y[l] - a.xbin[l];
      a.s5[l] = (g + 1) * a.xbin[l] - a.y[l];
      a.s7[l] = g - g * a.xbin[l] + a.z[l] - a.r[l];
      a.s8[l] = g * a.xbin[l] - a.z[l];
      a.s9[l] = a.r[l] - a.z[l];
    }
    a.s_lo = a.r[d] - 2;
    a.s_hi = top_bound - a.r[d];
    BigInt var_sum = 0;
    for (const auto& v : a.to_vector()) var_sum += v;
    a.s_sum = upper_sum - var_sum;

    if (check_solution(sys, a.to_vector())) result.push_back(std::move(a));
  }
  return result;
}

std::vector<LinearRelation> build_inequality_system(const GadgetParams& params) {
  params.validate();
  const std::size_t d = params.digits;
  const std::size_t n = 4 * d + 1;  // xbin, y, z, r(0..d)
  const std::vector<BigInt> p = level_powers(params);
  auto xbin = [&](std::size_t l) { return l; };
  auto y = [&](std::size_t l) { return d + l; };
  auto z = [&](std::size_t l) { return 2 * d + l; };
  auto r = [&](std::size_t l) { return 3 * d + l; };

  std::vector<LinearRelation> cons;
  cons.reserve(13 * d + 3);
  auto add = [&](std::size_t l, int k, std::vector<std::pair<std::size_t, BigInt>> terms,
                 Relation rel, BigInt rhs) {
    LinearRelation c;
    c.coeffs.assign(n, 0);
    for (auto& [j, v] : terms) c.coeffs[j] = std::move(v);
    c.rel = rel;
    c.rhs = std::move(rhs);
    c.label = "C(" + std::to_string(l) + "," + std::to_string(k) + ")";
    cons.push_back(std::move(c));
  };

  for (std::size_t l = 0; l < d; ++l) {
    const BigInt& g = p[l];
    add(l, 1, {{y(l), 1}}, Relation::GreaterEq, 0);
    // denominators cleared by g (g+1)
    add(l, 2, {{y(l), g * (g + 1)}, {r(l + 1), -(g + 1)}}, Relation::LessEq, g);
    // denominators cleared by g
    add(l, 3, {{y(l), g}, {r(l + 1), -1}}, Relation::GreaterEq, -(g - 1));
    add(l, 4, {{xbin(l), 1}}, Relation::GreaterEq, 0);
    add(l, 5, {{xbin(l), 1}}, Relation::LessEq, 1);
    add(l, 6, {{xbin(l), 1}, {y(l), -1}}, Relation::LessEq, 0);
    add(l, 7, {{y(l), 1}, {xbin(l), -(g + 1)}}, Relation::LessEq, 0);
    add(l, 8, {{r(l), 1}}, Relation::GreaterEq, 0);
    add(l, 9, {{z(l), g - 1}, {r(l), 1}, {r(l + 1), -1}}, Relation::Eq, 0);
    add(l, 10, {{z(l), 1}}, Relation::GreaterEq, 0);
    add(l, 11, {{z(l), 1}, {xbin(l), -g}, {r(l), -1}}, Relation::GreaterEq, -g);
    add(l, 12, {{z(l), 1}, {xbin(l), -g}}, Relation::LessEq, 0);
    add(l, 13, {{z(l), 1}, {r(l), -1}}, Relation::LessEq, 0);
  }
  {
    LinearRelation c;  // r(0) = 1
    c.coeffs.assign(n, 0);
    c.coeffs[r(0)] = 1;
    c.rel = Relation::Eq;
    c.rhs = 1;
    c.label = "C0";
    cons.push_back(std::move(c));
  }
  {
    LinearRelation c;  // r(d) >= 2
    c.coeffs.assign(n, 0);
    c.coeffs[r(d)] = 1;
    c.rel = Relation::GreaterEq;
    c.rhs = 2;
    c.label = "C(alpha-3)";
    cons.push_back(std::move(c));
  }
  {
    LinearRelation c;  // r(d) <= gamma^(2^d - 1)
    c.coeffs.assign(n, 0);
    c.coeffs[r(d)] = 1;
    c.rel = Relation::LessEq;
    c.rhs = top_remainder_bound(params);
    c.label = "C(alpha-2)";
    cons.push_back(std::move(c));
  }
  return cons;
}

EqualityIlp build_simplified_system(const GadgetParams& params) {
  params.validate();
  const std::size_t d = params.digits;
  const std::size_t n = 8 * d + 3;
  const std::vector<BigInt> p = level_powers(params);
  const BigInt top_bound = top_remainder_bound(params);
  auto xbin = [&](std::size_t l) { return l; };
  auto y = [&](std::size_t l) { return d + l; };
  auto r = [&](std::size_t l) { return 2 * d + l; };  // l in [0, d]
  auto s1 = [&](std::size_t l) { return 3 * d + 1 + l; };
  auto s2 = [&](std::size_t l) { return 4 * d + 1 + l; };
  auto s3 = [&](std::size_t l) { return 5 * d + 1 + l; };
  auto s4 = [&](std::size_t l) { return 6 * d + 1 + l; };
  auto s5 = [&](std::size_t l) { return 7 * d + 1 + l; };
  const std::size_t s_lo = 8 * d + 1;
  const std::size_t s_hi = 8 * d + 2;

  std::vector<BigInt> bounds(n, 0);
  for (std::size_t l = 0; l < d; ++l) {
    bounds[xbin(l)] = 1;
    bounds[y(l)] = p[l];
  }
  for (std::size_t l = 0; l <= d; ++l) bounds[r(l)] = p[l] - 1;

  EqualityIlp sys;
  auto add_row = [&](std::vector<BigInt> row, BigInt rhs) {
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(std::move(rhs));
  };
  auto add_slack_row = [&](std::vector<BigInt> row, BigInt rhs, std::size_t slack) {
    bounds[slack] = slack_bound_from_row(row, rhs, slack, bounds);
    add_row(std::move(row), std::move(rhs));
  };

  {
    std::vector<BigInt> row(n, 0);
    row[r(0)] = 1;
    add_row(std::move(row), 1);
  }
  for (std::size_t l = 0; l < d; ++l) {
    const BigInt& g = p[l];
    {
      std::vector<BigInt> row(n, 0);
      row[y(l)] = p[l + 1] + g;
      row[r(l + 1)] = -(g + 1);
      row[s1(l)] = 1;
      add_slack_row(std::move(row), g, s1(l));
    }
    {
      std::vector<BigInt> row(n, 0);
      row[y(l)] = -g;
      row[r(l + 1)] = 1;
      row[s2(l)] = 1;
      add_slack_row(std::move(row), g - 1, s2(l));
    }
    {
      std::vector<BigInt> row(n, 0);
      row[xbin(l)] = 1;
      row[s3(l)] = 1;
      add_slack_row(std::move(row), 1, s3(l));
    }
    {
      std::vector<BigInt> row(n, 0);
      row[xbin(l)] = 1;
      row[y(l)] = -1;
      row[s4(l)] = 1;
      add_slack_row(std::move(row), 0, s4(l));
    }
    {
      std::vector<BigInt> row(n, 0);
      row[y(l)] = 1;
      row[xbin(l)] = -(g + 1);
      row[s5(l)] = 1;
      add_slack_row(std::move(row), 0, s5(l));
    }
    {  // y takes the place of z in the remainder recursion
      std::vector<BigInt> row(n, 0);
      row[y(l)] = g - 1;
      row[r(l)] = 1;
      row[r(l + 1)] = -1;
      add_row(std::move(row), 0);
    }
  }
  {
    std::vector<BigInt> row(n, 0);
    row[r(d)] = 1;
    row[s_lo] = -1;
    add_slack_row(std::move(row), 2, s_lo);
  }
  {
    std::vector<BigInt> row(n, 0);
    row[r(d)] = 1;
    row[s_hi] = 1;
    add_slack_row(std::move(row), top_bound, s_hi);
  }

  sys.upper = std::move(bounds);
  sys.var_names.resize(n);
  for (std::size_t l = 0; l < d; ++l) {
    sys.var_names[xbin(l)] = level_name("xbin", l);
    sys.var_names[y(l)] = level_name("y", l);
    sys.var_names[s1(l)] = level_name("s1", l);
    sys.var_names[s2(l)] = level_name("s2", l);
    sys.var_names[s3(l)] = level_name("s3", l);
    sys.var_names[s4(l)] = level_name("s4", l);
    sys.var_names[s5(l)] = level_name("s5", l);
  }
  for (std::size_t l = 0; l <= d; ++l) sys.var_names[r(l)] = level_name("r", l);
  sys.var_names[s_lo] = "s_lo";
  sys.var_names[s_hi] = "s_hi";
  sys.validate();
  return sys;
}

bool check_observations(const GadgetParams& params, const GadgetAssignment& a) {
  params.validate();
  const std::size_t d = params.digits;
  if (a.xbin.size() != d || a.y.size() != d || a.z.size() != d ||
      a.r.size() != d + 1)
    return false;
  const std::vector<BigInt> p = level_powers(params);
  for (std::size_t l = 0; l <= d; ++l) {
    if (a.r[l] > p[l] - 1 || a.r[l] < 0) return false;
  }
  for (std::size_t l = 0; l < d; ++l) {
    const BigInt& g = p[l];
    const BigInt& above = a.r[l + 1];
    const bool high = above >= g;
    if (high) {
      if (a.y[l] < 1 || a.xbin[l] != 1) return false;
      if (above % g != 0 || a.r[l] != above / g) return false;
    } else {
      if (a.y[l] != 0 || a.xbin[l] != 0) return false;
      if (a.r[l] != above) return false;
    }
    // y(l) must sit in the unit-width window around above / g, i.e. both
    // cleared inequalities hold:
    //   g (g+1) y <= (g+1) r(l+1) + g   and   g y >= r(l+1) - (g-1).
    if (g * (g + 1) * a.y[l] > (g + 1) * above + g) return false;
    if (g * a.y[l] < above - (g - 1)) return false;
  }
  return true;
}

}  // namespace aggpack
