#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggpack/aggregation.hpp"
#include "aggpack/errors.hpp"
#include "aggpack/gadget.hpp"
#include "aggpack/verifier.hpp"

using namespace aggpack;

namespace {

std::vector<BigInt> big_vec(std::initializer_list<long long> values) {
  std::vector<BigInt> v;
  for (long long x : values) v.emplace_back(x);
  return v;
}

// (xbin, y, z, r) prefix of the canonical order, i.e. the variables of the
// inequality system.
std::vector<BigInt> structural_prefix(const GadgetAssignment& a) {
  std::vector<BigInt> v;
  v.insert(v.end(), a.xbin.begin(), a.xbin.end());
  v.insert(v.end(), a.y.begin(), a.y.end());
  v.insert(v.end(), a.z.begin(), a.z.end());
  v.insert(v.end(), a.r.begin(), a.r.end());
  return v;
}

// Variable order of the simplified system (no z, no s7..s9, no box slack).
std::vector<BigInt> simplified_vector(const GadgetAssignment& a) {
  std::vector<BigInt> v;
  v.insert(v.end(), a.xbin.begin(), a.xbin.end());
  v.insert(v.end(), a.y.begin(), a.y.end());
  v.insert(v.end(), a.r.begin(), a.r.end());
  v.insert(v.end(), a.s1.begin(), a.s1.end());
  v.insert(v.end(), a.s2.begin(), a.s2.end());
  v.insert(v.end(), a.s3.begin(), a.s3.end());
  v.insert(v.end(), a.s4.begin(), a.s4.end());
  v.insert(v.end(), a.s5.begin(), a.s5.end());
  v.push_back(a.s_lo);
  v.push_back(a.s_hi);
  return v;
}

const std::vector<GadgetParams>& small_grid() {
  static const std::vector<GadgetParams> grid = {
      {1, BigInt(2)}, {1, BigInt(3)}, {1, BigInt(5)}, {2, BigInt(2)},
      {2, BigInt(3)}, {2, BigInt(5)}, {3, BigInt(2)}, {3, BigInt(5)}};
  return grid;
}

}  // namespace

TEST_CASE("worked example columns") {
  const GadgetParams params{3, BigInt(5)};

  const GadgetAssignment five = decimal_to_binary_trace(params, BigInt(5));
  CHECK(five.xbin == big_vec({1, 0, 1}));
  CHECK(five.y == big_vec({1, 0, 5}));
  CHECK(five.z == big_vec({1, 0, 5}));
  CHECK(five.r == big_vec({1, 5, 5, 3125}));

  const GadgetAssignment one = decimal_to_binary_trace(params, BigInt(1));
  CHECK(one.xbin == big_vec({1, 0, 0}));
  CHECK(one.y == big_vec({1, 0, 0}));
  CHECK(one.r == big_vec({1, 5, 5, 5}));

  const GadgetAssignment seven = decimal_to_binary_trace(params, BigInt(7));
  CHECK(seven.xbin == big_vec({1, 1, 1}));
  CHECK(seven.y == big_vec({1, 5, 125}));
  CHECK(seven.r == big_vec({1, 5, 125, 78125}));

  const GadgetAssignment four = decimal_to_binary_trace(params, BigInt(4));
  CHECK(four.y[2] == 1);
  CHECK(four.xbin[2] == 1);
  CHECK(four.r[2] == 1);
}

TEST_CASE("trace rejects exponents outside [1, 2^d - 1]") {
  const GadgetParams params{3, BigInt(5)};
  CHECK_THROWS_WITH_AS(decimal_to_binary_trace(params, BigInt(0)),
                       "exponent out of range", std::invalid_argument);
  CHECK_THROWS_AS(decimal_to_binary_trace(params, BigInt(8)),
                  std::invalid_argument);
  CHECK_NOTHROW(decimal_to_binary_trace(params, BigInt(7)));
}

TEST_CASE("traces solve the equality system and encode their exponent") {
  for (const auto& params : small_grid()) {
    const EqualityIlp sys = build_equality_system(params);
    const std::uint64_t count = (std::uint64_t{1} << params.digits) - 1;
    for (std::uint64_t i = 1; i <= count; ++i) {
      const GadgetAssignment a = decimal_to_binary_trace(params, BigInt(i));
      CHECK(check_solution(sys, a.to_vector()));
      CHECK(a.exponent() == i);
      CHECK(check_observations(params, a));
    }
  }
}

TEST_CASE("inequality system shape and satisfaction") {
  CHECK(build_inequality_system(GadgetParams{1, BigInt(2)}).size() == 16);
  CHECK(build_inequality_system(GadgetParams{3, BigInt(5)}).size() == 42);

  for (const auto& params : small_grid()) {
    const auto relations = build_inequality_system(params);
    CHECK(relations.size() == 13 * params.digits + 3);
    const std::uint64_t count = (std::uint64_t{1} << params.digits) - 1;
    for (std::uint64_t i = 1; i <= count; ++i) {
      const auto prefix =
          structural_prefix(decimal_to_binary_trace(params, BigInt(i)));
      for (const auto& relation : relations)
        CHECK_MESSAGE(satisfies(relation, prefix), relation.label);
    }
  }
}

TEST_CASE("equality system shape and bounds") {
  const GadgetParams small{1, BigInt(2)};
  const EqualityIlp sys = build_equality_system(small);
  CHECK(sys.num_constraints() == 13);
  CHECK(sys.num_vars() == 16);
  CHECK(sys.upper.back() == 39);  // U for d=1, gamma=2

  const GadgetParams two_five{2, BigInt(5)};
  const EqualityIlp sys25 = build_equality_system(two_five);
  CHECK(check_solution(sys25,
                       decimal_to_binary_trace(two_five, BigInt(3)).to_vector()));
  // slack of the remainder-transfer row: 2 gamma^(2^l) - 1
  CHECK(sys25.upper[9 * 2 + 1 + 0] == 9);   // s7(0), gamma^1 = 5
  CHECK(sys25.upper[9 * 2 + 1 + 1] == 49);  // s7(1), gamma^2 = 25
  CHECK(sys25.var_names[9 * 2 + 1] == "s7(0)");
}

TEST_CASE("gadget modulus formula and dominance") {
  const GadgetParams params{1, BigInt(2)};
  CHECK(gadget_big_m(params, BigInt(0)) == 12);
  CHECK(gadget_big_m(params, BigInt(1)) == 20);
  CHECK_THROWS_AS(gadget_big_m(params, BigInt(-1)), std::invalid_argument);

  // The closed form over-estimates the generic modulus requirement for the
  // system it aggregates: Delta * U + max non-top rhs + Delta + 2, with U the
  // right hand side of the box row.
  for (std::size_t d : {std::size_t{1}, std::size_t{2}}) {
    for (int g : {2, 3, 5}) {
      const GadgetParams p{d, BigInt(g)};
      const EqualityIlp sys = build_equality_system(p);
      const BigInt delta = infinity_norm(sys.rows);
      const BigInt box_rhs = sys.rhs.back();
      BigInt max_rhs = 0;
      for (std::size_t i = 0; i + 1 < sys.rhs.size(); ++i) {
        BigInt mag = sys.rhs[i] < 0 ? BigInt(-sys.rhs[i]) : sys.rhs[i];
        if (mag > max_rhs) max_rhs = mag;
      }
      const BigInt required = delta * box_rhs + max_rhs + delta + 2;
      CHECK(gadget_big_m(p, sys.upper.back()) >= required);
    }
  }
}

TEST_CASE("knapsack equation groups weights per variable") {
  for (const auto& params :
       {GadgetParams{1, BigInt(2)}, GadgetParams{2, BigInt(3)}}) {
    const EqualityIlp sys = build_equality_system(params);
    const BigInt m = gadget_big_m(params, sys.upper.back());
    const KnapsackEquality kp = build_knapsack_equation(params);
    REQUIRE(kp.num_vars() == sys.num_vars());
    for (const auto& w : kp.weights) {
      CHECK(w > 0);
      CHECK(w <= kp.rhs);
    }
    // Grouped weight of a binary digit, straight from the weighted rows.
    const std::size_t alpha = 9 * params.digits + 4;
    BigInt g = params.gamma;
    for (std::size_t l = 0; l < params.digits; ++l) {
      const BigInt expected = bpow(m, 9 * l + 3) + bpow(m, 9 * l + 4) -
                              (g + 1) * bpow(m, 9 * l + 5) +
                              g * bpow(m, 9 * l + 7) - g * bpow(m, 9 * l + 8) +
                              bpow(m, alpha - 1);
      CHECK(kp.weights[l] == expected);
      g *= g;
    }
  }
}

TEST_CASE("knapsack weights for d=1, gamma=2 match the frozen values") {
  // Reconstructed independently from the constraint rows (U = 39, M = 324).
  const KnapsackEquality kp = build_knapsack_equation(GadgetParams{1, BigInt(2)});
  REQUIRE(kp.num_vars() == 16);
  CHECK(kp.rhs == parse_bigint("52200381310584800472698363910361"));
  CHECK(kp.weights[0] == parse_bigint("1338258844810265256281365934400"));   // xbin(0)
  CHECK(kp.weights[3] == parse_bigint("1338258805706362597342163914753"));   // r(0)
  CHECK(kp.weights[4] == parse_bigint("1342402021822722271015048808004"));   // r(1)
  CHECK(kp.weights[15] == parse_bigint("1338258845052394702439737982976"));  // s_sum = M^12
  CHECK(kp.weights[15] == bpow(BigInt(324), 12));
}

TEST_CASE("knapsack solution sets match the equality system") {
  // d=1, gamma=2: single solution, the trace of exponent 1.
  const GadgetParams params{1, BigInt(2)};
  const auto solutions =
      enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
  REQUIRE(solutions.size() == 1);
  CHECK(solutions[0].to_vector() ==
        decimal_to_binary_trace(params, BigInt(1)).to_vector());

  const KnapsackEquality kp = build_knapsack_equation(params);
  CHECK(dot(kp.weights, solutions[0].to_vector()) == kp.rhs);

  // d=2, gamma=2: three solutions.
  CHECK(enumerate_gadget_solutions(GadgetParams{2, BigInt(2)},
                                   EnumerationMode::Exhaustive)
            .size() == 3);
}

TEST_CASE("exhaustive enumeration agrees with the structural traces") {
  std::vector<GadgetParams> grid = small_grid();
  grid.push_back(GadgetParams{4, BigInt(2)});  // 2^15 candidates, 15 solutions
  for (const auto& params : grid) {
    const auto exhaustive =
        enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
    const auto structural =
        enumerate_gadget_solutions(params, EnumerationMode::Structural);
    REQUIRE(exhaustive.size() == structural.size());
    REQUIRE(exhaustive.size() == (std::uint64_t{1} << params.digits) - 1);
    for (std::size_t i = 0; i < exhaustive.size(); ++i) {
      CHECK(exhaustive[i].to_vector() == structural[i].to_vector());
      CHECK(exhaustive[i].exponent() == i + 1);
      CHECK(exhaustive[i].y == exhaustive[i].z);
    }
  }
}

TEST_CASE("exhaustive enumeration per-candidate results") {
  const auto sols22 =
      enumerate_gadget_solutions(GadgetParams{2, BigInt(2)},
                                 EnumerationMode::Exhaustive);
  REQUIRE(sols22.size() == 3);
  CHECK(sols22[0].r[2] == 2);
  CHECK(sols22[1].r[2] == 4);
  CHECK(sols22[2].r[2] == 8);

  const auto sols15 = enumerate_gadget_solutions(GadgetParams{1, BigInt(5)},
                                                 EnumerationMode::Exhaustive);
  REQUIRE(sols15.size() == 1);
  CHECK(sols15[0].r[1] == 5);

  const auto sols25 = enumerate_gadget_solutions(GadgetParams{2, BigInt(5)},
                                                 EnumerationMode::Exhaustive);
  REQUIRE(sols25.size() == 3);
  CHECK(sols25[0].r[2] == 5);
  CHECK(sols25[1].r[2] == 25);
  CHECK(sols25[2].r[2] == 125);
  for (const auto& sol : sols25) CHECK(sol.r[2] != 29);
}

TEST_CASE("exhaustive enumeration budget") {
  try {
    enumerate_gadget_solutions(GadgetParams{3, BigInt(8)},
                               EnumerationMode::Exhaustive);
    FAIL("expected BudgetExceededError");
  } catch (const BudgetExceededError& e) {
    CHECK(e.required() == bpow(BigInt(8), 7));
    CHECK(std::string(e.what()).find("2097152") != std::string::npos);
  }
}

TEST_CASE("simplified system accepts the non-power assignment") {
  const GadgetParams params{2, BigInt(5)};
  const EqualityIlp simplified = build_simplified_system(params);
  CHECK(simplified.num_constraints() == 6 * 2 + 3);
  CHECK(simplified.num_vars() == 8 * 2 + 3);

  // r(2) = 29 = no power of 5, yet all simplified rows hold.
  const SolutionVector counterexample = {
      BigInt(1), BigInt(1),                        // xbin
      BigInt(1), BigInt(1),                        // y
      BigInt(1), BigInt(5), BigInt(29),            // r
      BigInt(5), BigInt(129),                      // s1
      BigInt(4), BigInt(20),                       // s2
      BigInt(0), BigInt(0),                        // s3
      BigInt(0), BigInt(0),                        // s4
      BigInt(5), BigInt(25),                       // s5
      BigInt(27), BigInt(96)};                     // s_lo, s_hi
  CHECK(check_solution(simplified, counterexample));

  // The full system forces z from the remainder rows; z(1) = 1 then breaks
  // the lower bound z(1) >= r(1) when the digit is set.
  const std::vector<BigInt> full_prefix = {
      BigInt(1), BigInt(1),              // xbin
      BigInt(1), BigInt(1),              // y
      BigInt(1), BigInt(1),              // z, forced by the equality rows
      BigInt(1), BigInt(5), BigInt(29)}; // r
  const auto relations = build_inequality_system(params);
  bool violated = false;
  std::string violated_label;
  for (const auto& relation : relations) {
    if (!satisfies(relation, full_prefix)) {
      violated = true;
      violated_label = relation.label;
      break;
    }
  }
  CHECK(violated);
  CHECK(violated_label == "C(1,11)");
}

TEST_CASE("full-system solutions also solve the simplified system") {
  for (const auto& params : small_grid()) {
    if (params.digits > 2) continue;
    const EqualityIlp simplified = build_simplified_system(params);
    for (const auto& sol :
         enumerate_gadget_solutions(params, EnumerationMode::Exhaustive))
      CHECK(check_solution(simplified, simplified_vector(sol)));
  }
}

TEST_CASE("observation checker rejects mutations") {
  const GadgetParams params{3, BigInt(5)};
  GadgetAssignment a = decimal_to_binary_trace(params, BigInt(5));
  CHECK(check_observations(params, a));
  a.r[1] += 1;
  CHECK_FALSE(check_observations(params, a));
}

TEST_CASE("the y window has width below one and at least 1 - 1/g") {
  for (const auto& params : small_grid()) {
    BigInt g = params.gamma;
    for (std::size_t l = 0; l < params.digits; ++l) {
      // width = 1/(g+1) + (g-1)/g as the exact fraction num/den
      const BigInt num = g * g + g - 1;
      const BigInt den = g * g + g;
      CHECK(num < den);
      CHECK(num * g >= (g - 1) * den);
      g *= g;
    }
  }
}

TEST_CASE("gadget aggregation terms vanish exactly on solutions") {
  for (const auto& params : small_grid()) {
    const EqualityIlp sys = build_equality_system(params);
    const BigInt m = gadget_big_m(params, sys.upper.back());
    const auto mode = params.digits <= 2 ? EnumerationMode::Exhaustive
                                         : EnumerationMode::Structural;
    for (const auto& sol : enumerate_gadget_solutions(params, mode)) {
      for (const auto& term : term_decompose(sys, m, sol.to_vector()))
        CHECK(term == 0);
    }
  }
}

TEST_CASE("random in-box vectors do not satisfy the gadget knapsack") {
  const GadgetParams params{1, BigInt(2)};
  const EqualityIlp sys = build_equality_system(params);
  const KnapsackEquality kp = build_knapsack_equation(params);
  const auto known =
      enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
  const RejectionReport report =
      reject_random_nonsolutions(kp, sys.upper, 1000, 424242);
  for (const auto& sample : report.satisfying) {
    bool matches_known = false;
    for (const auto& sol : known)
      matches_known = matches_known || sol.to_vector() == sample;
    CHECK(matches_known);
  }
}

TEST_CASE("round trip through the canonical vector") {
  const GadgetParams params{3, BigInt(5)};
  const GadgetAssignment a = decimal_to_binary_trace(params, BigInt(6));
  const GadgetAssignment back =
      GadgetAssignment::from_vector(params, a.to_vector());
  CHECK(back.to_vector() == a.to_vector());
  CHECK(back.r == a.r);
  CHECK(back.s_sum == a.s_sum);
}
