// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Exit code 0 only when every check passes.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aggpack/aggregation.hpp"
#include "aggpack/cli.hpp"
#include "aggpack/gadget.hpp"
#include "aggpack/hard_instance.hpp"
#include "aggpack/verifier.hpp"

using namespace aggpack;

namespace {

struct Harness {
  int failures = 0;

  void run(int index, const std::string& name,
           const std::function<bool(std::string&)>& check) {
    std::string detail;
    bool pass = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      pass = check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::cout << (pass ? "PASS" : "FAIL") << ' ' << index << ' ' << name << " ("
              << elapsed / 1000.0 << "s)";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << '\n';
    if (!pass) ++failures;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

bool criterion_example1(std::string& detail) {
  std::ostringstream out, err;
  const int code =
      cli::run({"demo", "example1", "--gamma", "5"}, out, err);
  if (code != 0) {
    detail = "demo exited with " + std::to_string(code);
    return false;
  }
  const std::string golden =
      slurp(std::string(AGGPACK_GOLDEN_DIR) + "/example1_gamma5.txt");
  if (golden.empty()) {
    detail = "golden file missing";
    return false;
  }
  if (out.str() != golden) {
    detail = "output differs from the golden transcription";
    return false;
  }
  return true;
}

bool criterion_gadget_counts(std::string& detail) {
  const std::vector<GadgetParams> grid = {
      {1, BigInt(2)}, {1, BigInt(3)}, {1, BigInt(5)}, {2, BigInt(2)},
      {2, BigInt(3)}, {2, BigInt(5)}, {3, BigInt(2)}};
  for (const auto& params : grid) {
    const auto solutions =
        enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
    const std::uint64_t expected = (std::uint64_t{1} << params.digits) - 1;
    if (solutions.size() != expected) {
      detail = "d=" + std::to_string(params.digits) + " gamma=" +
               params.gamma.str() + ": " + std::to_string(solutions.size()) +
               " solutions, expected " + std::to_string(expected);
      return false;
    }
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      if (solutions[i].exponent() != BigInt(i + 1) ||
          solutions[i].r[params.digits] !=
              bpow(params.gamma, static_cast<std::uint64_t>(i + 1))) {
        detail = "solution " + std::to_string(i) + " encodes the wrong exponent";
        return false;
      }
    }
  }
  return true;
}

bool criterion_counterexample(std::string& detail) {
  const GadgetParams params{2, BigInt(5)};
  const SolutionVector counterexample = {
      BigInt(1), BigInt(1), BigInt(1), BigInt(1),
      BigInt(1), BigInt(5), BigInt(29),
      BigInt(5), BigInt(129), BigInt(4), BigInt(20),
      BigInt(0), BigInt(0), BigInt(0), BigInt(0),
      BigInt(5), BigInt(25), BigInt(27), BigInt(96)};
  if (!check_solution(build_simplified_system(params), counterexample)) {
    detail = "the simplified system rejected the r(2)=29 assignment";
    return false;
  }

  // Full system: the remainder rows force z = (1, 1) for this assignment,
  // which violates the digit-set lower bound on z(1).
  const std::vector<BigInt> full_prefix = {
      BigInt(1), BigInt(1), BigInt(1), BigInt(1),
      BigInt(1), BigInt(1), BigInt(1), BigInt(5), BigInt(29)};
  bool rejected = false;
  for (const auto& relation : build_inequality_system(params))
    if (!satisfies(relation, full_prefix)) rejected = true;
  if (!rejected) {
    detail = "the full system accepted the r(2)=29 assignment";
    return false;
  }

  const auto solutions =
      enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
  if (solutions.size() != 3) {
    detail = "expected 3 solutions over r(2) in [2,125]";
    return false;
  }
  const std::vector<BigInt> tops = {solutions[0].r[2], solutions[1].r[2],
                                    solutions[2].r[2]};
  if (tops != std::vector<BigInt>{BigInt(5), BigInt(25), BigInt(125)}) {
    detail = "exhaustive enumeration returned unexpected r(2) values";
    return false;
  }
  return true;
}

bool criterion_equivalence(std::string& detail) {
  SplitMix64 rng(20240917);
  for (int i = 0; i < 100; ++i) {
    const EqualityIlp ilp = random_test_ilp(rng);
    const EquivalenceReport report = verify_equivalence(aggregate(ilp), 4000000);
    if (!report.identical) {
      detail = "instance " + std::to_string(i) + " disagrees: extended " +
               std::to_string(report.extended_solutions.size()) +
               " vs aggregate " +
               std::to_string(report.aggregate_solutions.size());
      return false;
    }
  }
  return true;
}

bool criterion_dominance(std::string& detail) {
  SplitMix64 rng(20240918);
  std::uint64_t sampled = 0;
  for (int instance = 0; instance < 100; ++instance) {
    const AggregationContext ctx = aggregate(random_test_ilp(rng));
    for (int s = 0; s < 100; ++s) {
      SolutionVector x;
      for (const auto& u : ctx.extended.upper) x.push_back(uniform_bigint(rng, u));
      ++sampled;
      const std::vector<BigInt> terms = term_decompose(ctx, x);
      std::size_t top = terms.size();
      for (std::size_t i = terms.size(); i-- > 0;)
        if (terms[i] != 0) {
          top = i;
          break;
        }
      if (top == terms.size()) continue;
      BigInt lower = 0;
      for (std::size_t i = 0; i < top; ++i) lower += terms[i];
      if (!(abs_value(lower) < abs_value(terms[top]))) {
        detail = "dominance violated on sample " + std::to_string(sampled);
        return false;
      }
    }
  }
  detail = std::to_string(sampled) + " samples";
  return sampled >= 10000;
}

bool criterion_conic(std::string& detail) {
  for (std::size_t dprime : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const PointSet ps = point_set(dprime);
    const ConicSearchResult result = conic_combinations(
        ps, target_vector(ps), BigInt(1) << (dprime - 1));
    if (result.solutions.size() != 1) {
      detail = "dprime=" + std::to_string(dprime) + ": " +
               std::to_string(result.solutions.size()) + " combinations";
      return false;
    }
    for (const auto& mu : result.solutions[0])
      if (mu != 1) {
        detail = "dprime=" + std::to_string(dprime) + ": not the all-ones vector";
        return false;
      }
  }
  return true;
}

bool criterion_hard_instance_desk_scale(std::string& detail) {
  const HardInstance two = build_bp_instance(2);
  if (two.instance.num_item_types() != 28 || two.equality_configs.size() != 3) {
    detail = "dprime=2 shape mismatch";
    return false;
  }
  if (dot(two.instance.sizes, two.target_multiplicities) !=
      BigInt(3) * two.instance.capacity) {
    detail = "dprime=2 mass balance broken";
    return false;
  }
  const SupportReport s2 = min_support_packing(two, SearchMode::Structural);
  const SupportReport e2 = min_support_packing(two, SearchMode::Exhaustive);
  if (s2.min_support != 3 || e2.min_support != 3) {
    detail = "dprime=2 min support " + std::to_string(s2.min_support) + "/" +
             std::to_string(e2.min_support);
    return false;
  }

  const HardInstance three = build_bp_instance(3);
  if (three.instance.num_item_types() != 40) {
    detail = "dprime=3 has " +
             std::to_string(three.instance.num_item_types()) + " item types";
    return false;
  }
  const SupportReport s3 = min_support_packing(three, SearchMode::Structural);
  if (s3.min_support != 7) {
    detail = "dprime=3 min support " + std::to_string(s3.min_support);
    return false;
  }
  return true;
}

bool criterion_bridge(std::string& detail) {
  for (std::size_t dprime : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const HardInstance hi = build_bp_instance(dprime);
    std::vector<std::vector<BigInt>> projected;
    for (const auto& config : hi.equality_configs)
      projected.push_back(project(config, hi.params));
    std::sort(projected.begin(), projected.end());
    const PointSet ps = point_set(dprime);
    std::vector<std::vector<BigInt>> expected(ps.points.begin() + 1,
                                              ps.points.end());
    std::sort(expected.begin(), expected.end());
    if (projected != expected) {
      detail = "dprime=" + std::to_string(dprime) + " projection mismatch";
      return false;
    }
  }
  return true;
}

bool criterion_negative_sampling(std::string& detail) {
  const GadgetParams params{2, BigInt(12)};
  const EqualityIlp sys = build_equality_system(params);
  const KnapsackEquality kp = build_knapsack_equation(params);
  const auto known =
      enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
  const RejectionReport report =
      reject_random_nonsolutions(kp, sys.upper, 10000, 20240919);
  for (const auto& sample : report.satisfying) {
    bool matches = false;
    for (const auto& sol : known) matches = matches || sol.to_vector() == sample;
    if (!matches) {
      detail = "a random vector satisfied the knapsack outside X*";
      return false;
    }
  }
  detail = std::to_string(report.satisfied_count) + " of 10000 draws satisfied";
  return true;
}

}  // namespace

int main() {
  Harness h;
  h.run(1, "example1-byte-exact", criterion_example1);
  h.run(2, "gadget-solution-counts", criterion_gadget_counts);
  h.run(3, "simplified-system-counterexample", criterion_counterexample);
  h.run(4, "aggregation-equivalence-100", criterion_equivalence);
  h.run(5, "term-dominance-10k", criterion_dominance);
  h.run(6, "conic-uniqueness", criterion_conic);
  h.run(7, "hard-instance-desk-scale", criterion_hard_instance_desk_scale);
  h.run(8, "bridge-identity", criterion_bridge);
  h.run(9, "negative-sampling-10k", criterion_negative_sampling);
  if (h.failures != 0) {
    std::cout << h.failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
