#include "aggpack/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>

#include "aggpack/aggregation.hpp"
#include "aggpack/errors.hpp"
#include "aggpack/gadget.hpp"
#include "aggpack/hard_instance.hpp"
#include "aggpack/io.hpp"
#include "aggpack/model.hpp"
#include "aggpack/verifier.hpp"

namespace aggpack::cli {

namespace {

constexpr std::uint64_t kDefaultBudget = 4000000;
constexpr std::uint64_t kDefaultSeed = 20240917;

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        out << row[c];
        out << std::string(width[0] - row[c].size(), ' ');
      } else {
        out << ' ' << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string level_label(const char* base, std::size_t l) {
  return std::string(base) + "(" + std::to_string(l) + ")";
}

// Variable rows of the exponent table, in presentation order: the top
// remainder, then y, the binary digits, the lower remainders and z, each
// from the highest level down.
std::vector<std::pair<std::string, const BigInt*>> table_entries(
    const GadgetAssignment& a) {
  const std::size_t d = a.xbin.size();
  std::vector<std::pair<std::string, const BigInt*>> entries;
  entries.emplace_back(level_label("r", d), &a.r[d]);
  for (std::size_t l = d; l-- > 0;)
    entries.emplace_back(level_label("y", l), &a.y[l]);
  for (std::size_t l = d; l-- > 0;)
    entries.emplace_back(level_label("xbin", l), &a.xbin[l]);
  for (std::size_t l = d; l-- > 0;)
    entries.emplace_back(level_label("r", l), &a.r[l]);
  for (std::size_t l = d; l-- > 0;)
    entries.emplace_back(level_label("z", l), &a.z[l]);
  return entries;
}

std::string format_exponent_table(const GadgetParams& params) {
  const std::uint64_t count = (std::uint64_t{1} << params.digits) - 1;
  std::vector<GadgetAssignment> traces;
  traces.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i)
    traces.push_back(decimal_to_binary_trace(params, BigInt(i)));

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"i"};
  for (std::uint64_t i = 1; i <= count; ++i) header.push_back(std::to_string(i));
  rows.push_back(std::move(header));

  const auto labels = table_entries(traces.front());
  for (std::size_t e = 0; e < labels.size(); ++e) {
    std::vector<std::string> row{labels[e].first};
    for (const auto& trace : traces)
      row.push_back(table_entries(trace)[e].second->str());
    rows.push_back(std::move(row));
  }
  return render_table(rows);
}

std::string format_trace(const GadgetAssignment& a) {
  std::ostringstream out;
  for (const auto& [label, value] : table_entries(a))
    out << label << ' ' << *value << '\n';
  return out.str();
}

std::string format_solution(const SolutionVector& x) {
  std::ostringstream out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != 0) out << ' ';
    out << x[j];
  }
  return out.str();
}

void print_result(std::ostream& out, bool pass, const std::string& name) {
  out << "RESULT " << (pass ? "pass" : "fail") << ' ' << name << '\n';
}

// ---- subcommand drivers ----------------------------------------------

int cmd_aggregate(std::ostream& out, const std::string& ilp_path,
                  const std::string& out_path, bool emit_context) {
  const EqualityIlp ilp = io::load_ilp(ilp_path);
  const AggregationContext ctx = aggregate(ilp);
  const std::string knapsack_text = io::write_knapsack(ctx.aggregated);
  if (out_path.empty())
    out << knapsack_text;
  else
    io::save_text(out_path, knapsack_text);
  if (emit_context) {
    out << "M " << ctx.big_m << '\n';
    out << "U " << ctx.upper_sum << '\n';
    out << io::write_ilp(ctx.extended);
  }
  return 0;
}

int cmd_gadget(std::ostream& out, std::uint64_t d, const std::string& gamma_text,
               const std::string& trace_text, const std::string& enumerate_mode,
               bool simplified, const std::string& knapsack_path,
               const std::string& ilp_path) {
  GadgetParams params;
  params.digits = static_cast<std::size_t>(d);
  params.gamma = parse_bigint(gamma_text);
  params.validate();

  int actions = (!trace_text.empty() ? 1 : 0) + (!enumerate_mode.empty() ? 1 : 0) +
                (simplified ? 1 : 0);
  if (actions > 1)
    throw std::invalid_argument(
        "--trace, --enumerate and --simplified are mutually exclusive");
  if (simplified && !knapsack_path.empty())
    throw std::invalid_argument(
        "--emit-knapsack applies to the full system, not --simplified");

  if (!ilp_path.empty()) {
    const EqualityIlp sys =
        simplified ? build_simplified_system(params) : build_equality_system(params);
    io::save_text(ilp_path, io::write_ilp(sys));
  }
  if (!knapsack_path.empty())
    io::save_text(knapsack_path, io::write_knapsack(build_knapsack_equation(params)));

  if (!trace_text.empty()) {
    out << format_trace(decimal_to_binary_trace(params, parse_bigint(trace_text)));
    return 0;
  }
  if (!enumerate_mode.empty()) {
    EnumerationMode mode;
    if (enumerate_mode == "exhaustive")
      mode = EnumerationMode::Exhaustive;
    else if (enumerate_mode == "structural")
      mode = EnumerationMode::Structural;
    else
      throw std::invalid_argument("unknown enumeration mode '" + enumerate_mode + "'");
    const auto solutions = enumerate_gadget_solutions(params, mode);
    out << "solutions " << solutions.size() << '\n';
    for (const auto& a : solutions) out << format_solution(a.to_vector()) << '\n';
    return 0;
  }
  if (simplified && ilp_path.empty()) {
    out << io::write_ilp(build_simplified_system(params));
    return 0;
  }
  if (actions == 0 && knapsack_path.empty() && ilp_path.empty()) {
    const EqualityIlp sys = build_equality_system(params);
    const BigInt upper_sum = sys.upper.back();
    out << "gadget d=" << d << " gamma=" << params.gamma << '\n';
    out << "rows " << sys.num_constraints() << '\n';
    out << "vars " << sys.num_vars() << '\n';
    out << "U " << upper_sum << '\n';
    out << "M " << gadget_big_m(params, upper_sum) << '\n';
  }
  return 0;
}

int cmd_instance(std::ostream& out, std::uint64_t dprime,
                 const std::string& out_path, const std::string& configs_path) {
  const HardInstance hi = build_bp_instance(static_cast<std::size_t>(dprime));
  io::save_text(out_path, io::write_bp(hi.instance));
  if (!configs_path.empty()) {
    std::ostringstream configs;
    for (const auto& config : hi.equality_configs)
      configs << format_solution(config) << '\n';
    io::save_text(configs_path, configs.str());
  }
  out << "instance dprime=" << dprime << ": " << hi.instance.num_item_types()
      << " item types, bin budget " << *hi.instance.bin_budget << '\n';
  return 0;
}

int cmd_verify_equivalence(std::ostream& out, const std::string& ilp_path,
                           std::uint64_t instances, std::uint64_t seed,
                           std::uint64_t budget) {
  std::vector<EqualityIlp> family;
  if (!ilp_path.empty()) {
    family.push_back(io::load_ilp(ilp_path));
  } else {
    SplitMix64 rng(seed);
    family.reserve(instances);
    for (std::uint64_t i = 0; i < instances; ++i)
      family.push_back(random_test_ilp(rng));
  }

  std::uint64_t failures = 0;
  std::uint64_t total_solutions = 0;
  for (const auto& ilp : family) {
    const EquivalenceReport report = verify_equivalence(aggregate(ilp), budget);
    total_solutions += report.extended_solutions.size();
    if (!report.identical) {
      ++failures;
      out << "discrepancy: extended has " << report.extended_solutions.size()
          << " solutions, aggregate has " << report.aggregate_solutions.size()
          << '\n';
    }
  }
  out << "equivalence: " << family.size() << " instances, " << total_solutions
      << " solutions, " << failures << " discrepancies\n";
  print_result(out, failures == 0, "equivalence");
  return failures == 0 ? 0 : 1;
}

int cmd_verify_gadget(std::ostream& out, std::uint64_t d_flag,
                      const std::string& gamma_text) {
  std::vector<GadgetParams> combos;
  if (d_flag != 0 || !gamma_text.empty()) {
    if (d_flag == 0 || gamma_text.empty())
      throw std::invalid_argument("--d and --gamma must be given together");
    combos.push_back(
        GadgetParams{static_cast<std::size_t>(d_flag), parse_bigint(gamma_text)});
  } else {
    for (auto [dd, gg] : {std::pair<std::size_t, int>{1, 2}, {1, 3}, {1, 5},
                          {2, 2}, {2, 3}, {2, 5}, {3, 2}})
      combos.push_back(GadgetParams{dd, BigInt(gg)});
  }

  bool all_pass = true;
  for (const auto& params : combos) {
    const std::string name = "gadget-d" + std::to_string(params.digits) + "-g" +
                             params.gamma.str();
    const auto exhaustive =
        enumerate_gadget_solutions(params, EnumerationMode::Exhaustive);
    const auto structural =
        enumerate_gadget_solutions(params, EnumerationMode::Structural);

    bool pass = exhaustive.size() == structural.size();
    const std::uint64_t expected = (std::uint64_t{1} << params.digits) - 1;
    pass = pass && exhaustive.size() == expected;
    for (std::size_t i = 0; pass && i < exhaustive.size(); ++i) {
      pass = exhaustive[i].to_vector() == structural[i].to_vector() &&
             exhaustive[i].exponent() == BigInt(i + 1);
    }

    const EqualityIlp sys = build_equality_system(params);
    const KnapsackEquality kp = build_knapsack_equation(params);
    const BigInt m = gadget_big_m(params, sys.upper.back());
    for (std::size_t i = 0; pass && i < exhaustive.size(); ++i) {
      const SolutionVector x = exhaustive[i].to_vector();
      pass = check_solution(sys, x) && dot(kp.weights, x) == kp.rhs;
      for (const auto& term : term_decompose(sys, m, x))
        pass = pass && term == 0;
    }

    if (pass) {
      const RejectionReport rejection =
          reject_random_nonsolutions(kp, sys.upper, 500, kDefaultSeed);
      for (const auto& sample : rejection.satisfying) {
        bool known = false;
        for (const auto& sol : exhaustive)
          known = known || sol.to_vector() == sample;
        pass = pass && known;
      }
    }

    out << name << ": " << exhaustive.size() << " solutions, expected "
        << expected << '\n';
    print_result(out, pass, name);
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_verify_conic(std::ostream& out, std::uint64_t dprime_flag) {
  std::vector<std::size_t> dims;
  if (dprime_flag != 0)
    dims.push_back(static_cast<std::size_t>(dprime_flag));
  else
    dims = {1, 2, 3};

  bool all_pass = true;
  for (std::size_t dprime : dims) {
    const std::string name = "conic-dprime" + std::to_string(dprime);
    const PointSet ps = point_set(dprime);
    const std::vector<BigInt> t = target_vector(ps);
    const BigInt cap = BigInt(1) << (dprime - 1);
    const ConicSearchResult result = conic_combinations(ps, t, cap);
    bool pass = result.solutions.size() == 1;
    if (pass)
      for (const auto& mu : result.solutions[0]) pass = pass && mu == 1;
    out << name << ": " << result.solutions.size()
        << " combinations reach the target\n";
    print_result(out, pass, name);
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_verify_support(std::ostream& out, const std::string& bp_path) {
  const BinPackingInstance bp = io::load_bp(bp_path);
  const std::size_t item_types = bp.num_item_types();
  if (item_types < 16 || (item_types - 4) % 12 != 0)
    throw std::invalid_argument(
        "item type count does not match any canonical instance");
  const std::size_t dprime = (item_types - 4) / 12;

  const HardInstance hi = build_bp_instance(dprime);
  bool pass = hi.instance == bp;
  if (!pass)
    out << "instance differs from the canonical construction for dprime="
        << dprime << '\n';

  const std::uint64_t k = (std::uint64_t{1} << dprime) - 1;
  if (pass) {
    const SupportReport structural =
        min_support_packing(hi, SearchMode::Structural);
    out << "min_support " << structural.min_support << '\n';
    pass = structural.min_support == k;
    if (dprime <= 2) {
      const SupportReport exhaustive =
          min_support_packing(hi, SearchMode::Exhaustive);
      pass = pass && exhaustive.min_support == structural.min_support;
    }
  }
  print_result(out, pass, "support");
  return pass ? 0 : 1;
}

int cmd_demo(std::ostream& out, const std::string& which,
             const std::string& gamma_text) {
  if (which != "example1")
    throw std::invalid_argument("unknown demo '" + which + "'");
  GadgetParams params;
  params.digits = 3;
  params.gamma = parse_bigint(gamma_text);
  params.validate();
  out << format_exponent_table(params);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact constructions and brute-force verification for "
               "single-constraint ILP aggregation and high-support bin "
               "packing instances",
               "aggpack"};
  app.require_subcommand(1);

  // aggregate
  std::string agg_input;
  std::string agg_out;
  bool agg_context = false;
  CLI::App* agg = app.add_subcommand(
      "aggregate", "Collapse an equality ILP into one knapsack equation");
  agg->add_option("ilp-file", agg_input, "input ILP file")->required();
  agg->add_option("--out", agg_out, "write the knapsack file here");
  agg->add_flag("--emit-context", agg_context,
                "also print M, U and the slack-extended system");

  // gadget
  std::uint64_t gad_d = 1;
  std::string gad_gamma;
  std::string gad_trace;
  std::string gad_enumerate;
  bool gad_simplified = false;
  std::string gad_knapsack_path;
  std::string gad_ilp_path;
  CLI::App* gad = app.add_subcommand(
      "gadget", "Build the power-of-gamma constraint system");
  gad->add_option("--d", gad_d, "number of binary digits")->required();
  gad->add_option("--gamma", gad_gamma, "base (arbitrary precision)")->required();
  gad->add_option("--trace", gad_trace, "print the assignment for one exponent");
  gad->add_option("--enumerate", gad_enumerate,
                  "list all solutions: exhaustive|structural");
  gad->add_flag("--simplified", gad_simplified,
                "use the variant without the z variables");
  gad->add_option("--emit-knapsack", gad_knapsack_path,
                  "write the aggregated knapsack equation");
  gad->add_option("--emit-ilp", gad_ilp_path, "write the equality system");

  // instance
  std::uint64_t inst_dprime = 1;
  std::string inst_out;
  std::string inst_configs;
  CLI::App* inst = app.add_subcommand(
      "instance", "Build the bin packing instance with exponential support");
  inst->add_option("--dprime", inst_dprime, "gadget dimension d'")->required();
  inst->add_option("--out", inst_out, "write the bp instance file here")->required();
  inst->add_option("--emit-configs", inst_configs,
                   "write the full-capacity configurations, one per line");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run brute-force checks");
  verify->require_subcommand(1);

  std::string veq_file;
  std::uint64_t veq_instances = 100;
  std::uint64_t veq_seed = kDefaultSeed;
  std::uint64_t veq_budget = kDefaultBudget;
  CLI::App* veq = verify->add_subcommand(
      "equivalence", "extended system vs aggregated equation, by box enumeration");
  veq->add_option("ilp-file", veq_file, "check this ILP instead of the random family");
  veq->add_option("--instances", veq_instances, "number of random instances");
  veq->add_option("--seed", veq_seed, "random seed");
  veq->add_option("--budget", veq_budget, "box enumeration budget");

  std::uint64_t vgad_d = 0;
  std::string vgad_gamma;
  CLI::App* vgad = verify->add_subcommand(
      "gadget", "solution count, encoding and knapsack agreement");
  vgad->add_option("--d", vgad_d, "number of binary digits");
  vgad->add_option("--gamma", vgad_gamma, "base");

  std::uint64_t vconic_dprime = 0;
  CLI::App* vconic = verify->add_subcommand(
      "conic", "uniqueness of the conic combination reaching the target");
  vconic->add_option("--dprime", vconic_dprime, "point set dimension");

  std::string vsup_file;
  CLI::App* vsup = verify->add_subcommand(
      "support", "minimum support of a canonical bp instance file");
  vsup->add_option("bp-file", vsup_file, "instance file")->required();

  // demo
  std::string demo_which;
  std::string demo_gamma = "5";
  CLI::App* demo = app.add_subcommand("demo", "Reproduce the worked example");
  demo->add_option("which", demo_which, "demo name (example1)")->required();
  demo->add_option("--gamma", demo_gamma, "base");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*agg) return cmd_aggregate(out, agg_input, agg_out, agg_context);
    if (*gad)
      return cmd_gadget(out, gad_d, gad_gamma, gad_trace, gad_enumerate,
                        gad_simplified, gad_knapsack_path, gad_ilp_path);
    if (*inst) return cmd_instance(out, inst_dprime, inst_out, inst_configs);
    if (*verify) {
      if (*veq)
        return cmd_verify_equivalence(out, veq_file, veq_instances, veq_seed,
                                      veq_budget);
      if (*vgad) return cmd_verify_gadget(out, vgad_d, vgad_gamma);
      if (*vconic) return cmd_verify_conic(out, vconic_dprime);
      if (*vsup) return cmd_verify_support(out, vsup_file);
    }
    if (*demo) return cmd_demo(out, demo_which, demo_gamma);
    err << "no subcommand selected\n";
    return 1;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace aggpack::cli
