#include "aggpack/verifier.hpp"

#include <algorithm>
#include <stdexcept>

#include "aggpack/errors.hpp"

namespace aggpack {

std::uint64_t SplitMix64::next() {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

BigInt uniform_bigint(SplitMix64& rng, const BigInt& bound) {
  if (bound < 0) throw std::invalid_argument("negative sampling bound");
  if (bound == 0) return 0;
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  const BigInt mask = (BigInt(1) << bits) - 1;
  while (true) {
    BigInt value = 0;
    for (unsigned w = 0; w < words; ++w) value = (value << 64) | rng.next();
    value &= mask;
    if (value <= bound) return value;
  }
}

void for_each_box_point(const std::vector<BigInt>& upper, std::uint64_t budget,
                        const std::function<void(const SolutionVector&)>& fn) {
  BigInt needed = 1;
  for (const auto& u : upper) {
    if (u < 0) throw std::invalid_argument("negative upper bound");
    needed *= u + 1;
  }
  if (needed > budget)
    throw BudgetExceededError("enumeration budget exceeded: box holds " +
                                  needed.str() + " points, budget " +
                                  std::to_string(budget),
                              needed);
  const std::size_t n = upper.size();
  SolutionVector x(n, 0);
  while (true) {
    fn(x);
    std::size_t idx = n;
    while (idx > 0 && x[idx - 1] == upper[idx - 1]) --idx;
    if (idx == 0) return;
    ++x[idx - 1];
    for (std::size_t j = idx; j < n; ++j) x[j] = 0;
  }
}

std::vector<SolutionVector> naive_box_enumeration(const EqualityIlp& ilp,
                                                  std::uint64_t budget) {
  ilp.validate();
  std::vector<SolutionVector> solutions;
  for_each_box_point(ilp.upper, budget, [&](const SolutionVector& x) {
    for (std::size_t i = 0; i < ilp.num_constraints(); ++i)
      if (dot(ilp.rows[i], x) != ilp.rhs[i]) return;
    solutions.push_back(x);
  });
  return solutions;
}

namespace {

// DFS over the non-zero points in descending norm, subtracting multiples
// from the remaining target; the dominant last coordinate fails fast.
struct ConicSearch {
  const std::vector<const std::vector<BigInt>*>& desc;  // descending norm
  const std::vector<BigInt>& caps;                      // aligned with desc
  std::size_t dim;
  std::vector<BigInt> mu;  // aligned with desc
  std::vector<std::vector<BigInt>> found;

  void run(std::size_t level, std::vector<BigInt>& remaining) {
    if (level == desc.size()) {
      for (const auto& c : remaining)
        if (c != 0) return;
      found.push_back(mu);
      return;
    }
    const std::vector<BigInt>& point = *desc[level];
    std::vector<BigInt> rest = remaining;
    for (BigInt count = 0; count <= caps[level]; ++count) {
      bool viable = true;
      for (std::size_t j = 0; j < dim && viable; ++j) viable = rest[j] >= 0;
      if (!viable) break;
      mu[level] = count;
      run(level + 1, rest);
      for (std::size_t j = 0; j < dim; ++j) rest[j] -= point[j];
    }
    mu[level] = 0;
  }
};

}  // namespace

ConicSearchResult conic_combinations(const PointSet& points,
                                     const std::vector<BigInt>& target,
                                     const BigInt& cap) {
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
  const std::size_t dim = points.dprime + 1;
  if (target.size() != dim) throw std::invalid_argument("dimension mismatch");

  // Drop the origin; the remaining points keep their norm-ascending order.
  std::vector<const std::vector<BigInt>*> asc;
  for (const auto& point : points.points) {
    if (point.size() != dim) throw std::invalid_argument("dimension mismatch");
    bool zero = true;
    for (const auto& c : point) {
      if (c < 0)
        throw std::invalid_argument("points must have non-negative coordinates");
      if (c != 0) zero = false;
    }
    if (!zero) asc.push_back(&point);
  }
  const std::size_t k = asc.size();

  std::vector<BigInt> caps_asc(k, cap);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const BigInt& coord = (*asc[i])[j];
      if (coord > 0) {
        BigInt q = target[j] < 0 ? BigInt(0) : target[j] / coord;
        if (q < caps_asc[i]) caps_asc[i] = q;
      }
    }
    if (caps_asc[i] < 0) caps_asc[i] = 0;
  }

  std::vector<const std::vector<BigInt>*> desc(asc.rbegin(), asc.rend());
  std::vector<BigInt> caps_desc(caps_asc.rbegin(), caps_asc.rend());
  ConicSearch search{desc, caps_desc, dim, std::vector<BigInt>(k, 0), {}};
  std::vector<BigInt> remaining = target;
  search.run(0, remaining);

  ConicSearchResult result;
  result.search_bounds = std::move(caps_asc);
  result.solutions.reserve(search.found.size());
  for (const auto& mu_desc : search.found)
    result.solutions.emplace_back(mu_desc.rbegin(), mu_desc.rend());
  std::sort(result.solutions.begin(), result.solutions.end());
  return result;
}

SupportReport min_support_packing(const HardInstance& hi, SearchMode mode) {
  if (!hi.instance.bin_budget)
    throw std::invalid_argument("instance carries no bin budget");
  const std::uint64_t k = *hi.instance.bin_budget;
  if (hi.equality_configs.size() != k)
    throw std::invalid_argument("configuration count does not match budget");

  // Total item mass equals k full bins, so a packing within the budget can
  // only use configurations that fill their bin exactly: the members of X*.
  BigInt mass = dot(hi.instance.sizes, hi.instance.multiplicities);
  if (mass != BigInt(k) * hi.instance.capacity)
    throw std::runtime_error("construction violated kC identity");
  for (const auto& config : hi.equality_configs)
    if (dot(hi.instance.sizes, config) != hi.instance.capacity)
      throw std::runtime_error("construction violated kC identity");

  SupportReport report;
  report.method = mode;

  if (mode == SearchMode::Structural) {
    // Work in the projected space: configurations sorted by their r(d')
    // value project onto the point set, and the multiplicity target is the
    // projection of the instance multiplicities.
    std::vector<std::pair<std::vector<BigInt>, std::size_t>> projected;
    for (std::size_t i = 0; i < hi.equality_configs.size(); ++i)
      projected.emplace_back(project(hi.equality_configs[i], hi.params), i);
    std::sort(projected.begin(), projected.end(),
              [](const auto& a, const auto& b) {
                return a.first.back() < b.first.back();
              });

    PointSet ps;
    ps.dprime = hi.params.digits;
    ps.k = k;
    ps.gamma = hi.params.gamma;
    ps.points.emplace_back(ps.dprime + 1, 0);
    for (const auto& [image, index] : projected) ps.points.push_back(image);

    std::vector<BigInt> target = project(hi.target_multiplicities, hi.params);
    const BigInt cap = BigInt(1) << (hi.params.digits - 1);
    ConicSearchResult conic = conic_combinations(ps, target, cap);
    if (conic.solutions.empty())
      throw std::runtime_error("projected target unreachable");

    std::size_t best = 0;
    for (std::size_t s = 1; s < conic.solutions.size(); ++s)
      if (evaluate_support(conic.solutions[s]) <
          evaluate_support(conic.solutions[best]))
        best = s;
    const auto& mu = conic.solutions[best];
    report.min_support = evaluate_support(mu);
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu[i] != 0)
        report.witness.emplace_back(hi.equality_configs[projected[i].second],
                                    mu[i]);
    return report;
  }

  if (hi.params.digits > 2)
    throw std::invalid_argument("exhaustive support search requires dprime <= 2");

  // Every multiset of X* of size <= k; keep those matching the
  // multiplicities exactly and take the fewest distinct configurations.
  const std::size_t m = hi.equality_configs.size();
  std::vector<BigInt> counts(m, 0);
  bool any = false;
  std::size_t best_support = 0;
  std::vector<BigInt> best_counts(m, 0);
  std::function<void(std::size_t, std::uint64_t, std::vector<BigInt>)> walk =
      [&](std::size_t idx, std::uint64_t bins_left, std::vector<BigInt> need) {
        for (const auto& v : need)
          if (v < 0) return;
        if (idx == m) {
          for (const auto& v : need)
            if (v != 0) return;
          std::size_t support = evaluate_support(counts);
          if (!any || support < best_support) {
            any = true;
            best_support = support;
            best_counts = counts;
          }
          return;
        }
        const SolutionVector& config = hi.equality_configs[idx];
        for (std::uint64_t c = 0; c <= bins_left; ++c) {
          counts[idx] = c;
          std::vector<BigInt> next = need;
          bool ok = true;
          for (std::size_t j = 0; j < next.size() && ok; ++j) {
            next[j] -= BigInt(c) * config[j];
            if (next[j] < 0) ok = false;
          }
          if (ok) walk(idx + 1, bins_left - c, std::move(next));
        }
        counts[idx] = 0;
      };
  walk(0, k, hi.instance.multiplicities);

  if (!any) throw std::runtime_error("no packing within the bin budget");
  report.min_support = best_support;
  for (std::size_t i = 0; i < m; ++i)
    if (best_counts[i] != 0)
      report.witness.emplace_back(hi.equality_configs[i], best_counts[i]);
  return report;
}

RejectionReport reject_random_nonsolutions(const KnapsackEquality& kp,
                                           const std::vector<BigInt>& bounds,
                                           std::uint64_t trials,
                                           std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (bounds.size() != kp.num_vars())
    throw std::invalid_argument("dimension mismatch");
  SplitMix64 rng(seed);
  RejectionReport report;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SolutionVector x;
    x.reserve(bounds.size());
    for (const auto& b : bounds) x.push_back(uniform_bigint(rng, b));
    if (dot(kp.weights, x) == kp.rhs) {
      ++report.satisfied_count;
      report.satisfying.push_back(std::move(x));
    }
  }
  return report;
}

EqualityIlp random_test_ilp(SplitMix64& rng) {
  const std::size_t d = 1 + rng.next() % 3;
  const std::size_t n = 1 + rng.next() % 3;
  EqualityIlp ilp;
  ilp.rows.assign(d, std::vector<BigInt>(n, 0));
  for (auto& row : ilp.rows)
    for (auto& entry : row)
      entry = BigInt(static_cast<std::int64_t>(rng.next() % 7) - 3);
  ilp.upper.resize(n);
  for (auto& u : ilp.upper) u = BigInt(rng.next() % 4);
  ilp.var_names.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    ilp.var_names[j] = "x" + std::to_string(j + 1);

  if (rng.next() % 2 == 0) {
    // Feasible by construction: the right hand side is A x0 for an in-box x0.
    SolutionVector x0(n);
    for (std::size_t j = 0; j < n; ++j)
      x0[j] = uniform_bigint(rng, ilp.upper[j]);
    ilp.rhs.resize(d);
    for (std::size_t i = 0; i < d; ++i) ilp.rhs[i] = dot(ilp.rows[i], x0);
  } else {
    ilp.rhs.resize(d);
    for (auto& b : ilp.rhs)
      b = BigInt(static_cast<std::int64_t>(rng.next() % 19) - 9);
  }
  ilp.validate();
  return ilp;
}

}  // namespace aggpack
