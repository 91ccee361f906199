#include "aggpack/hard_instance.hpp"

#include <stdexcept>

namespace aggpack {

PointSet point_set(std::size_t dprime) {
  if (dprime < 1) throw std::invalid_argument("dprime must be at least 1");
  if (dprime > 32)
    throw std::invalid_argument("point set too large to materialize");
  PointSet ps;
  ps.dprime = dprime;
  ps.k = (std::uint64_t{1} << dprime) - 1;
  ps.gamma = BigInt(4) * ps.k;

  // Point e carries the bits of e followed by (4k)^e; e = 0 is the origin
  // (the lone point with last coordinate (4k)^0 is dropped by construction).
  // Listing e ascending sorts by infinity norm: ||a_e||_inf = (4k)^e.
  ps.points.reserve(ps.k + 1);
  for (std::uint64_t e = 0; e <= ps.k; ++e) {
    std::vector<BigInt> point(dprime + 1, 0);
    for (std::size_t l = 0; l < dprime; ++l)
      point[l] = (e >> l) & 1 ? 1 : 0;
    if (e != 0) point[dprime] = bpow(ps.gamma, e);
    ps.points.push_back(std::move(point));
  }
  return ps;
}

std::vector<BigInt> target_vector(const PointSet& ps) {
  std::vector<BigInt> t(ps.dprime + 1, 0);
  for (const auto& point : ps.points)
    for (std::size_t j = 0; j <= ps.dprime; ++j) t[j] += point[j];
  return t;
}

HardInstance build_bp_instance(std::size_t dprime) {
  if (dprime < 1) throw std::invalid_argument("dprime must be at least 1");
  HardInstance hi;
  const std::uint64_t k = (std::uint64_t{1} << dprime) - 1;
  hi.params.digits = dprime;
  hi.params.gamma = BigInt(4) * k;
  hi.params.validate();

  const KnapsackEquality kp = build_knapsack_equation(hi.params);
  const EnumerationMode mode =
      dprime <= 2 ? EnumerationMode::Exhaustive : EnumerationMode::Structural;
  for (const auto& assignment : enumerate_gadget_solutions(hi.params, mode))
    hi.equality_configs.push_back(assignment.to_vector());

  hi.target_multiplicities.assign(kp.num_vars(), 0);
  for (const auto& config : hi.equality_configs)
    for (std::size_t j = 0; j < config.size(); ++j)
      hi.target_multiplicities[j] += config[j];

  hi.instance.sizes = kp.weights;
  hi.instance.multiplicities = hi.target_multiplicities;
  hi.instance.capacity = kp.rhs;
  hi.instance.bin_budget = k;
  hi.instance.validate();

  // Mass balance y^T s = k C; every configuration fills its bin exactly.
  BigInt mass = dot(hi.instance.sizes, hi.target_multiplicities);
  if (mass != BigInt(k) * hi.instance.capacity)
    throw std::runtime_error("construction violated kC identity");
  return hi;
}

std::vector<BigInt> project(const SolutionVector& config,
                            const GadgetParams& params) {
  params.validate();
  const std::size_t d = params.digits;
  if (config.size() != 12 * d + 4)
    throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> image(config.begin(), config.begin() + d);
  image.push_back(config[4 * d]);  // r(d) in canonical order
  return image;
}

}  // namespace aggpack
