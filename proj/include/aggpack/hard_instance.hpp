#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aggpack/gadget.hpp"
#include "aggpack/model.hpp"

namespace aggpack {

/// The k+1 integer points whose conic reachability forces an exponential
/// support: the origin plus, for every non-zero bit vector x of length
/// dprime, the point (x, (4k)^{value of x}), k = 2^dprime - 1. Sorted so
/// that the infinity norm of point i is (4k)^i.
struct PointSet {
  std::size_t dprime = 0;
  std::uint64_t k = 0;
  BigInt gamma;                             // 4k
  std::vector<std::vector<BigInt>> points;  // k+1 points of dim dprime+1
};

PointSet point_set(std::size_t dprime);

/// t = sum of all points; the first dprime coordinates are 2^(dprime-1).
std::vector<BigInt> target_vector(const PointSet& ps);

/// Bin packing instance whose optimal packings need 2^dprime - 1 distinct
/// configurations: item sizes and capacity come from the gadget knapsack
/// equation (d = dprime, gamma = 4k), the multiplicities are the item-wise
/// sum of the k full-capacity configurations X*, and the bin budget is k.
struct HardInstance {
  GadgetParams params;          // d = dprime, gamma = 4k
  BinPackingInstance instance;  // 12*dprime + 4 item types
  std::vector<SolutionVector> equality_configs;  // X*, canonical order
  std::vector<BigInt> target_multiplicities;     // y = sum over X*
};

HardInstance build_bp_instance(std::size_t dprime);

/// Projection onto (xbin(0..dprime-1), r(dprime)) of a configuration given
/// in canonical variable order.
std::vector<BigInt> project(const SolutionVector& config,
                            const GadgetParams& params);

}  // namespace aggpack
