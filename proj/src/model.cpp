#include "aggpack/model.hpp"

#include <stdexcept>

namespace aggpack {

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer token");
  std::size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size())
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("malformed integer '" + std::string(text) +
                                  "'");
  }
  return BigInt(std::string(text));
}

BigInt bpow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt factor = base;
  while (exp != 0) {
    if (exp & 1) result *= factor;
    exp >>= 1;
    if (exp != 0) factor *= factor;
  }
  return result;
}

void EqualityIlp::validate() const {
  const std::size_t d = rows.size();
  const std::size_t n = upper.size();
  if (d == 0 || n == 0)
    throw std::invalid_argument("ilp must have at least one row and variable");
  if (rhs.size() != d)
    throw std::invalid_argument("rhs length does not match row count");
  for (const auto& row : rows) {
    if (row.size() != n)
      throw std::invalid_argument("matrix row length does not match variable count");
  }
  if (var_names.size() != n)
    throw std::invalid_argument("var_names length does not match variable count");
  if (cost && cost->size() != n)
    throw std::invalid_argument("cost length does not match variable count");
  for (const auto& u : upper) {
    if (u < 0) throw std::invalid_argument("negative upper bound");
  }
}

bool operator==(const EqualityIlp& a, const EqualityIlp& b) {
  return a.rows == b.rows && a.rhs == b.rhs && a.upper == b.upper &&
         a.cost == b.cost;
}

bool operator==(const KnapsackEquality& a, const KnapsackEquality& b) {
  return a.weights == b.weights && a.rhs == b.rhs;
}

bool operator==(const BinPackingInstance& a, const BinPackingInstance& b) {
  return a.sizes == b.sizes && a.multiplicities == b.multiplicities &&
         a.capacity == b.capacity && a.bin_budget == b.bin_budget;
}

void BinPackingInstance::validate() const {
  if (sizes.size() != multiplicities.size())
    throw std::invalid_argument("sizes and multiplicities differ in length");
  if (sizes.empty()) throw std::invalid_argument("instance has no item types");
  for (const auto& s : sizes) {
    if (s <= 0) throw std::invalid_argument("non-positive item size");
    if (s > capacity) throw std::invalid_argument("item size exceeds capacity");
  }
  for (const auto& a : multiplicities) {
    if (a < 0) throw std::invalid_argument("negative multiplicity");
  }
}

BigInt infinity_norm(const std::vector<std::vector<BigInt>>& matrix) {
  if (matrix.empty() || matrix.front().empty())
    throw std::invalid_argument("empty matrix");
  BigInt best = 0;
  for (const auto& row : matrix) {
    for (const auto& entry : row) {
      BigInt mag = entry < 0 ? BigInt(-entry) : entry;
      if (mag > best) best = mag;
    }
  }
  return best;
}

std::size_t evaluate_support(const SolutionVector& x) {
  std::size_t count = 0;
  for (const auto& v : x)
    if (v != 0) ++count;
  return count;
}

BigInt dot(const std::vector<BigInt>& coeffs, const SolutionVector& x) {
  if (coeffs.size() != x.size())
    throw std::invalid_argument("dimension mismatch");
  BigInt sum = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) sum += coeffs[j] * x[j];
  return sum;
}

bool check_solution(const EqualityIlp& ilp, const SolutionVector& x) {
  if (x.size() != ilp.num_vars())
    throw std::invalid_argument("dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0 || x[j] > ilp.upper[j]) return false;
  }
  for (std::size_t i = 0; i < ilp.num_constraints(); ++i) {
    if (dot(ilp.rows[i], x) != ilp.rhs[i]) return false;
  }
  return true;
}

}  // namespace aggpack
