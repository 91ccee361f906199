#include "aggpack/io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace aggpack::io {

namespace {

// Whitespace tokenizer that drops '#' comments.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::optional<std::string> next() {
    while (true) {
      if (pos_ >= line_.size()) {
        if (!std::getline(in_, line_)) return std::nullopt;
        if (auto hash = line_.find('#'); hash != std::string::npos)
          line_.erase(hash);
        pos_ = 0;
        continue;
      }
      while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
        ++pos_;
      if (pos_ >= line_.size()) continue;
      std::size_t start = pos_;
      while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])))
        ++pos_;
      return line_.substr(start, pos_ - start);
    }
  }

  std::string expect(const char* what) {
    auto tok = next();
    if (!tok)
      throw std::invalid_argument(std::string("unexpected end of file, expected ") + what);
    return *tok;
  }

  BigInt expect_int(const char* what) { return parse_bigint(expect(what)); }

  std::size_t expect_count(const char* what) {
    BigInt v = expect_int(what);
    if (v < 0 || v > 1000000000)
      throw std::invalid_argument(std::string("unreasonable count for ") + what);
    return static_cast<std::size_t>(v);
  }

  void expect_done() {
    if (next()) throw std::invalid_argument("trailing tokens after instance data");
  }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t pos_ = 0;
};

std::vector<BigInt> read_vector(TokenReader& tok, std::size_t n, const char* what) {
  std::vector<BigInt> v;
  v.reserve(n);
  for (std::size_t j = 0; j < n; ++j) v.push_back(tok.expect_int(what));
  return v;
}

void append_vector(std::ostringstream& out, const std::vector<BigInt>& v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j != 0) out << ' ';
    out << v[j];
  }
  out << '\n';
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t j = 0; j < n; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

}  // namespace

std::string write_ilp(const EqualityIlp& ilp) {
  std::ostringstream out;
  out << "ilp " << ilp.num_constraints() << ' ' << ilp.num_vars() << '\n';
  for (const auto& row : ilp.rows) append_vector(out, row);
  append_vector(out, ilp.rhs);
  append_vector(out, ilp.upper);
  if (ilp.cost) {
    out << "cost";
    for (const auto& c : *ilp.cost) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

EqualityIlp read_ilp(std::istream& in) {
  TokenReader tok(in);
  if (tok.expect("header 'ilp'") != "ilp")
    throw std::invalid_argument("not an ilp file");
  std::size_t d = tok.expect_count("constraint count");
  std::size_t n = tok.expect_count("variable count");
  EqualityIlp ilp;
  ilp.rows.reserve(d);
  for (std::size_t i = 0; i < d; ++i) ilp.rows.push_back(read_vector(tok, n, "matrix entry"));
  ilp.rhs = read_vector(tok, d, "rhs entry");
  ilp.upper = read_vector(tok, n, "upper bound");
  ilp.var_names = default_names(n);
  if (auto extra = tok.next()) {
    if (*extra != "cost")
      throw std::invalid_argument("unexpected token '" + *extra + "'");
    ilp.cost = read_vector(tok, n, "cost entry");
    tok.expect_done();
  }
  ilp.validate();
  return ilp;
}

std::string write_knapsack(const KnapsackEquality& kp) {
  std::ostringstream out;
  out << "knapsack " << kp.num_vars() << '\n';
  append_vector(out, kp.weights);
  out << kp.rhs << '\n';
  return out.str();
}

KnapsackEquality read_knapsack(std::istream& in) {
  TokenReader tok(in);
  if (tok.expect("header 'knapsack'") != "knapsack")
    throw std::invalid_argument("not a knapsack file");
  std::size_t n = tok.expect_count("variable count");
  if (n == 0) throw std::invalid_argument("knapsack has no variables");
  KnapsackEquality kp;
  kp.weights = read_vector(tok, n, "weight");
  kp.rhs = tok.expect_int("right hand side");
  kp.var_names = default_names(n);
  tok.expect_done();
  return kp;
}

std::string write_bp(const BinPackingInstance& bp) {
  std::ostringstream out;
  out << "bp " << bp.num_item_types() << '\n';
  append_vector(out, bp.sizes);
  append_vector(out, bp.multiplicities);
  out << bp.capacity << '\n';
  if (bp.bin_budget) out << *bp.bin_budget << '\n';
  return out.str();
}

BinPackingInstance read_bp(std::istream& in) {
  TokenReader tok(in);
  if (tok.expect("header 'bp'") != "bp")
    throw std::invalid_argument("not a bp file");
  std::size_t d = tok.expect_count("item type count");
  if (d == 0) throw std::invalid_argument("instance has no item types");
  BinPackingInstance bp;
  bp.sizes = read_vector(tok, d, "size");
  bp.multiplicities = read_vector(tok, d, "multiplicity");
  bp.capacity = tok.expect_int("capacity");
  if (auto extra = tok.next()) {
    BigInt b = parse_bigint(*extra);
    if (b < 0 || b > std::numeric_limits<std::uint64_t>::max())
      throw std::invalid_argument("bin budget out of range");
    bp.bin_budget = static_cast<std::uint64_t>(b);
    tok.expect_done();
  }
  bp.validate();
  return bp;
}

namespace {
template <typename T, typename Reader>
T parse_text(const std::string& text, Reader reader) {
  std::istringstream in(text);
  return reader(in);
}

template <typename Reader>
auto load_file(const std::filesystem::path& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("file not found: " + path.string());
  return reader(in);
}
}  // namespace

EqualityIlp parse_ilp(const std::string& text) { return parse_text<EqualityIlp>(text, read_ilp); }
KnapsackEquality parse_knapsack(const std::string& text) {
  return parse_text<KnapsackEquality>(text, read_knapsack);
}
BinPackingInstance parse_bp(const std::string& text) {
  return parse_text<BinPackingInstance>(text, read_bp);
}

EqualityIlp load_ilp(const std::filesystem::path& path) { return load_file(path, read_ilp); }
KnapsackEquality load_knapsack(const std::filesystem::path& path) {
  return load_file(path, read_knapsack);
}
BinPackingInstance load_bp(const std::filesystem::path& path) {
  return load_file(path, read_bp);
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
}

}  // namespace aggpack::io
