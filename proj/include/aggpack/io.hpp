#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "aggpack/model.hpp"

// Plain-text formats. All files are UTF-8, whitespace separated decimal
// integers of unbounded length; '#' starts a comment that runs to the end of
// the line.
//
//   ilp file:       "ilp d n", d rows of A, one line b, one line u,
//                   optional line "cost c_1 ... c_n"
//   knapsack file:  "knapsack n", one line of n weights, one line C
//   bp file:        "bp d", sizes, multiplicities, C, optional line B
namespace aggpack::io {

std::string write_ilp(const EqualityIlp& ilp);
std::string write_knapsack(const KnapsackEquality& kp);
std::string write_bp(const BinPackingInstance& bp);

EqualityIlp read_ilp(std::istream& in);
KnapsackEquality read_knapsack(std::istream& in);
BinPackingInstance read_bp(std::istream& in);

EqualityIlp parse_ilp(const std::string& text);
KnapsackEquality parse_knapsack(const std::string& text);
BinPackingInstance parse_bp(const std::string& text);

EqualityIlp load_ilp(const std::filesystem::path& path);
KnapsackEquality load_knapsack(const std::filesystem::path& path);
BinPackingInstance load_bp(const std::filesystem::path& path);

void save_text(const std::filesystem::path& path, const std::string& text);

}  // namespace aggpack::io
