#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "jetlab/lie_algebra.hpp"

namespace jetlab {

/// Known-good bracket tables for the 21-dimensional second jet algebra
/// (basis E, trivial E21 row/column omitted) and for the constrained
/// subalgebras (basis F, trivial F20 omitted, coefficient symbol c).
/// Entry tokens: "0", or [-][coef]LABEL with coef a rational literal or c.
inline const char* golden_e_table() {
  return
      "0 0 -4E16 0 -E17 -E18 0 -E20 0 0 0 0 0 0 -E19 0 -E21 0 0 0\n"
      "0 0 0 -4E16 0 -E17 E20 0 -E18 -E19 -E20 0 0 0 -E20 0 0 -E21 0 0\n"
      "4E16 0 0 0 0 0 -E17 0 0 -E18 0 -E19 -E20 0 0 0 0 0 -E21 0\n"
      "0 4E16 0 0 0 0 0 -E17 0 0 -E18 0 -E19 -E20 0 0 0 0 0 -E21\n"
      "E17 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "E18 E17 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 -E20 E17 0 0 0 0 0 0 0 0 0 0 0 0 1/4E21 0 0 0 0\n"
      "E20 0 0 E17 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 E18 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 E19 E18 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 E20 0 E18 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 E19 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 E20 E19 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 0 E20 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "E19 E20 0 0 0 0 0 0 0 0 0 0 0 0 0 -1/4E21 0 0 0 0\n"
      "0 0 0 0 0 0 -1/4E21 0 0 0 0 0 0 0 1/4E21 0 0 0 0 0\n"
      "E21 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 E21 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 E21 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 0 E21 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n";
}

inline const char* golden_f_table() {
  return
      "0 0 -4F15 0 -F17 0 -F19 cF16 0 0 F16 0 cF16 -F18 0 -F20 0 0 0\n"
      "0 0 0 -4F15 -F16 F19 0 -F17 -F18 -F19 0 0 0 -F19 0 0 -F20 0 0\n"
      "4F15 0 0 0 0 -F16 0 0 -F17 0 -F18 -F19 0 0 0 0 0 -F20 0\n"
      "0 4F15 0 0 0 0 -F16 0 0 -F17 0 -F18 -F19 0 0 0 0 0 -F20\n"
      "F17 F16 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 -F19 F16 0 0 0 0 0 0 0 0 0 0 0 1/4F20 0 0 0 0\n"
      "F19 0 0 F16 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "-cF16 F17 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 F18 F17 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 F19 0 F17 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "-F16 0 F18 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 F19 F18 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "-cF16 0 0 F19 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "F18 F19 0 0 0 0 0 0 0 0 0 0 0 0 -1/4F20 0 0 0 0\n"
      "0 0 0 0 0 -1/4F20 0 0 0 0 0 0 0 1/4F20 0 0 0 0 0\n"
      "F20 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 F20 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 F20 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n"
      "0 0 0 F20 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n";
}

/// Parsed table: entry[i][j] is the sparse bracket [row i+1, col j+1]
/// (0-based target indices) with the symbol c substituted.
inline std::vector<std::vector<SparseVec>> parse_golden_table(const std::string& text,
                                                              const Rational& c) {
  std::vector<std::vector<SparseVec>> table;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<SparseVec> row;
    std::istringstream toks(line);
    std::string tok;
    while (toks >> tok) {
      SparseVec v;
      if (tok != "0") {
        const size_t mark = tok.find_first_of("EF");
        if (mark == std::string::npos) throw ParseError("bad table token: " + tok);
        std::string coef = tok.substr(0, mark);
        const int target = std::stoi(tok.substr(mark + 1)) - 1;
        Rational q;
        bool negate = false;
        if (!coef.empty() && coef[0] == '-') {
          negate = true;
          coef = coef.substr(1);
        }
        if (coef.empty())
          q = 1;
        else if (coef == "c")
          q = c;
        else
          q = rat_parse(coef);
        if (negate) q = -q;
        v[target] = q;
      }
      row.push_back(std::move(v));
    }
    table.push_back(std::move(row));
  }
  return table;
}

struct TableMismatch {
  bool ok = true;
  int i = -1, j = -1;  // first mismatching 1-based pair
};

/// Compares an algebra against a parsed golden table. Pairs involving basis
/// elements beyond the displayed range must bracket to zero.
inline TableMismatch compare_with_golden(const GradedLieAlgebra& g,
                                         const std::vector<std::vector<SparseVec>>& table) {
  const int shown = static_cast<int>(table.size());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) {
      if (i == j) continue;
      const SparseVec expected =
          (i < shown && j < shown) ? table[i][j] : SparseVec{};
      if (g.bracket_basis(i, j) != expected) return {false, i + 1, j + 1};
    }
  return {true, -1, -1};
}

}  // namespace jetlab
