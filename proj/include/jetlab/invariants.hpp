#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "jetlab/lie_algebra.hpp"
#include "jetlab/rng.hpp"

namespace jetlab {
namespace detail {

/// Unknowns D_{a,b} (coefficient of e_a in D e_b) restricted to an index set;
/// id(a, b) gives the column of the unknown, or -1 when D_{a,b} is forced 0.
struct DerivationSystem {
  std::vector<int> ids;
  int n = 0;
  int unknowns = 0;

  explicit DerivationSystem(int dim) : ids(static_cast<size_t>(dim) * dim, -1), n(dim) {}
  void enable(int a, int b) {
    int& slot = ids[static_cast<size_t>(a) * n + b];
    if (slot < 0) slot = unknowns++;
  }
  int id(int a, int b) const { return ids[static_cast<size_t>(a) * n + b]; }
};

/// Rows of D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] over the enabled unknowns.
/// Unknowns outside the set are treated as zero.
inline int derivation_nullity(const GradedLieAlgebra& g, const DerivationSystem& sys) {
  const int n = g.dim();
  std::vector<SparseRow> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<SparseRow> eq(n);  // one equation per target component a
      for (const auto& [l, c] : g.bracket_basis(i, j))
        for (int a = 0; a < n; ++a)
          if (sys.id(a, l) >= 0) eq[a][sys.id(a, l)] += c;
      for (int b = 0; b < n; ++b) {
        for (const auto& [a, c] : g.bracket_basis(b, j))
          if (sys.id(b, i) >= 0) eq[a][sys.id(b, i)] -= c;
        for (const auto& [a, c] : g.bracket_basis(i, b))
          if (sys.id(b, j) >= 0) eq[a][sys.id(b, j)] -= c;
      }
      for (auto& r : eq) {
        for (auto it = r.begin(); it != r.end();)
          it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
        if (!r.empty()) rows.push_back(std::move(r));
      }
    }
  return sys.unknowns - rank_of_rows(rows);
}

}  // namespace detail

/// dim of the space of derivations D[x,y] = [Dx,y] + [x,Dy]. For graded
/// algebras the space splits by degree, D = Σ D_d with D_d(layer k) ⊆
/// layer k+d, and each block is solved separately.
inline int derivations_dim(const GradedLieAlgebra& g) {
  const int n = g.dim();
  if (!g.layers()) {
    detail::DerivationSystem sys(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) sys.enable(a, b);
    return detail::derivation_nullity(g, sys);
  }
  const int s = g.num_layers();
  int total = 0;
  for (int d = -(s - 1); d <= s - 1; ++d) {
    detail::DerivationSystem sys(n);
    for (int b = 0; b < n; ++b) {
      const int target = g.layer_of(b) + d;
      if (target < 1 || target > s) continue;
      for (int a = 0; a < n; ++a)
        if (g.layer_of(a) == target) sys.enable(a, b);
    }
    if (sys.unknowns > 0) total += detail::derivation_nullity(g, sys);
  }
  return total;
}

/// Degree-0 block only: derivations mapping every layer into itself.
inline int graded_derivations_dim(const GradedLieAlgebra& g) {
  const int n = g.dim();
  detail::DerivationSystem sys(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.layer_of(a) == g.layer_of(b)) sys.enable(a, b);
  return detail::derivation_nullity(g, sys);
}

namespace detail {

inline int pair_index(int n, int i, int j) {  // i < j, lexicographic
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace detail

/// Chevalley-Eilenberg with trivial coefficients: d1(ξ)(x,y) = -ξ([x,y]).
inline int ce_d1_rank(const GradedLieAlgebra& g) {
  const int n = g.dim();
  std::vector<SparseRow> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SparseRow r;
      for (const auto& [l, c] : g.bracket_basis(i, j)) r[l] = -c;
      if (!r.empty()) rows.push_back(std::move(r));
    }
  return rank_of_rows(rows);
}

inline int ce_d2_rank(const GradedLieAlgebra& g) {
  const int n = g.dim();
  std::vector<SparseRow> rows;
  auto add = [&](SparseRow& r, int sign_flip, int l, int k, const Rational& c) {
    // contribution sign * c * ω(e_l, e_k) with ω skew on ordered pairs
    if (l == k) return;
    const int col = l < k ? detail::pair_index(n, l, k) : detail::pair_index(n, k, l);
    const int s = (l < k ? 1 : -1) * sign_flip;
    auto [pos, inserted] = r.try_emplace(col, 0);
    pos->second += s * c;
    if (sgn(pos->second) == 0) r.erase(pos);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        SparseRow r;
        for (const auto& [l, c] : g.bracket_basis(i, j)) add(r, -1, l, k, c);
        for (const auto& [l, c] : g.bracket_basis(i, k)) add(r, +1, l, j, c);
        for (const auto& [l, c] : g.bracket_basis(j, k)) add(r, -1, l, i, c);
        if (!r.empty()) rows.push_back(std::move(r));
      }
  return rank_of_rows(rows);
}

inline int h1_dim(const GradedLieAlgebra& g) { return g.dim() - ce_d1_rank(g); }

inline int h2_dim(const GradedLieAlgebra& g) {
  const int pairs = g.dim() * (g.dim() - 1) / 2;
  return (pairs - ce_d2_rank(g)) - ce_d1_rank(g);
}

/// Exact isomorphism invariants plus a seeded sampled ad-rank. The sampled
/// field is a probabilistic lower bound only and never certifies anything
/// on its own; verdicts compare the exact fields.
struct InvariantReport {
  int dim = 0;
  std::vector<int> layerDims;
  std::vector<int> lowerCentralDims;
  std::vector<int> derivedDims;
  int centerDim = 0;
  int derDim = 0;
  int gradedDerDim = 0;
  int h1Dim = 0;
  int h2Dim = 0;
  int sampledMaxAdRank = 0;
  std::uint64_t seed = 0;
  int trials = 0;
};

inline InvariantReport invariant_report(const GradedLieAlgebra& g, std::uint64_t seed, int trials) {
  if (trials < 1) throw DimensionMismatch("invariant_report: trials >= 1 required");
  InvariantReport r;
  r.dim = g.dim();
  r.layerDims = g.layer_dims();
  r.lowerCentralDims = lower_central_series(g);
  r.derivedDims = derived_series(g);
  r.centerDim = center_dim(g);
  r.derDim = derivations_dim(g);
  r.gradedDerDim = g.layers() ? graded_derivations_dim(g) : r.derDim;
  r.h1Dim = h1_dim(g);
  r.h2Dim = h2_dim(g);
  r.seed = seed;
  r.trials = trials;
  int best = 0;
  for (int i = 0; i < g.dim(); ++i) {
    std::vector<Rational> x(g.dim(), Rational(0));
    x[i] = 1;
    best = std::max(best, rank(g.ad(x)));
  }
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> x(g.dim());
    for (auto& v : x) v = rng.next_small_rational();
    best = std::max(best, rank(g.ad(x)));
  }
  r.sampledMaxAdRank = best;
  return r;
}

/// Names of exact fields that differ; sampledMaxAdRank is deliberately
/// excluded from the verdict.
inline std::vector<std::string> differing_exact_fields(const InvariantReport& a,
                                                       const InvariantReport& b) {
  std::vector<std::string> out;
  if (a.dim != b.dim) out.push_back("dim");
  if (a.layerDims != b.layerDims) out.push_back("layerDims");
  if (a.lowerCentralDims != b.lowerCentralDims) out.push_back("lowerCentralDims");
  if (a.derivedDims != b.derivedDims) out.push_back("derivedDims");
  if (a.centerDim != b.centerDim) out.push_back("centerDim");
  if (a.derDim != b.derDim) out.push_back("derDim");
  if (a.gradedDerDim != b.gradedDerDim) out.push_back("gradedDerDim");
  if (a.h1Dim != b.h1Dim) out.push_back("h1Dim");
  if (a.h2Dim != b.h2Dim) out.push_back("h2Dim");
  return out;
}

inline void to_json(nlohmann::json& j, const InvariantReport& r) {
  j = nlohmann::json{{"dim", r.dim},
                     {"layerDims", r.layerDims},
                     {"lowerCentralDims", r.lowerCentralDims},
                     {"derivedDims", r.derivedDims},
                     {"centerDim", r.centerDim},
                     {"derDim", r.derDim},
                     {"gradedDerDim", r.gradedDerDim},
                     {"h1Dim", r.h1Dim},
                     {"h2Dim", r.h2Dim},
                     {"sampledMaxAdRank", r.sampledMaxAdRank},
                     {"seed", r.seed},
                     {"trials", r.trials}};
}

}  // namespace jetlab
