#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "jetlab/rat_matrix.hpp"

namespace jetlab {

struct JacobiViolation : Error {
  JacobiViolation(int i, int j, int k)
      : Error("Jacobi identity fails on basis triple (" + std::to_string(i) + "," +
              std::to_string(j) + "," + std::to_string(k) + ")"),
        i(i), j(j), k(k) {}
  int i, j, k;
};

struct LayerViolation : Error {
  LayerViolation(int i, int j)
      : Error("bracket of basis pair (" + std::to_string(i) + "," + std::to_string(j) +
              ") leaves its layer"),
        i(i), j(j) {}
  int i, j;
};

/// Sparse coefficient vector: basis index -> coefficient, no zeros stored.
using SparseVec = std::map<int, Rational>;

inline void sparse_axpy(SparseVec& acc, const Rational& f, const SparseVec& v) {
  if (sgn(f) == 0) return;
  for (const auto& [k, c] : v) {
    auto [pos, inserted] = acc.try_emplace(k, 0);
    pos->second += f * c;
    if (sgn(pos->second) == 0) acc.erase(pos);
  }
}

/// Finite-dimensional Lie algebra given by structure constants over the
/// rationals, with an optional layer partition making it graded:
/// [layer_a, layer_b] ⊆ layer_{a+b}. Construction validates antisymmetry
/// (by storage), the Jacobi identity on all basis triples, and layer
/// compatibility. Instances are immutable.
class GradedLieAlgebra {
 public:
  using BracketTable = std::map<std::pair<int, int>, SparseVec>;
  using Layers = std::vector<std::vector<int>>;

  GradedLieAlgebra(int dim, BracketTable brackets, std::optional<Layers> layers = std::nullopt)
      : dim_(dim), table_(std::move(brackets)), layers_(std::move(layers)) {
    normalize();
    validate();
  }

  int dim() const { return dim_; }
  const std::optional<Layers>& layers() const { return layers_; }
  const BracketTable& table() const { return table_; }

  std::vector<int> layer_dims() const {
    std::vector<int> d;
    if (layers_)
      for (const auto& l : *layers_) d.push_back(static_cast<int>(l.size()));
    else
      d.push_back(dim_);
    return d;
  }

  /// 1-based layer number of a basis index; 1 when ungraded.
  int layer_of(int idx) const { return layer_of_.empty() ? 1 : layer_of_[idx]; }
  int num_layers() const { return layers_ ? static_cast<int>(layers_->size()) : 1; }

  /// [e_i, e_j] for arbitrary i, j (antisymmetry applied).
  SparseVec bracket_basis(int i, int j) const {
    if (i == j) return {};
    const bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = table_.find({i, j});
    if (it == table_.end()) return {};
    SparseVec v = it->second;
    if (flip)
      for (auto& [k, c] : v) c = -c;
    return v;
  }

  /// Bilinear antisymmetric extension to coefficient vectors.
  std::vector<Rational> bracket(const std::vector<Rational>& x,
                                const std::vector<Rational>& y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
      throw DimensionMismatch("bracket: coefficient vector length != dim");
    SparseVec acc;
    for (const auto& [ij, v] : table_) {
      const auto [i, j] = ij;
      const Rational f = x[i] * y[j] - x[j] * y[i];
      sparse_axpy(acc, f, v);
    }
    std::vector<Rational> out(dim_, Rational(0));
    for (const auto& [k, c] : acc) out[k] = c;
    return out;
  }

  SparseVec bracket_sparse(const SparseVec& x, const SparseVec& y) const {
    SparseVec acc;
    for (const auto& [i, xi] : x)
      for (const auto& [j, yj] : y) sparse_axpy(acc, xi * yj, bracket_basis(i, j));
    return acc;
  }

  /// Matrix of ad(x): y ↦ [x, y].
  RatMatrix ad(const std::vector<Rational>& x) const {
    RatMatrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      SparseVec ej{{j, Rational(1)}};
      SparseVec col;
      for (int i = 0; i < dim_; ++i)
        if (sgn(x[i]) != 0) sparse_axpy(col, x[i], bracket_basis(i, j));
      for (const auto& [k, c] : col) m(k, j) = c;
    }
    return m;
  }

  friend void to_json(nlohmann::json& j, const GradedLieAlgebra& g) {
    j = nlohmann::json::object();
    j["dim"] = g.dim_;
    auto layers = nlohmann::json::array();
    if (g.layers_)
      for (const auto& l : *g.layers_) layers.push_back(l);
    j["layers"] = layers;
    auto brackets = nlohmann::json::array();
    for (const auto& [ij, v] : g.table_) {
      nlohmann::json e;
      e["i"] = ij.first;
      e["j"] = ij.second;
      auto coeffs = nlohmann::json::object();
      for (const auto& [k, c] : v) coeffs[std::to_string(k)] = rat_str(c);
      e["v"] = coeffs;
      brackets.push_back(e);
    }
    j["brackets"] = brackets;
  }

  static GradedLieAlgebra from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    BracketTable table;
    for (const auto& e : j.at("brackets")) {
      const int i = e.at("i").get<int>();
      const int jj = e.at("j").get<int>();
      SparseVec v;
      for (const auto& [key, val] : e.at("v").items()) v[std::stoi(key)] = rat_parse(val.get<std::string>());
      table[{i, jj}] = std::move(v);
    }
    std::optional<Layers> layers;
    if (j.contains("layers") && !j.at("layers").empty()) {
      Layers l;
      for (const auto& arr : j.at("layers")) l.push_back(arr.get<std::vector<int>>());
      layers = std::move(l);
    }
    return GradedLieAlgebra(dim, std::move(table), std::move(layers));
  }

 private:
  void normalize() {
    for (auto it = table_.begin(); it != table_.end();) {
      const auto [i, j] = it->first;
      if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || i >= j)
        throw DimensionMismatch("bracket table keys must satisfy 0 <= i < j < dim");
      for (auto vi = it->second.begin(); vi != it->second.end();) {
        if (vi->first < 0 || vi->first >= dim_)
          throw DimensionMismatch("bracket coefficient index out of range");
        if (sgn(vi->second) == 0)
          vi = it->second.erase(vi);
        else
          ++vi;
      }
      if (it->second.empty())
        it = table_.erase(it);
      else
        ++it;
    }
  }

  void validate() {
    if (layers_) {
      layer_of_.assign(dim_, 0);
      int seen = 0;
      for (size_t l = 0; l < layers_->size(); ++l)
        for (int idx : (*layers_)[l]) {
          if (idx < 0 || idx >= dim_ || layer_of_[idx] != 0)
            throw DimensionMismatch("layers must partition the basis indices");
          layer_of_[idx] = static_cast<int>(l) + 1;
          ++seen;
        }
      if (seen != dim_) throw DimensionMismatch("layers must partition the basis indices");
      const int s = static_cast<int>(layers_->size());
      for (const auto& [ij, v] : table_) {
        const int target = layer_of_[ij.first] + layer_of_[ij.second];
        for (const auto& [k, c] : v) {
          (void)c;
          if (target > s || layer_of_[k] != target) throw LayerViolation(ij.first, ij.second);
        }
      }
    }
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        const SparseVec bij = bracket_basis(i, j);
        for (int k = j + 1; k < dim_; ++k) {
          SparseVec acc = bracket_sparse(bij, {{k, Rational(1)}});
          sparse_axpy(acc, 1, bracket_sparse(bracket_basis(j, k), {{i, Rational(1)}}));
          sparse_axpy(acc, 1, bracket_sparse(bracket_basis(k, i), {{j, Rational(1)}}));
          if (!acc.empty()) throw JacobiViolation(i, j, k);
        }
      }
  }

  int dim_;
  BracketTable table_;
  std::optional<Layers> layers_;
  std::vector<int> layer_of_;
};

inline GradedLieAlgebra make_algebra(int dim, GradedLieAlgebra::BracketTable brackets,
                                     std::optional<GradedLieAlgebra::Layers> layers = std::nullopt) {
  return GradedLieAlgebra(dim, std::move(brackets), std::move(layers));
}

/// Span of all [basis of a, basis of b], as canonical column basis.
inline RatMatrix bracket_span(const GradedLieAlgebra& g, const RatMatrix& a, const RatMatrix& b) {
  std::vector<std::vector<Rational>> cols;
  for (int p = 0; p < a.cols(); ++p)
    for (int q = 0; q < b.cols(); ++q) cols.push_back(g.bracket(a.col_vec(p), b.col_vec(q)));
  RatMatrix m(g.dim(), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < g.dim(); ++i) m(i, j) = cols[j][i];
  return column_space(m);
}

/// Dimensions of g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...; ends with 0 for nilpotent
/// input, otherwise with the first repeated dimension.
inline std::vector<int> lower_central_series(const GradedLieAlgebra& g) {
  std::vector<int> dims{g.dim()};
  RatMatrix full = RatMatrix::identity(g.dim());
  RatMatrix cur = full;
  while (true) {
    RatMatrix next = bracket_span(g, full, cur);
    dims.push_back(next.cols());
    if (next.cols() == 0 || next.cols() == cur.cols()) break;
    cur = std::move(next);
  }
  return dims;
}

inline std::vector<int> derived_series(const GradedLieAlgebra& g) {
  std::vector<int> dims{g.dim()};
  RatMatrix cur = RatMatrix::identity(g.dim());
  while (true) {
    RatMatrix next = bracket_span(g, cur, cur);
    dims.push_back(next.cols());
    if (next.cols() == 0 || next.cols() == cur.cols()) break;
    cur = std::move(next);
  }
  return dims;
}

/// dim of the center: kernel of the stacked ad(e_i) maps.
inline int center_dim(const GradedLieAlgebra& g) {
  const int n = g.dim();
  std::vector<SparseRow> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<SparseRow> block(n);  // row k: coefficient of e_k in [e_i, e_j] over unknown j
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : g.bracket_basis(i, j)) block[k][j] = c;
    for (auto& r : block)
      if (!r.empty()) rows.push_back(std::move(r));
  }
  return n - rank_of_rows(rows);
}

struct MorphismCheck {
  bool ok = false;
  int fail_i = -1, fail_j = -1;  // first failing basis pair when !ok
};

/// Certificate check: L is an isomorphism g -> h iff L is invertible and
/// L[x,y]_g = [Lx,Ly]_h on all basis pairs.
inline MorphismCheck verify_morphism(const GradedLieAlgebra& g, const GradedLieAlgebra& h,
                                     const RatMatrix& L) {
  if (g.dim() != h.dim() || L.rows() != h.dim() || L.cols() != g.dim()) return {false, -1, -1};
  if (static_cast<int>(rref(L).pivots.size()) != L.cols()) return {false, -1, -1};
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      std::vector<Rational> gij(g.dim(), Rational(0));
      for (const auto& [k, c] : g.bracket_basis(i, j)) gij[k] = c;
      const RatMatrix lhs = L * column_from(gij);
      const std::vector<Rational> rhs = h.bracket(L.col_vec(i), L.col_vec(j));
      for (int k = 0; k < h.dim(); ++k)
        if (lhs(k, 0) != rhs[k]) return {false, i, j};
    }
  return {true, -1, -1};
}

struct Subalgebra {
  GradedLieAlgebra algebra;
  RatMatrix embedding;  // columns: adapted basis in ambient coordinates
};

/// Smallest subalgebra containing the seed columns. The adapted basis keeps
/// the seed vectors first, then appends bracket-generated vectors in
/// deterministic scan order. Layers are attached when every basis vector
/// sits in a single layer of g and the grading restricts.
inline Subalgebra generated_subalgebra(const GradedLieAlgebra& g, const RatMatrix& seed) {
  const int n = g.dim();
  if (seed.rows() != n) throw DimensionMismatch("seed rows != dim");
  if (rank(seed) != seed.cols()) throw DimensionMismatch("seed columns must be independent");

  std::vector<std::vector<Rational>> basis;
  for (int j = 0; j < seed.cols(); ++j) basis.push_back(seed.col_vec(j));

  auto as_matrix = [&](const std::vector<std::vector<Rational>>& cols) {
    RatMatrix m(n, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
  };

  size_t frontier_begin = 0;
  while (true) {
    const size_t sz = basis.size();
    const RatMatrix cur = as_matrix(basis);
    std::vector<std::vector<Rational>> found;
    for (size_t a = 0; a < sz; ++a)
      for (size_t b = std::max(a + 1, frontier_begin); b < sz; ++b) {
        std::vector<Rational> w = g.bracket(basis[a], basis[b]);
        bool zero = true;
        for (const auto& v : w)
          if (sgn(v) != 0) {
            zero = false;
            break;
          }
        if (zero) continue;
        RatMatrix probe = as_matrix(basis);
        for (const auto& f : found) probe = hstack(probe, column_from(f));
        if (!span_contains(probe, column_from(w))) found.push_back(std::move(w));
      }
    if (found.empty()) break;
    frontier_begin = sz;
    for (auto& f : found) basis.push_back(std::move(f));
  }

  const RatMatrix embed = as_matrix(basis);
  const int m = embed.cols();

  GradedLieAlgebra::BracketTable table;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const std::vector<Rational> w = g.bracket(basis[a], basis[b]);
      const auto x = solve(embed, column_from(w));
      if (!x) throw Error("generated subalgebra is not closed (internal)");
      SparseVec v;
      for (int k = 0; k < m; ++k)
        if (sgn((*x)(k, 0)) != 0) v[k] = (*x)(k, 0);
      if (!v.empty()) table[{a, b}] = std::move(v);
    }

  std::optional<GradedLieAlgebra::Layers> sub_layers;
  if (g.layers()) {
    GradedLieAlgebra::Layers lay(g.layers()->size());
    bool homogeneous = true;
    for (int b = 0; b < m && homogeneous; ++b) {
      int layer = 0;
      for (int i = 0; i < n; ++i) {
        if (sgn(embed(i, b)) == 0) continue;
        const int l = g.layer_of(i);
        if (layer == 0)
          layer = l;
        else if (layer != l)
          homogeneous = false;
      }
      if (layer == 0) homogeneous = false;
      if (homogeneous) lay[layer - 1].push_back(b);
    }
    if (homogeneous) {
      while (!lay.empty() && lay.back().empty()) lay.pop_back();
      sub_layers = std::move(lay);
    }
  }

  return {GradedLieAlgebra(m, std::move(table), std::move(sub_layers)), embed};
}

}  // namespace jetlab
