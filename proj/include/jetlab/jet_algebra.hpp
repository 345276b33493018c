#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetlab/heisenberg.hpp"
#include "jetlab/hpoly.hpp"
#include "jetlab/lie_algebra.hpp"

namespace jetlab {

struct WellDefinednessFailure : Error {
  using Error::Error;
};
struct MembershipFailure : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// The space HD^2 over h^2: bilinear maps on the first layer arising as
// second-order horizontal derivatives. Inside all 4x4 bilinear forms it is
// the 11-dimensional subspace of forms whose antisymmetric part is a
// multiple of the symplectic form.
// ---------------------------------------------------------------------------

/// Basis forms as 4x4 matrices: A(V, W) = V^T M W over (x1, x2, y1, y2).
/// Order matches the second-order jet slots (X1X1 .. Y1X1).
inline const std::array<RatMatrix, 11>& hd2_forms() {
  static const std::array<RatMatrix, 11> forms = [] {
    auto unit = [](int a, int b) {
      RatMatrix m(4, 4);
      m(a, b) = 1;
      return m;
    };
    std::array<RatMatrix, 11> f{
        unit(0, 0),                     // X1X1: dx1⊗dx1
        unit(0, 1) + unit(1, 0),        // X1X2: dx1⊗dx2 + dx2⊗dx1
        unit(0, 2) - unit(3, 1),        // X1Y1: dx1⊗dy1 - dy2⊗dx2
        unit(0, 3) + unit(3, 0),        // X1Y2: dx1⊗dy2 + dy2⊗dx1
        unit(1, 1),                     // X2X2: dx2⊗dx2
        unit(2, 1) + unit(1, 2),        // X2Y1: dy1⊗dx2 + dx2⊗dy1
        unit(1, 3) + unit(3, 1),        // X2Y2: dx2⊗dy2 + dy2⊗dx2
        unit(2, 2),                     // Y1Y1: dy1⊗dy1
        unit(2, 3) + unit(3, 2),        // Y1Y2: dy1⊗dy2 + dy2⊗dy1
        unit(3, 3),                     // Y2Y2: dy2⊗dy2
        unit(2, 0) + unit(3, 1),        // Y1X1: dy1⊗dx1 + dy2⊗dx2
    };
    return f;
  }();
  return forms;
}

inline const std::array<const char*, 11>& hd2_labels() {
  static const std::array<const char*, 11> l{"X1X1", "X1X2", "X1Y1", "X1Y2", "X2X2", "X2Y1",
                                             "X2Y2", "Y1Y1", "Y1Y2", "Y2Y2", "Y1X1"};
  return l;
}

/// Coordinates of a bilinear form in the 11-element basis; nullopt when the
/// form lies outside HD^2.
inline std::optional<std::array<Rational, 11>> hd2_coords_from_bilinear(const RatMatrix& b) {
  static const RatMatrix flat = [] {
    RatMatrix m(16, 11);
    for (int k = 0; k < 11; ++k)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(4 * r + c, k) = hd2_forms()[k](r, c);
    return m;
  }();
  RatMatrix rhs(16, 1);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) rhs(4 * r + c, 0) = b(r, c);
  const auto x = solve(flat, rhs);
  if (!x) return std::nullopt;
  if (flat * *x != rhs) return std::nullopt;
  std::array<Rational, 11> out;
  for (int k = 0; k < 11; ++k) out[k] = (*x)(k, 0);
  return out;
}

/// Element of HD^{<=2}: constant part, covector part over (dx1..dy2), and
/// bilinear part over the 11 basis forms.
struct HDElement {
  Rational k0 = 0;
  std::array<Rational, 4> k1{};
  std::array<Rational, 11> k2{};

  bool operator==(const HDElement& o) const { return k0 == o.k0 && k1 == o.k1 && k2 == o.k2; }

  /// Derived bilinear matrix B with B(i, j) = A^2(e_i, e_j).
  RatMatrix bilinear() const {
    RatMatrix b(4, 4);
    for (int k = 0; k < 11; ++k)
      if (sgn(k2[k]) != 0) b = b + hd2_forms()[k].scaled(k2[k]);
    return b;
  }

  static HDElement basis_k2(int k) {
    HDElement e;
    e.k2[k] = 1;
    return e;
  }
  static HDElement basis_k1(int k) {
    HDElement e;
    e.k1[k] = 1;
    return e;
  }
  static HDElement constant(const Rational& c) {
    HDElement e;
    e.k0 = c;
    return e;
  }
};

/// Right contraction by a first-layer vector: (V ⌟ A)^k = V ⌟ A^{k+1}, with
/// (V ⌟ A^2)(W) = A^2(W, V) and V ⌟ A^1 = A^1(V); constants contract to 0.
inline HDElement contract(const std::array<Rational, 4>& v, const HDElement& a) {
  HDElement out;
  const RatMatrix b = a.bilinear();
  for (int r = 0; r < 4; ++r) {
    Rational acc = 0;
    for (int c = 0; c < 4; ++c)
      if (sgn(b(r, c)) != 0) acc += b(r, c) * v[c];
    out.k1[r] = acc;
  }
  for (int i = 0; i < 4; ++i) out.k0 += a.k1[i] * v[i];
  return out;
}

// ---------------------------------------------------------------------------
// The contraction antimorphism psi: h^2 -> End(HD^{<=2}). Coordinates on
// HD^{<=2} are ordered [k2 (11), k1 (4), k0 (1)], 16 in total.
// ---------------------------------------------------------------------------

inline constexpr int kHDCoords = 16;

inline HDElement hd_from_coords(const RatMatrix& v) {
  HDElement e;
  for (int k = 0; k < 11; ++k) e.k2[k] = v(k, 0);
  for (int k = 0; k < 4; ++k) e.k1[k] = v(11 + k, 0);
  e.k0 = v(15, 0);
  return e;
}

inline RatMatrix hd_to_coords(const HDElement& e) {
  RatMatrix v(kHDCoords, 1);
  for (int k = 0; k < 11; ++k) v(k, 0) = e.k2[k];
  for (int k = 0; k < 4; ++k) v(11 + k, 0) = e.k1[k];
  v(15, 0) = e.k0;
  return v;
}

/// Antimorphism data: one 16x16 matrix per basis element e_1..e_5 of h^2.
/// The generator actions are right contractions; the action of the center
/// is derived from the antimorphism identity, not postulated.
struct Antimorphism {
  std::array<RatMatrix, 5> action;
  const RatMatrix& operator[](int i) const { return action[i]; }
};

inline Antimorphism psi() {
  Antimorphism p;
  for (int i = 0; i < 4; ++i) {
    RatMatrix m(kHDCoords, kHDCoords);
    std::array<Rational, 4> ei{};
    ei[i] = 1;
    for (int k = 0; k < 11; ++k) {
      const HDElement image = contract(ei, HDElement::basis_k2(k));
      for (int r = 0; r < 4; ++r) m(11 + r, k) = image.k1[r];
    }
    m(15, 11 + i) = 1;  // e_i ⌟ dz_r = δ_{ri}
    p.action[i] = std::move(m);
  }
  auto commutator = [](const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; };
  // [e_1, e_3] = [e_2, e_4] = -4 e_5, so psi(e_5) = (1/4)[psi(e_1), psi(e_3)];
  // the identity makes the two candidate derivations agree on HD^2.
  const RatMatrix via13 = commutator(p.action[0], p.action[2]).scaled(rat(1, 4));
  const RatMatrix via24 = commutator(p.action[1], p.action[3]).scaled(rat(1, 4));
  if (via13 != via24)
    throw WellDefinednessFailure("center action differs across the two symplectic pairs");
  p.action[4] = via13;

  const GradedLieAlgebra h2 = hn_algebra(2);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      RatMatrix lhs(kHDCoords, kHDCoords);
      for (const auto& [k, c] : h2.bracket_basis(i, j)) lhs = lhs + p.action[k].scaled(c);
      if (lhs != commutator(p.action[i], p.action[j]).scaled(rat(-1)))
        throw WellDefinednessFailure("antimorphism identity fails on generator pair (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return p;
}

// ---------------------------------------------------------------------------
// Generic anti-semidirect product g ⋉ h for abelian graded h:
//   [(x, X), (y, Y)] = ([x, y], psi(y) X - psi(x) Y).
// Basis order interleaves by layer: g part of layer k, then h block k.
// ---------------------------------------------------------------------------

struct AntiSemidirect {
  GradedLieAlgebra algebra;
  std::vector<int> g_index;  // product index of each g basis element
  std::vector<int> h_index;  // product index of each h coordinate
};

inline AntiSemidirect anti_semidirect(const GradedLieAlgebra& g, const std::vector<int>& h_dims,
                                      const std::vector<RatMatrix>& psi_action) {
  const int ng = g.dim();
  int nh = 0;
  for (int d : h_dims) nh += d;
  if (static_cast<int>(psi_action.size()) != ng)
    throw DimensionMismatch("anti_semidirect: one psi matrix per g basis element required");
  for (const auto& m : psi_action)
    if (m.rows() != nh || m.cols() != nh)
      throw DimensionMismatch("anti_semidirect: psi matrices must act on h");

  auto psi_of = [&](const SparseVec& x) {
    RatMatrix m(nh, nh);
    for (const auto& [k, c] : x) m = m + psi_action[k].scaled(c);
    return m;
  };
  // antimorphism identity: psi([x,y]) = -[psi(x), psi(y)] on all basis pairs
  for (int i = 0; i < ng; ++i)
    for (int j = i + 1; j < ng; ++j) {
      const RatMatrix lhs = psi_of(g.bracket_basis(i, j));
      const RatMatrix rhs =
          (psi_action[i] * psi_action[j] - psi_action[j] * psi_action[i]).scaled(rat(-1));
      if (lhs != rhs)
        throw WellDefinednessFailure("psi is not an antimorphism on pair (" + std::to_string(i) +
                                     "," + std::to_string(j) + ")");
    }

  const int layers_g = g.layers() ? g.num_layers() : 1;
  const int layers_total = std::max<int>(layers_g, static_cast<int>(h_dims.size()));

  std::vector<int> g_index(ng, -1), h_index(nh, -1);
  GradedLieAlgebra::Layers layers(layers_total);
  int next = 0, h_off = 0;
  std::vector<int> h_block_offset(h_dims.size(), 0);
  for (size_t k = 0; k < h_dims.size(); ++k) {
    h_block_offset[k] = h_off;
    h_off += h_dims[k];
  }
  for (int layer = 1; layer <= layers_total; ++layer) {
    if (layer <= layers_g && g.layers())
      for (int i : (*g.layers())[layer - 1]) {
        g_index[i] = next;
        layers[layer - 1].push_back(next++);
      }
    else if (!g.layers() && layer == 1)
      for (int i = 0; i < ng; ++i) {
        g_index[i] = next;
        layers[0].push_back(next++);
      }
    if (layer <= static_cast<int>(h_dims.size()))
      for (int r = 0; r < h_dims[layer - 1]; ++r) {
        h_index[h_block_offset[layer - 1] + r] = next;
        layers[layer - 1].push_back(next++);
      }
  }

  GradedLieAlgebra::BracketTable table;
  auto put = [&](int a, int b, SparseVec v) {
    if (v.empty()) return;
    if (a > b) {
      for (auto& [k, c] : v) c = -c;
      std::swap(a, b);
    }
    table[{a, b}] = std::move(v);
  };
  for (int i = 0; i < ng; ++i)
    for (int j = i + 1; j < ng; ++j) {
      SparseVec v;
      for (const auto& [k, c] : g.bracket_basis(i, j)) v[g_index[k]] = c;
      put(g_index[i], g_index[j], std::move(v));
    }
  for (int i = 0; i < ng; ++i)
    for (int r = 0; r < nh; ++r) {
      // [(e_i, 0), (0, h_r)] = (0, -psi(e_i) h_r)
      SparseVec v;
      for (int s = 0; s < nh; ++s)
        if (sgn(psi_action[i](s, r)) != 0) v[h_index[s]] = -psi_action[i](s, r);
      put(g_index[i], h_index[r], std::move(v));
    }

  return {GradedLieAlgebra(ng + nh, std::move(table), std::move(layers)), std::move(g_index),
          std::move(h_index)};
}

/// exp of the nilpotent contraction action of a first-layer-plus-center
/// vector w (coefficients over e1..e5): finite sum, cubes vanish on HD^{<=2}.
inline RatMatrix hd_exp(const Antimorphism& psi_data, const std::vector<Rational>& w) {
  RatMatrix p(kHDCoords, kHDCoords);
  for (size_t i = 0; i < w.size() && i < 5; ++i)
    if (sgn(w[i]) != 0) p = p + psi_data[static_cast<int>(i)].scaled(w[i]);
  const RatMatrix p2 = p * p;
  return RatMatrix::identity(kHDCoords) + p + p2.scaled(rat(1, 2)) + (p2 * p).scaled(rat(1, 6));
}

/// Group element of the second jet bundle: base point and fiber.
struct J2GroupElement {
  HPoint base;
  HDElement fiber;
  bool operator==(const J2GroupElement& o) const { return base == o.base && fiber == o.fiber; }
};

/// Group product (a, A)(b, B) = (a b, B + e^{psi(log b)} A); in exponential
/// coordinates log is the identity on (x, y, t).
inline J2GroupElement j2_group_mul(const Antimorphism& psi_data, const J2GroupElement& p,
                                   const J2GroupElement& q) {
  const std::vector<Rational> log_b{q.base.x[0], q.base.x[1], q.base.y[0], q.base.y[1], q.base.t};
  const RatMatrix moved = hd_exp(psi_data, log_b) * hd_to_coords(p.fiber);
  J2GroupElement out;
  out.base = group_mul(p.base, q.base);
  out.fiber = hd_from_coords(moved + hd_to_coords(q.fiber));
  return out;
}

// ---------------------------------------------------------------------------
// The 21-dimensional second jet algebra over h^2, basis
//   E = { e1..e4, X1X1..Y1X1 forms, e5, dx1..dy2, 1 },
// with layers (15, 5, 1).
// ---------------------------------------------------------------------------

inline const GradedLieAlgebra& j2_h2() {
  static const GradedLieAlgebra algebra = [] {
    const Antimorphism p = psi();
    std::vector<RatMatrix> action(p.action.begin(), p.action.end());
    return anti_semidirect(hn_algebra(2), {11, 4, 1}, action).algebra;
  }();
  return algebra;
}

/// Ordered 21-label basis descriptor for printing: layer tag per index.
struct BasisDescriptor {
  std::string label;
  int layer;
};

inline std::vector<BasisDescriptor> hd_basis() {
  std::vector<BasisDescriptor> out;
  for (int i = 1; i <= 4; ++i) out.push_back({"e" + std::to_string(i), 1});
  for (const char* l : hd2_labels()) out.push_back({std::string("A_") + l, 1});
  out.push_back({"e5", 2});
  for (const char* l : {"X1", "X2", "Y1", "Y2"}) out.push_back({std::string("A_") + l, 2});
  out.push_back({"1", 3});
  return out;
}

// ---------------------------------------------------------------------------
// PBW reduction of ordered second-order products. Label order matches the
// jet slots; the only relations are
//   T = (1/4)(Y1 X1 - X1 Y1)  and  Y2 X2 = X2 Y2 + Y1 X1 - X1 Y1.
// ---------------------------------------------------------------------------

/// Coordinates of the operator Z_i Z_j (j applied first) in the 11 basis ops.
inline std::array<Rational, 11> pbw_reduction(int i, int j) {
  auto unit = [](int k) {
    std::array<Rational, 11> v{};
    v[k] = 1;
    return v;
  };
  static const int canon[4][4] = {
      // (i, j) -> basis slot; -1 marks the two reductions below
      {0, 1, 2, 3},
      {1, 4, 5, 6},
      {10, 5, 7, 8},
      {3, -1, 8, 9},
  };
  if (i == 3 && j == 1) {
    std::array<Rational, 11> v{};  // Y2 X2 = X2Y2 + Y1X1 - X1Y1
    v[6] = 1;
    v[10] = 1;
    v[2] = -1;
    return v;
  }
  return unit(canon[i][j]);
}

/// Row of the harmonicity constraint of L_M on the second-order jet slots.
inline RatMatrix constraint_row(const RatMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4 || m != m.transpose())
    throw DimensionMismatch("constraint_row: matrix must be symmetric 4x4");
  RatMatrix row(1, 11);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (sgn(m(i, j)) == 0) continue;
      const auto red = pbw_reduction(i, j);
      for (int k = 0; k < 11; ++k) row(0, k) += m(i, j) * red[k];
    }
  return row;
}

// ---------------------------------------------------------------------------
// The 20-dimensional subalgebras cut out by the harmonicity constraint
// eta5 + eta12 + c (eta9 + eta14) = 0, in the basis
//   F = { e1..e4, X1X2, X1Y1, X1Y2, X2X2 - c X1X1, X2Y1, X2Y2,
//         Y1Y1 - X1X1, Y1Y2, Y2Y2 - c X1X1, Y1X1, e5, dx1..dy2, 1 },
// layers (14, 5, 1).
// ---------------------------------------------------------------------------

inline RatMatrix jl_embedding(const Rational& c) {
  RatMatrix f(21, 20);
  auto e = [&](int one_based) { return one_based - 1; };
  int col = 0;
  for (int k = 1; k <= 4; ++k) f(e(k), col++) = 1;       // F1..F4
  f(e(6), col++) = 1;                                    // F5  = X1X2
  f(e(7), col++) = 1;                                    // F6  = X1Y1
  f(e(8), col++) = 1;                                    // F7  = X1Y2
  f(e(9), col) = 1;                                      // F8  = X2X2 - c X1X1
  f(e(5), col++) = -c;
  f(e(10), col++) = 1;                                   // F9  = X2Y1
  f(e(11), col++) = 1;                                   // F10 = X2Y2
  f(e(12), col) = 1;                                     // F11 = Y1Y1 - X1X1
  f(e(5), col++) = -1;
  f(e(13), col++) = 1;                                   // F12 = Y1Y2
  f(e(14), col) = 1;                                     // F13 = Y2Y2 - c X1X1
  f(e(5), col++) = -c;
  f(e(15), col++) = 1;                                   // F14 = Y1X1
  f(e(16), col++) = 1;                                   // F15 = e5
  for (int k = 17; k <= 21; ++k) f(e(k), col++) = 1;     // F16..F20
  return f;
}

struct JLSubalgebra {
  GradedLieAlgebra algebra;
  RatMatrix embedding;  // 21x20, columns F1..F20 in E coordinates
};

inline JLSubalgebra jl_subalgebra(const Rational& c) {
  if (sgn(c) <= 0) throw DimensionMismatch("jl_subalgebra: c must be positive");
  const GradedLieAlgebra& j2 = j2_h2();
  const RatMatrix f = jl_embedding(c);
  GradedLieAlgebra::BracketTable table;
  for (int a = 0; a < 20; ++a)
    for (int b = a + 1; b < 20; ++b) {
      const std::vector<Rational> w = j2.bracket(f.col_vec(a), f.col_vec(b));
      const auto x = solve(f, column_from(w));
      if (!x) throw MembershipFailure("constrained first layer failed to close");
      SparseVec v;
      for (int k = 0; k < 20; ++k)
        if (sgn((*x)(k, 0)) != 0) v[k] = (*x)(k, 0);
      if (!v.empty()) table[{a, b}] = std::move(v);
    }
  GradedLieAlgebra::Layers layers(3);
  for (int k = 0; k < 14; ++k) layers[0].push_back(k);
  for (int k = 14; k < 19; ++k) layers[1].push_back(k);
  layers[2].push_back(19);
  return {GradedLieAlgebra(20, std::move(table), std::move(layers)), f};
}

/// Subalgebra generated by an arbitrary harmonicity constraint row on the
/// second-order slots (the first-layer seed is e1..e4 plus ker row).
inline Subalgebra jl_from_constraint(const GradedLieAlgebra& j2, const RatMatrix& row) {
  if (row.rows() != 1 || row.cols() != 11) throw DimensionMismatch("constraint row must be 1x11");
  const RatMatrix ker = nullspace(row);
  RatMatrix seed(21, 4 + ker.cols());
  for (int k = 0; k < 4; ++k) seed(k, k) = 1;
  for (int j = 0; j < ker.cols(); ++j)
    for (int i = 0; i < 11; ++i) seed(4 + i, 4 + j) = ker(i, j);
  return generated_subalgebra(j2, seed);
}

// ---------------------------------------------------------------------------
// Swap automorphism (x1, x2, y1, y2) -> (x2, x1, y2, y1) and the induced
// isomorphism Lie(JL_c) -> Lie(JL_{1/c}).
// ---------------------------------------------------------------------------

inline HAutomorphism swap_automorphism() {
  RatMatrix p(4, 4);
  p(0, 1) = p(1, 0) = p(2, 3) = p(3, 2) = 1;
  return HAutomorphism::symplectic(p);
}

/// 21x21 matrix on E coordinates of the jet transport along an exact
/// automorphism: the base moves by the automorphism and the fiber parts are
/// precomposed with the inverse differential.
inline RatMatrix transport_e_matrix(const HAutomorphism& aut) {
  if (aut.n() != 2) throw DimensionMismatch("transport is specific to H^2");
  const auto inv = inverse(aut.dV1());
  if (!inv) throw MembershipFailure("automorphism differential not invertible");
  const RatMatrix s = *inv;
  RatMatrix t(21, 21);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = aut.dV1()(i, j);
  t(15, 15) = aut.dT();
  for (int k = 0; k < 11; ++k) {
    const RatMatrix image = s.transpose() * hd2_forms()[k] * s;
    const auto coords = hd2_coords_from_bilinear(image);
    if (!coords) throw MembershipFailure("precomposition left HD^2");
    for (int r = 0; r < 11; ++r) t(4 + r, 4 + k) = (*coords)[r];
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(16 + i, 16 + j) = s(j, i);  // covector: alpha -> S^{-T} alpha
  t(20, 20) = 1;
  return t;
}

/// Isomorphism Lie(JL_c) -> Lie(JL_{1/c}) induced by the swap automorphism,
/// expressed in the two F bases.
inline RatMatrix swap_iso(const Rational& c) {
  if (sgn(c) <= 0) throw DimensionMismatch("swap_iso: c must be positive");
  const RatMatrix t = transport_e_matrix(swap_automorphism());
  const RatMatrix f_c = jl_embedding(c);
  const RatMatrix f_inv = jl_embedding(Rational(1) / c);
  const auto l = solve(f_inv, t * f_c);
  if (!l) throw MembershipFailure("swap transport does not preserve the constrained subalgebra");
  return *l;
}

// ---------------------------------------------------------------------------
// Bracket table emitter.
// ---------------------------------------------------------------------------

inline std::string format_term(const Rational& c, const std::string& label) {
  if (c == 1) return label;
  if (c == -1) return "-" + label;
  return rat_str(c) + " " + label;
}

inline std::string format_entry(const SparseVec& v, const std::string& prefix) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : v) {
    const std::string term = format_term(c, prefix + std::to_string(k + 1));
    if (first) {
      out = term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

/// Deterministic text table of all brackets [row, col]. With paper_layout
/// the trailing basis element is dropped when its row and column vanish.
inline std::string emit_table_text(const GradedLieAlgebra& g, const std::string& prefix,
                                   bool paper_layout) {
  int n = g.dim();
  if (paper_layout && n > 0) {
    bool trivial = true;
    for (int k = 0; k < n - 1 && trivial; ++k)
      if (!g.bracket_basis(k, n - 1).empty()) trivial = false;
    if (trivial) --n;
  }
  std::string out = "cols:";
  for (int j = 0; j < n; ++j) out += "  " + prefix + std::to_string(j + 1);
  out += "\n";
  for (int i = 0; i < n; ++i) {
    out += prefix + std::to_string(i + 1) + ":";
    for (int j = 0; j < n; ++j) {
      out += "  ";
      out += format_entry(g.bracket_basis(i, j), prefix);
    }
    out += "\n";
  }
  return out;
}

inline nlohmann::json emit_table_json(const GradedLieAlgebra& g) {
  nlohmann::json j;
  to_json(j, g);
  return j;
}

}  // namespace jetlab
