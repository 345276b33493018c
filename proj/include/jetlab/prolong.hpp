#pragma once

#include <array>
#include <utility>
#include <variant>
#include <vector>

#include "jetlab/heisenberg.hpp"
#include "jetlab/hpoly.hpp"
#include "jetlab/jet_algebra.hpp"

namespace jetlab {

namespace detail {

/// First-order jet scalar a + b ε with ε² = 0; exact derivatives of the
/// polynomial group law come out of plain arithmetic on these.
struct Dual {
  Rational a = 0, b = 0;
  Dual() = default;
  Dual(Rational value, Rational deriv = 0) : a(std::move(value)), b(std::move(deriv)) {}
  Dual operator+(const Dual& o) const { return {a + o.a, b + o.b}; }
  Dual operator-(const Dual& o) const { return {a - o.a, b - o.b}; }
  Dual operator*(const Dual& o) const { return {a * o.a, a * o.b + b * o.a}; }
};

struct DualPoint {
  int n = 0;
  std::vector<Dual> x, y;
  Dual t;

  static DualPoint lift(const HPoint& p) {
    DualPoint d;
    d.n = p.n;
    for (const auto& v : p.x) d.x.emplace_back(v);
    for (const auto& v : p.y) d.y.emplace_back(v);
    d.t = Dual(p.t);
    return d;
  }
};

inline DualPoint dual_mul(const DualPoint& p, const DualPoint& q) {
  DualPoint r;
  r.n = p.n;
  r.x.resize(p.n);
  r.y.resize(p.n);
  r.t = p.t + q.t;
  for (int i = 0; i < p.n; ++i) {
    r.x[i] = p.x[i] + q.x[i];
    r.y[i] = p.y[i] + q.y[i];
    r.t = r.t - Dual(rat(2)) * p.x[i] * q.y[i] + Dual(rat(2)) * p.y[i] * q.x[i];
  }
  return r;
}

}  // namespace detail

/// Closed-form contact map of H^2: left translation, graded automorphism,
/// or a composition (applied right to left).
class ContactMap {
 public:
  static ContactMap left_translation(HPoint g) { return ContactMap(std::move(g)); }
  static ContactMap automorphism(HAutomorphism a) { return ContactMap(std::move(a)); }
  static ContactMap composition(std::vector<ContactMap> maps) { return ContactMap(std::move(maps)); }

  HPoint apply(const HPoint& p) const {
    if (const auto* g = std::get_if<HPoint>(&data_)) return group_mul(*g, p);
    if (const auto* a = std::get_if<HAutomorphism>(&data_)) return a->apply(p);
    const auto& maps = std::get<std::vector<ContactMap>>(data_);
    HPoint out = p;
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) out = it->apply(out);
    return out;
  }

  detail::DualPoint apply(const detail::DualPoint& p) const {
    if (const auto* g = std::get_if<HPoint>(&data_))
      return detail::dual_mul(detail::DualPoint::lift(*g), p);
    if (const auto* a = std::get_if<HAutomorphism>(&data_)) {
      detail::DualPoint out;
      out.n = p.n;
      out.x.resize(p.n);
      out.y.resize(p.n);
      const RatMatrix& s = a->dV1();
      for (int i = 0; i < 2 * p.n; ++i) {
        detail::Dual acc;
        for (int j = 0; j < 2 * p.n; ++j) {
          if (sgn(s(i, j)) == 0) continue;
          const detail::Dual& vj = j < p.n ? p.x[j] : p.y[j - p.n];
          acc = acc + detail::Dual(s(i, j)) * vj;
        }
        (i < p.n ? out.x[i] : out.y[i - p.n]) = acc;
      }
      out.t = detail::Dual(a->dT()) * p.t;
      return out;
    }
    const auto& maps = std::get<std::vector<ContactMap>>(data_);
    detail::DualPoint out = p;
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) out = it->apply(out);
    return out;
  }

 private:
  explicit ContactMap(std::variant<HPoint, HAutomorphism, std::vector<ContactMap>> d)
      : data_(std::move(d)) {}
  std::variant<HPoint, HAutomorphism, std::vector<ContactMap>> data_;
};

/// First-order normal derivative: the matrix of
///   V ↦ d/ds f(a)^{-1} f(a exp(sV)) |_{s=0}
/// on the first layer, computed exactly with dual numbers. The horizontal
/// tangent lands in the first layer, so the center derivative must vanish.
inline RatMatrix n_map(const ContactMap& f, const HPoint& a) {
  const int n = a.n;
  const HPoint fa_inv = group_inv(f.apply(a));
  RatMatrix m(2 * n, 2 * n);
  for (int col = 0; col < 2 * n; ++col) {
    detail::DualPoint curve = detail::DualPoint::lift(a);
    // a · exp(s e_col): the exponential of a first-layer vector is linear
    // in the coordinates, so the curve has dual part 1 in one slot.
    detail::DualPoint step = detail::DualPoint::lift(HPoint::zero(n));
    (col < n ? step.x[col] : step.y[col - n]).b = 1;
    curve = detail::dual_mul(curve, step);
    const detail::DualPoint image = detail::dual_mul(detail::DualPoint::lift(fa_inv), f.apply(curve));
    for (int i = 0; i < n; ++i) {
      if (sgn(image.x[i].a) != 0 || sgn(image.y[i].a) != 0)
        throw Error("n_map: curve does not pass through the identity (internal)");
      m(i, col) = image.x[i].b;
      m(n + i, col) = image.y[i].b;
    }
    if (sgn(image.t.a) != 0 || sgn(image.t.b) != 0)
      throw Error("n_map: tangent is not horizontal; map is not contact");
  }
  return m;
}

/// N_{f∘g, a} = N_{f, g(a)} · N_{g, a}, checked exactly.
inline bool chain_rule_check(const ContactMap& f, const ContactMap& g, const HPoint& a) {
  const ContactMap composed = ContactMap::composition({f, g});
  return n_map(composed, a) == n_map(f, g.apply(a)) * n_map(g, a);
}

/// Point of the first-order jet bundle: base point, value part, covector
/// part over (dx1, dx2, dy1, dy2).
struct J1Point {
  HPoint base;
  Rational a0 = 0;
  std::array<Rational, 4> a1{};

  bool operator==(const J1Point& o) const { return base == o.base && a0 == o.a0 && a1 == o.a1; }
};

inline J1Point j1_of(const HPolynomial& u, const HPoint& p) {
  J1Point j;
  j.base = p;
  j.a0 = u.evaluate(p);
  for (int k = 0; k < 4; ++k) j.a1[k] = apply_field(static_cast<Field>(k), u).evaluate(p);
  return j;
}

/// Prolongation to the first jet bundle: base moves by f, the value part is
/// kept, and the covector part is precomposed with N_{f, base}^{-1}.
inline J1Point prolong_j1(const ContactMap& f, const J1Point& p) {
  const RatMatrix n = n_map(f, p.base);
  const auto n_inv = inverse(n);
  if (!n_inv) throw Error("prolong_j1: N_{f,a} is singular; map is not contact");
  J1Point out;
  out.base = f.apply(p.base);
  out.a0 = p.a0;
  for (int j = 0; j < 4; ++j) {
    Rational acc = 0;
    for (int i = 0; i < 4; ++i) acc += p.a1[i] * (*n_inv)(i, j);
    out.a1[j] = acc;  // row covector times N^{-1}
  }
  return out;
}

/// Second-order jet transport along an exact automorphism; carries the
/// 21x21 matrix on E coordinates and acts on jet vectors. The induced map
/// is an automorphism of the jet algebra.
struct J2Transport {
  HAutomorphism aut;
  RatMatrix e_matrix;

  JetVector apply(const JetVector& j) const {
    return JetVector::from_e_vector(e_matrix * j.to_e_vector());
  }
};

inline J2Transport transport_j2(const HAutomorphism& aut) {
  return {aut, transport_e_matrix(aut)};
}

/// u ∘ aut as a polynomial (substitution by the coordinate functions).
inline HPolynomial compose_with(const HPolynomial& u, const HAutomorphism& aut) {
  std::array<HPolynomial, 5> repl;
  for (int i = 0; i < 4; ++i) {
    HPolynomial coord;
    for (int j = 0; j < 4; ++j)
      if (sgn(aut.dV1()(i, j)) != 0) coord += HPolynomial::variable(j).scaled(aut.dV1()(i, j));
    repl[i] = std::move(coord);
  }
  repl[4] = HPolynomial::variable(4).scaled(aut.dT());
  return u.substitute(repl);
}

struct FiberMapResult {
  RatMatrix conjugated;  // M' with L_M(u ∘ aut) = (L_{M'} u) ∘ aut
  bool fibers_match = false;
};

/// Conjugation of a sub-Laplacian by an automorphism. The orientation of
/// the conjugation is established by exact verification on every monomial
/// of weighted degree <= 4, not taken on faith; the fiber check then asks
/// whether the jet transport carries the L_M harmonicity constraint onto
/// the L_{M'} one.
inline FiberMapResult maps_harmonic_fibers(const HAutomorphism& aut, const RatMatrix& m) {
  auto verify = [&](const RatMatrix& cand) {
    for (int d = 0; d <= 4; ++d)
      for (const Monomial& mono : monomials_of_weight(d)) {
        const HPolynomial u = HPolynomial::monomial(mono);
        const HPolynomial lhs = sublaplacian(m, compose_with(u, aut));
        const HPolynomial rhs = compose_with(sublaplacian(cand, u), aut);
        if (!(lhs == rhs)) return false;
      }
    return true;
  };
  RatMatrix conj = aut.dV1() * m * aut.dV1().transpose();
  if (!verify(conj)) {
    const auto inv = inverse(aut.dV1());
    if (!inv) throw Error("automorphism differential not invertible");
    conj = inv->transpose() * m * *inv;
    if (!verify(conj)) throw Error("no conjugation orientation verifies (internal)");
  }

  const RatMatrix t = transport_e_matrix(aut);
  RatMatrix t_hd2(11, 11);  // second-order block of the transport
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) t_hd2(i, j) = t(4 + i, 4 + j);
  const RatMatrix pullback = constraint_row(conj) * t_hd2;
  const RatMatrix original = constraint_row(m);
  // fibers match iff the pulled-back constraint is a nonzero multiple of
  // the original one
  const bool match = !pullback.is_zero() && rank(vstack(pullback, original)) == 1;
  return {conj, match};
}

}  // namespace jetlab
