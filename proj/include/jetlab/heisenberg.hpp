#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "jetlab/lie_algebra.hpp"
#include "jetlab/rng.hpp"

namespace jetlab {

/// Point of the Heisenberg group H^n in exponential coordinates (x, y, t).
/// The product is polynomial, the identity is 0 and the inverse is negation.
struct HPoint {
  int n = 0;
  std::vector<Rational> x, y;
  Rational t = 0;

  static HPoint zero(int n) {
    HPoint p;
    p.n = n;
    p.x.assign(n, Rational(0));
    p.y.assign(n, Rational(0));
    return p;
  }

  bool operator==(const HPoint& o) const { return n == o.n && x == o.x && y == o.y && t == o.t; }
};

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
  if (p.n != q.n) throw DimensionMismatch("group_mul: arity mismatch");
  HPoint r = HPoint::zero(p.n);
  r.t = p.t + q.t;
  for (int i = 0; i < p.n; ++i) {
    r.x[i] = p.x[i] + q.x[i];
    r.y[i] = p.y[i] + q.y[i];
    r.t += -2 * p.x[i] * q.y[i] + 2 * p.y[i] * q.x[i];
  }
  return r;
}

inline HPoint group_inv(const HPoint& p) {
  HPoint r = p;
  for (auto& v : r.x) v = -v;
  for (auto& v : r.y) v = -v;
  r.t = -r.t;
  return r;
}

inline void to_json(nlohmann::json& j, const HPoint& p) {
  auto strs = [](const std::vector<Rational>& v) {
    std::vector<std::string> s;
    for (const auto& q : v) s.push_back(rat_str(q));
    return s;
  };
  j = nlohmann::json{{"n", p.n}, {"x", strs(p.x)}, {"y", strs(p.y)}, {"t", rat_str(p.t)}};
}

inline HPoint hpoint_from_json(const nlohmann::json& j) {
  HPoint p;
  p.n = j.at("n").get<int>();
  for (const auto& s : j.at("x")) p.x.push_back(rat_parse(s.get<std::string>()));
  for (const auto& s : j.at("y")) p.y.push_back(rat_parse(s.get<std::string>()));
  p.t = rat_parse(j.at("t").get<std::string>());
  if (static_cast<int>(p.x.size()) != p.n || static_cast<int>(p.y.size()) != p.n)
    throw ParseError("HPoint arity mismatch");
  return p;
}

/// The Lie algebra h^n: dim 2n+1, [e_i, e_{n+i}] = -4 e_{2n+1}, graded with
/// layers ({e_1..e_2n}, {e_{2n+1}}).
inline GradedLieAlgebra hn_algebra(int n) {
  GradedLieAlgebra::BracketTable table;
  for (int i = 0; i < n; ++i) table[{i, n + i}] = SparseVec{{2 * n, rat(-4)}};
  GradedLieAlgebra::Layers layers(2);
  for (int i = 0; i < 2 * n; ++i) layers[0].push_back(i);
  layers[1].push_back(2 * n);
  return GradedLieAlgebra(2 * n + 1, std::move(table), std::move(layers));
}

/// Standard symplectic form matrix [[0, I], [-I, 0]] on the first layer.
inline RatMatrix omega(int n) {
  RatMatrix w(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w(i, n + i) = 1;
    w(n + i, i) = -1;
  }
  return w;
}

inline bool is_symplectic(const RatMatrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const RatMatrix w = omega(s.rows() / 2);
  return s.transpose() * w * s == w;
}

enum class AutKind { Dilation, Reflection, Symplectic, Composition };

/// Graded automorphism of H^n in exponential coordinates. Every instance
/// acts by (x, y) -> dV1 (x, y) and t -> dT t, and the constructor enforces
/// dV1^T Ω dV1 = dT Ω, which is exactly the automorphism condition.
class HAutomorphism {
 public:
  static HAutomorphism dilation(int n, const Rational& lambda) {
    if (sgn(lambda) <= 0) throw DimensionMismatch("dilation factor must be positive");
    return HAutomorphism(AutKind::Dilation, RatMatrix::identity(2 * n).scaled(lambda),
                         lambda * lambda);
  }

  static HAutomorphism reflection(int n) {
    RatMatrix d = RatMatrix::identity(2 * n);
    for (int i = n; i < 2 * n; ++i) d(i, i) = -1;
    return HAutomorphism(AutKind::Reflection, std::move(d), rat(-1));
  }

  static HAutomorphism symplectic(const RatMatrix& s) {
    if (!is_symplectic(s)) throw DimensionMismatch("matrix is not symplectic");
    return HAutomorphism(AutKind::Symplectic, s, rat(1));
  }

  static HAutomorphism compose(const HAutomorphism& f, const HAutomorphism& g) {
    // (f ∘ g): apply g first
    return HAutomorphism(AutKind::Composition, f.dv1_ * g.dv1_, f.dt_ * g.dt_);
  }

  int n() const { return dv1_.rows() / 2; }
  AutKind kind() const { return kind_; }
  const RatMatrix& dV1() const { return dv1_; }
  const Rational& dT() const { return dt_; }

  HPoint apply(const HPoint& p) const {
    if (p.n != n()) throw DimensionMismatch("automorphism arity mismatch");
    std::vector<Rational> v(2 * p.n);
    for (int i = 0; i < p.n; ++i) {
      v[i] = p.x[i];
      v[p.n + i] = p.y[i];
    }
    HPoint out = HPoint::zero(p.n);
    for (int i = 0; i < 2 * p.n; ++i) {
      Rational acc = 0;
      for (int j = 0; j < 2 * p.n; ++j)
        if (sgn(dv1_(i, j)) != 0) acc += dv1_(i, j) * v[j];
      (i < p.n ? out.x[i] : out.y[i - p.n]) = acc;
    }
    out.t = dt_ * p.t;
    return out;
  }

 private:
  HAutomorphism(AutKind kind, RatMatrix dv1, Rational dt)
      : kind_(kind), dv1_(std::move(dv1)), dt_(std::move(dt)) {
    const int two_n = dv1_.rows();
    if (two_n != dv1_.cols() || two_n % 2 != 0)
      throw DimensionMismatch("dV1 must be square of even size");
    const RatMatrix w = omega(two_n / 2);
    if (dv1_.transpose() * w * dv1_ != w.scaled(dt_))
      throw DimensionMismatch("dV1 does not scale the symplectic form by dT");
  }

  AutKind kind_;
  RatMatrix dv1_;
  Rational dt_;
};

inline HPoint random_point(int n, SplitMix64& rng) {
  HPoint p = HPoint::zero(n);
  for (auto& v : p.x) v = rng.next_small_rational();
  for (auto& v : p.y) v = rng.next_small_rational();
  p.t = rng.next_small_rational();
  return p;
}

/// Exact morphism test f(p·q) = f(p)·f(q) on seeded random points. Takes a
/// generic point map so broken candidates can be probed too.
inline bool aut_is_group_morphism(const std::function<HPoint(const HPoint&)>& f, int n,
                                  int samples, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const HPoint p = random_point(n, rng);
    const HPoint q = random_point(n, rng);
    if (!(f(group_mul(p, q)) == group_mul(f(p), f(q)))) return false;
  }
  return true;
}

inline bool aut_is_group_morphism(const HAutomorphism& aut, int samples, std::uint64_t seed) {
  return aut_is_group_morphism([&](const HPoint& p) { return aut.apply(p); }, aut.n(), samples,
                               seed);
}

}  // namespace jetlab
