#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "jetlab/heisenberg.hpp"
#include "jetlab/rat_matrix.hpp"

namespace jetlab {

/// Exponent tuple (a1, a2, b1, b2, e) over the variables (x1, x2, y1, y2, t).
/// Weighted degree: x, y count 1 and t counts 2.
struct Monomial {
  std::array<int, 5> e{0, 0, 0, 0, 0};
  auto operator<=>(const Monomial&) const = default;
  int weighted_degree() const { return e[0] + e[1] + e[2] + e[3] + 2 * e[4]; }
};

/// Exact polynomial on H^2; lexicographic term order, no zero coefficients.
class HPolynomial {
 public:
  HPolynomial() = default;
  explicit HPolynomial(const Rational& c) {
    if (sgn(c) != 0) terms_[Monomial{}] = c;
  }
  static HPolynomial monomial(const Monomial& m, const Rational& c = Rational(1)) {
    HPolynomial p;
    if (sgn(c) != 0) p.terms_[m] = c;
    return p;
  }
  static HPolynomial variable(int v) {
    Monomial m;
    m.e[v] = 1;
    return monomial(m);
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const HPolynomial& o) const { return terms_ == o.terms_; }

  HPolynomial& operator+=(const HPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  HPolynomial& operator-=(const HPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  HPolynomial operator+(const HPolynomial& o) const {
    HPolynomial r = *this;
    r += o;
    return r;
  }
  HPolynomial operator-(const HPolynomial& o) const {
    HPolynomial r = *this;
    r -= o;
    return r;
  }
  HPolynomial operator*(const HPolynomial& o) const {
    HPolynomial r;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) {
        Monomial m = m1;
        for (int k = 0; k < 5; ++k) m.e[k] += m2.e[k];
        r.add_term(m, c1 * c2);
      }
    return r;
  }
  HPolynomial scaled(const Rational& s) const {
    HPolynomial r;
    if (sgn(s) == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
  }

  HPolynomial derivative(int v) const {
    HPolynomial r;
    for (const auto& [m, c] : terms_) {
      if (m.e[v] == 0) continue;
      Monomial d = m;
      d.e[v] -= 1;
      r.add_term(d, c * m.e[v]);
    }
    return r;
  }

  Rational evaluate(const HPoint& p) const {
    if (p.n != 2) throw DimensionMismatch("HPolynomial lives on H^2");
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      auto pw = [](const Rational& base, int k) {
        Rational r = 1;
        for (int i = 0; i < k; ++i) r *= base;
        return r;
      };
      v *= pw(p.x[0], m.e[0]);
      v *= pw(p.x[1], m.e[1]);
      v *= pw(p.y[0], m.e[2]);
      v *= pw(p.y[1], m.e[3]);
      v *= pw(p.t, m.e[4]);
      acc += v;
    }
    return acc;
  }

  /// Composition: substitutes each variable by the given polynomial.
  HPolynomial substitute(const std::array<HPolynomial, 5>& repl) const {
    HPolynomial out;
    for (const auto& [m, c] : terms_) {
      HPolynomial prod{Rational(1)};
      for (int v = 0; v < 5; ++v)
        for (int k = 0; k < m.e[v]; ++k) prod = prod * repl[v];
      out += prod.scaled(c);
    }
    return out;
  }

  int weighted_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree());
    return d;
  }

  friend void to_json(nlohmann::json& j, const HPolynomial& p) {
    auto terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms_) {
      terms.push_back(nlohmann::json{{"exp", m.e}, {"coef", rat_str(c)}});
    }
    j = nlohmann::json{{"terms", terms}};
  }

  static HPolynomial from_json(const nlohmann::json& j) {
    HPolynomial p;
    for (const auto& t : j.at("terms")) {
      Monomial m;
      const auto e = t.at("exp").get<std::vector<int>>();
      if (e.size() != 5) throw ParseError("monomial exponent tuple must have 5 entries");
      for (int k = 0; k < 5; ++k) m.e[k] = e[k];
      p.add_term(m, rat_parse(t.at("coef").get<std::string>()));
    }
    return p;
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [pos, inserted] = terms_.try_emplace(m, 0);
    pos->second += c;
    if (sgn(pos->second) == 0) terms_.erase(pos);
  }

  std::map<Monomial, Rational> terms_;
};

enum class Field : int { X1 = 0, X2 = 1, Y1 = 2, Y2 = 3, T = 4 };

/// Left-invariant frame derived from the group law:
///   X_i = ∂/∂x_i + 2 y_i ∂/∂t,  Y_i = ∂/∂y_i - 2 x_i ∂/∂t,  T = ∂/∂t.
inline HPolynomial apply_field(Field which, const HPolynomial& u) {
  switch (which) {
    case Field::X1:
      return u.derivative(0) + (HPolynomial::variable(2) * u.derivative(4)).scaled(2);
    case Field::X2:
      return u.derivative(1) + (HPolynomial::variable(3) * u.derivative(4)).scaled(2);
    case Field::Y1:
      return u.derivative(2) - (HPolynomial::variable(0) * u.derivative(4)).scaled(2);
    case Field::Y2:
      return u.derivative(3) - (HPolynomial::variable(1) * u.derivative(4)).scaled(2);
    case Field::T:
      return u.derivative(4);
  }
  return {};
}

/// Horizontal field with coefficient vector v over (X1, X2, Y1, Y2).
inline HPolynomial apply_horizontal(const std::array<Rational, 4>& v, const HPolynomial& u) {
  HPolynomial r;
  for (int i = 0; i < 4; ++i)
    if (sgn(v[i]) != 0) r += apply_field(static_cast<Field>(i), u).scaled(v[i]);
  return r;
}

/// L_M u = Σ m_ij Z_i Z_j u with (Z_1..Z_4) = (X1, X2, Y1, Y2); M symmetric.
inline HPolynomial sublaplacian(const RatMatrix& m, const HPolynomial& u) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionMismatch("sub-Laplacian matrix must be 4x4");
  if (m != m.transpose()) throw DimensionMismatch("sub-Laplacian matrix must be symmetric");
  HPolynomial r;
  for (int i = 0; i < 4; ++i) {
    HPolynomial zi_u = apply_field(static_cast<Field>(i), u);
    for (int j = 0; j < 4; ++j) {
      if (sgn(m(j, i)) == 0) continue;
      r += apply_field(static_cast<Field>(j), zi_u).scaled(m(j, i));
    }
  }
  return r;
}

inline RatMatrix lc_matrix(const Rational& c) {
  RatMatrix m(4, 4);
  m(0, 0) = 1;
  m(1, 1) = c;
  m(2, 2) = 1;
  m(3, 3) = c;
  return m;
}

/// L_c = X1^2 + Y1^2 + c (X2^2 + Y2^2).
inline HPolynomial lc(const Rational& c, const HPolynomial& u) {
  return sublaplacian(lc_matrix(c), u);
}

/// All monomials of weighted degree d, in ascending lexicographic order.
inline std::vector<Monomial> monomials_of_weight(int d) {
  std::vector<Monomial> out;
  for (int a1 = 0; a1 <= d; ++a1)
    for (int a2 = 0; a1 + a2 <= d; ++a2)
      for (int b1 = 0; a1 + a2 + b1 <= d; ++b1)
        for (int b2 = 0; a1 + a2 + b1 + b2 <= d; ++b2) {
          const int rest = d - a1 - a2 - b1 - b2;
          if (rest % 2 != 0) continue;
          out.push_back(Monomial{{a1, a2, b1, b2, rest / 2}});
        }
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis of the weighted-homogeneous degree-d solutions of L_c u = 0,
/// computed as the exact kernel of L_c from degree d to degree d-2.
inline std::vector<HPolynomial> harmonic_basis(const Rational& c, int d) {
  if (sgn(c) <= 0) throw DimensionMismatch("harmonic_basis: c must be positive");
  if (d < 0) throw DimensionMismatch("harmonic_basis: d must be nonnegative");
  const std::vector<Monomial> source = monomials_of_weight(d);
  const std::vector<Monomial> target = d >= 2 ? monomials_of_weight(d - 2) : std::vector<Monomial>{};
  std::map<Monomial, int> target_index;
  for (size_t i = 0; i < target.size(); ++i) target_index[target[i]] = static_cast<int>(i);

  RatMatrix sys(static_cast<int>(target.size()), static_cast<int>(source.size()));
  for (size_t j = 0; j < source.size(); ++j) {
    const HPolynomial image = lc(c, HPolynomial::monomial(source[j]));
    for (const auto& [m, coef] : image.terms()) sys(target_index.at(m), static_cast<int>(j)) = coef;
  }
  const RatMatrix ker = nullspace(sys);
  std::vector<HPolynomial> basis;
  for (int k = 0; k < ker.cols(); ++k) {
    HPolynomial u;
    for (size_t j = 0; j < source.size(); ++j)
      if (sgn(ker(static_cast<int>(j), k)) != 0)
        u += HPolynomial::monomial(source[j], ker(static_cast<int>(j), k));
    basis.push_back(std::move(u));
  }
  return basis;
}

/// Horizontal 2-jet coordinates relative to the stratified basis
/// E = {e1..e4, A_{X1^2}..A_{Y1X1}, e5, A_{X1}..A_{Y2}, 1}:
///   eta[0]        value slot (coordinate of the constant basis element),
///   eta[1..4]     base point x1, x2, y1, y2,
///   eta[5..15]    second-order slots in the order
///                 X1X1, X1X2, X1Y1, X1Y2, X2X2, X2Y1, X2Y2, Y1Y1, Y1Y2,
///                 Y2Y2, Y1X1,
///   eta[16]       base point t,
///   eta[17..20]   first-order slots X1, X2, Y1, Y2.
struct JetVector {
  std::array<Rational, 21> eta{};

  bool operator==(const JetVector& o) const { return eta == o.eta; }

  /// Column vector in basis order E_1..E_21 (value slot last).
  RatMatrix to_e_vector() const {
    RatMatrix v(21, 1);
    for (int k = 1; k <= 20; ++k) v(k - 1, 0) = eta[k];
    v(20, 0) = eta[0];
    return v;
  }

  static JetVector from_e_vector(const RatMatrix& v) {
    JetVector j;
    for (int k = 1; k <= 20; ++k) j.eta[k] = v(k - 1, 0);
    j.eta[0] = v(20, 0);
    return j;
  }
};

inline void to_json(nlohmann::json& j, const JetVector& v) {
  std::vector<std::string> s;
  for (const auto& q : v.eta) s.push_back(rat_str(q));
  j = nlohmann::json{{"eta", s}};
}

/// The 15 operator labels of the second-order jet, matching eta[5..15] and
/// eta[17..20]. A label (a, b) denotes the composition Z_a Z_b (b applied
/// first); single labels are first-order fields.
inline const std::array<std::pair<Field, Field>, 11>& second_order_labels() {
  static const std::array<std::pair<Field, Field>, 11> labels{{
      {Field::X1, Field::X1}, {Field::X1, Field::X2}, {Field::X1, Field::Y1},
      {Field::X1, Field::Y2}, {Field::X2, Field::X2}, {Field::X2, Field::Y1},
      {Field::X2, Field::Y2}, {Field::Y1, Field::Y1}, {Field::Y1, Field::Y2},
      {Field::Y2, Field::Y2}, {Field::Y1, Field::X1},
  }};
  return labels;
}

/// Horizontal 2-jet of u at p by direct operator application.
inline JetVector jet2(const HPolynomial& u, const HPoint& p) {
  if (p.n != 2) throw DimensionMismatch("jet2: base point must lie in H^2");
  JetVector j;
  j.eta[0] = u.evaluate(p);
  j.eta[1] = p.x[0];
  j.eta[2] = p.x[1];
  j.eta[3] = p.y[0];
  j.eta[4] = p.y[1];
  j.eta[16] = p.t;
  const auto& labels = second_order_labels();
  for (int k = 0; k < 11; ++k) {
    const auto [outer, inner] = labels[k];
    j.eta[5 + k] = apply_field(outer, apply_field(inner, u)).evaluate(p);
  }
  for (int k = 0; k < 4; ++k) j.eta[17 + k] = apply_field(static_cast<Field>(k), u).evaluate(p);
  return j;
}

/// Exact coefficients (ascending powers) of s -> u(p · exp(s V)), V in the
/// first layer with coefficients v over (X1, X2, Y1, Y2).
inline std::vector<Rational> curve_poly(const HPolynomial& u, const HPoint& p,
                                        const std::array<Rational, 4>& v) {
  // p · exp(sV) = (x + s v_x, y + s v_y, t + 2 s (y·v_x - x·v_y)); substitute
  // with s living in the spare variable slot of a scratch polynomial ring.
  // Use a univariate representation directly: coordinates are linear in s.
  std::array<std::array<Rational, 2>, 5> coord{};  // [var][power of s]
  coord[0] = {p.x[0], v[0]};
  coord[1] = {p.x[1], v[1]};
  coord[2] = {p.y[0], v[2]};
  coord[3] = {p.y[1], v[3]};
  coord[4] = {p.t, 2 * (p.y[0] * v[0] + p.y[1] * v[1] - p.x[0] * v[2] - p.x[1] * v[3])};

  std::vector<Rational> result{Rational(0)};
  auto mul = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  for (const auto& [m, coef] : u.terms()) {
    std::vector<Rational> term{coef};
    for (int var = 0; var < 5; ++var)
      for (int k = 0; k < m.e[var]; ++k)
        term = mul(term, {coord[var][0], coord[var][1]});
    if (term.size() > result.size()) result.resize(term.size(), Rational(0));
    for (size_t i = 0; i < term.size(); ++i) result[i] += term[i];
  }
  while (result.size() > 1 && sgn(result.back()) == 0) result.pop_back();
  return result;
}

/// Harmonicity constraint on second-order jet slots:
/// eta5 + eta12 + c (eta9 + eta14) = 0.
inline bool satisfies_constraint(const JetVector& j, const Rational& c) {
  return sgn(j.eta[5] + j.eta[12] + c * (j.eta[9] + j.eta[14])) == 0;
}

}  // namespace jetlab
