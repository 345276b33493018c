#include <catch2/catch_amalgamated.hpp>

#include "jetlab/heisenberg.hpp"
#include "jetlab/rng.hpp"

using namespace jetlab;

namespace {

HPoint mk(int n, std::vector<long> x, std::vector<long> y, long t) {
  HPoint p = HPoint::zero(n);
  for (int i = 0; i < n; ++i) p.x[i] = rat(x[i]);
  for (int i = 0; i < n; ++i) p.y[i] = rat(y[i]);
  p.t = rat(t);
  return p;
}

}  // namespace

TEST_CASE("group law") {
  SECTION("identity and the displayed product") {
    const HPoint p = mk(1, {1}, {0}, 0);
    const HPoint q = mk(1, {0}, {1}, 0);
    CHECK(group_mul(p, HPoint::zero(1)) == p);
    CHECK(group_mul(p, q) == mk(1, {1}, {1}, -2));
  }
  SECTION("inverse is negation") {
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
      const HPoint p = random_point(2, rng);
      CHECK(group_mul(p, group_inv(p)) == HPoint::zero(2));
      CHECK(group_mul(group_inv(p), p) == HPoint::zero(2));
    }
  }
  SECTION("associativity on seeded triples") {
    SplitMix64 rng(6);
    for (int t = 0; t < 25; ++t) {
      const HPoint a = random_point(2, rng);
      const HPoint b = random_point(2, rng);
      const HPoint c = random_point(2, rng);
      CHECK(group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c)));
    }
  }
  SECTION("arity mismatch is rejected") {
    CHECK_THROWS_AS(group_mul(HPoint::zero(1), HPoint::zero(2)), DimensionMismatch);
  }
}

TEST_CASE("hn_algebra") {
  SECTION("n = 1") {
    const GradedLieAlgebra g = hn_algebra(1);
    CHECK(g.dim() == 3);
    CHECK(lower_central_series(g) == std::vector<int>{3, 1, 0});
    CHECK(center_dim(g) == 1);
  }
  SECTION("n = 2 structure constants") {
    const GradedLieAlgebra g = hn_algebra(2);
    CHECK(g.dim() == 5);
    CHECK(g.bracket_basis(0, 2) == SparseVec{{4, rat(-4)}});
    CHECK(g.bracket_basis(1, 3) == SparseVec{{4, rat(-4)}});
    CHECK(g.bracket_basis(0, 1).empty());
    CHECK(g.bracket_basis(0, 3).empty());
  }
  SECTION("center is one-dimensional for several n") {
    for (int n : {1, 2, 3}) CHECK(center_dim(hn_algebra(n)) == 1);
  }
}

TEST_CASE("omega") {
  const RatMatrix w1 = omega(1);
  CHECK(w1 == RatMatrix::from_rows({{rat(0), rat(1)}, {rat(-1), rat(0)}}));
  for (int n : {1, 2, 3}) {
    const RatMatrix w = omega(n);
    CHECK(w.transpose() == w.scaled(rat(-1)));
    CHECK(w * w == RatMatrix::identity(2 * n).scaled(rat(-1)));
  }
}

TEST_CASE("automorphisms") {
  SECTION("identity is symplectic and acts trivially") {
    const auto id = HAutomorphism::symplectic(RatMatrix::identity(4));
    CHECK(is_symplectic(RatMatrix::identity(4)));
    SplitMix64 rng(9);
    const HPoint p = random_point(2, rng);
    CHECK(id.apply(p) == p);
  }
  SECTION("the coordinate swap is symplectic") {
    RatMatrix s(4, 4);
    s(0, 1) = s(1, 0) = s(2, 3) = s(3, 2) = 1;
    CHECK(is_symplectic(s));
    CHECK_NOTHROW(HAutomorphism::symplectic(s));
  }
  SECTION("non-symplectic matrices are rejected") {
    RatMatrix s = RatMatrix::identity(4);
    s(0, 0) = 2;
    CHECK_FALSE(is_symplectic(s));
    CHECK_THROWS_AS(HAutomorphism::symplectic(s), DimensionMismatch);
  }
  SECTION("reflection acts as (x, -y, -t)") {
    const auto r = HAutomorphism::reflection(2);
    const HPoint p = mk(2, {1, 2}, {3, 4}, 5);
    const HPoint rp = r.apply(p);
    CHECK(rp == mk(2, {1, 2}, {-3, -4}, -5));
    CHECK(r.dT() == rat(-1));
  }
  SECTION("dilation scales with weights (1, 1, 2)") {
    const auto d = HAutomorphism::dilation(2, rat(3));
    const HPoint p = mk(2, {1, 0}, {0, 2}, 7);
    CHECK(d.apply(p) == mk(2, {3, 0}, {0, 6}, 63));
    CHECK(d.dT() == rat(9));
  }
  SECTION("dV1 scales the symplectic form by dT") {
    const auto d = HAutomorphism::dilation(2, rat(3));
    CHECK(d.dV1().transpose() * omega(2) * d.dV1() == omega(2).scaled(d.dT()));
    const auto r = HAutomorphism::reflection(2);
    CHECK(r.dV1().transpose() * omega(2) * r.dV1() == omega(2).scaled(r.dT()));
  }
}

TEST_CASE("morphism harness") {
  SECTION("dilation passes") {
    CHECK(aut_is_group_morphism(HAutomorphism::dilation(2, rat(3)), 15, 2024));
  }
  SECTION("reflection passes") {
    CHECK(aut_is_group_morphism(HAutomorphism::reflection(2), 15, 2024));
  }
  SECTION("composition passes") {
    const auto c = HAutomorphism::compose(HAutomorphism::dilation(2, rat(1, 2)),
                                          HAutomorphism::reflection(2));
    CHECK(aut_is_group_morphism(c, 15, 2024));
  }
  SECTION("adding a linear function of x to t still satisfies the cocycle") {
    auto linear_shear = [](const HPoint& p) {
      HPoint q = p;
      q.t += p.x[0];
      return q;
    };
    CHECK(aut_is_group_morphism(linear_shear, 2, 15, 2024));
  }
  SECTION("a quadratic t-shear is not a morphism") {
    auto broken = [](const HPoint& p) {
      HPoint q = p;
      q.t += p.x[0] * p.x[0];
      return q;
    };
    CHECK_FALSE(aut_is_group_morphism(broken, 2, 15, 2024));
  }
}

TEST_CASE("HPoint JSON") {
  const HPoint p = mk(2, {1, 2}, {-3, 4}, 5);
  nlohmann::json j;
  to_json(j, p);
  CHECK(j.at("n") == 2);
  CHECK(j.at("x")[0] == "1");
  CHECK(hpoint_from_json(j) == p);
}
