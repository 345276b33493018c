// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Everything algebraic is checked with exact arithmetic;
// the numeric criterion pins explicit float tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "jetlab/golden_tables.hpp"
#include "jetlab/hpoly.hpp"
#include "jetlab/invariants.hpp"
#include "jetlab/jet_algebra.hpp"
#include "jetlab/prolong.hpp"
#include "jetlab/williamson.hpp"

using namespace jetlab;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s criterion-%d %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

HPolynomial random_poly(SplitMix64& rng) {
  HPolynomial u;
  for (int d = 0; d <= 4; ++d)
    for (const auto& m : monomials_of_weight(d))
      if (rng.next_int(0, 2) == 0) u += HPolynomial::monomial(m, rng.next_small_rational());
  return u;
}

HAutomorphism random_aut(SplitMix64& rng) {
  HAutomorphism aut = HAutomorphism::dilation(2, rat(rng.next_int(1, 4)));
  if (rng.next_int(0, 1)) aut = HAutomorphism::compose(aut, HAutomorphism::reflection(2));
  if (rng.next_int(0, 1)) aut = HAutomorphism::compose(swap_automorphism(), aut);
  return aut;
}

// criterion 1: golden E table, all 190 pairs, exact, < 1 s
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const auto table = parse_golden_table(golden_e_table(), rat(1));
  const auto verdict = compare_with_golden(j2_h2(), table);
  const double elapsed = seconds_since(start);
  report(1, "golden-table-E", verdict.ok && elapsed < 1.0,
         verdict.ok ? "190 pairs exact, " + std::to_string(elapsed) + " s"
                    : "mismatch at (" + std::to_string(verdict.i) + "," + std::to_string(verdict.j) + ")");
}

// criterion 2: golden F table at c in {1, 2, 1/2, 3/5}, exact, < 1 s
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const Rational& c : {rat(1), rat(2), rat(1, 2), rat(3, 5)}) {
    const auto table = parse_golden_table(golden_f_table(), c);
    const auto verdict = compare_with_golden(jl_subalgebra(c).algebra, table);
    if (!verdict.ok) {
      ok = false;
      detail = "c = " + rat_str(c) + " mismatch at (" + std::to_string(verdict.i) + "," +
               std::to_string(verdict.j) + ")";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    ok = false;
    detail = "too slow: " + std::to_string(elapsed) + " s";
  }
  report(2, "golden-table-F", ok, ok ? std::to_string(elapsed) + " s" : detail);
}

// criterion 3: dimensions and layers
void criterion_3() {
  bool ok = j2_h2().dim() == 21 && j2_h2().layer_dims() == std::vector<int>{15, 5, 1};
  for (const Rational& c : {rat(1), rat(2), rat(3), rat(1, 2), rat(1, 3), rat(3, 5), rat(5, 7), rat(7, 5)}) {
    const JLSubalgebra jl = jl_subalgebra(c);
    if (jl.algebra.dim() != 20 || jl.algebra.layer_dims() != std::vector<int>{14, 5, 1}) ok = false;
  }
  report(3, "dimensions-and-layers", ok);
}

// criterion 4: Jacobi residuals, antimorphism identity, center well-definedness
void criterion_4() {
  bool jacobi_ok = true;
  const GradedLieAlgebra& j2 = j2_h2();
  for (int i = 0; i < j2.dim() && jacobi_ok; ++i)
    for (int j = i + 1; j < j2.dim() && jacobi_ok; ++j)
      for (int k = j + 1; k < j2.dim(); ++k) {
        SparseVec acc = j2.bracket_sparse(j2.bracket_basis(i, j), {{k, Rational(1)}});
        sparse_axpy(acc, 1, j2.bracket_sparse(j2.bracket_basis(j, k), {{i, Rational(1)}}));
        sparse_axpy(acc, 1, j2.bracket_sparse(j2.bracket_basis(k, i), {{j, Rational(1)}}));
        if (!acc.empty()) {
          jacobi_ok = false;
          break;
        }
      }

  bool anti_ok = true;
  const Antimorphism p = psi();
  const GradedLieAlgebra h2 = hn_algebra(2);
  for (int i = 0; i < 5 && anti_ok; ++i)
    for (int j = i + 1; j < 5; ++j) {
      RatMatrix lhs(kHDCoords, kHDCoords);
      for (const auto& [k, c] : h2.bracket_basis(i, j)) lhs = lhs + p[k].scaled(c);
      const RatMatrix rhs = (p[i] * p[j] - p[j] * p[i]).scaled(rat(-1));
      if (lhs != rhs) {
        anti_ok = false;
        break;
      }
    }

  const RatMatrix via13 = (p[0] * p[2] - p[2] * p[0]).scaled(rat(1, 4));
  const RatMatrix via24 = (p[1] * p[3] - p[3] * p[1]).scaled(rat(1, 4));
  const bool center_ok = via13 == via24 && via13 == p[4];

  report(4, "jacobi-and-antimorphism", jacobi_ok && anti_ok && center_ok);
}

// criterion 5: harmonic jets satisfy the constraint and span the 14-dim fiber
void criterion_5() {
  bool ok = true;
  std::string detail;
  for (const Rational& c : {rat(1), rat(2), rat(1, 2)}) {
    SplitMix64 rng(5000);
    std::vector<JetVector> jets;
    for (int d = 0; d <= 4; ++d)
      for (const auto& u : harmonic_basis(c, d))
        for (int s = 0; s < 5; ++s) {
          const JetVector j = jet2(u, random_point(2, rng));
          if (!satisfies_constraint(j, c)) {
            ok = false;
            detail = "membership failed at c = " + rat_str(c);
          }
          jets.push_back(j);
        }
    RatMatrix m(static_cast<int>(jets.size()), 15);
    RatMatrix with_value(static_cast<int>(jets.size()), 16);
    for (size_t r = 0; r < jets.size(); ++r) {
      for (int k = 0; k < 11; ++k) m(static_cast<int>(r), k) = jets[r].eta[5 + k];
      for (int k = 0; k < 4; ++k) m(static_cast<int>(r), 11 + k) = jets[r].eta[17 + k];
      for (int k = 0; k < 15; ++k) with_value(static_cast<int>(r), k) = m(static_cast<int>(r), k);
      with_value(static_cast<int>(r), 15) = jets[r].eta[0];
    }
    if (rank(m) != 14 || rank(with_value) != 15) {
      ok = false;
      detail = "span rank wrong at c = " + rat_str(c);
    }
  }
  report(5, "harmonic-jet-membership", ok, detail);
}

// criterion 6: invariant separation for c != 1 and agreement for c <-> 1/c
void criterion_6() {
  bool ok = true;
  std::string detail;
  const InvariantReport base = invariant_report(jl_subalgebra(rat(1)).algebra, 2025, 6);
  for (const Rational& c : {rat(2), rat(3), rat(1, 2), rat(5, 7)}) {
    const auto start = std::chrono::steady_clock::now();
    const InvariantReport rc = invariant_report(jl_subalgebra(c).algebra, 2025, 6);
    const auto fields = differing_exact_fields(base, rc);
    const double elapsed = seconds_since(start);
    if (fields.empty()) {
      ok = false;
      detail += "no exact field separates c = " + rat_str(c) + " from 1; ";
    } else if (detail.find("separated by") == std::string::npos) {
      detail += "separated by " + fields.front() + "; ";
    }
    if (elapsed >= 60.0) {
      ok = false;
      detail += "report for c = " + rat_str(c) + " too slow; ";
    }
  }
  for (const Rational& c : {rat(2), rat(3), rat(5, 7)}) {
    const Rational inv_c = Rational(1) / c;
    const InvariantReport a = invariant_report(jl_subalgebra(c).algebra, 2025, 6);
    const InvariantReport b = invariant_report(jl_subalgebra(inv_c).algebra, 2025, 6);
    if (!differing_exact_fields(a, b).empty()) {
      ok = false;
      detail += "exact fields differ across the pair (" + rat_str(c) + ", 1/c); ";
    }
    const RatMatrix l = swap_iso(c);
    if (!verify_morphism(jl_subalgebra(c).algebra, jl_subalgebra(inv_c).algebra, l).ok) {
      ok = false;
      detail += "swap certificate failed at c = " + rat_str(c) + "; ";
    }
  }
  report(6, "non-isomorphism-verdict", ok, detail);
}

// criterion 7: prolongation correctness on seeded data, exact
void criterion_7() {
  SplitMix64 rng(7000);
  bool ok = true;
  for (int t = 0; t < 20; ++t) {
    const HPolynomial u = random_poly(rng);
    const HPoint a = random_point(2, rng);
    const HAutomorphism aut = random_aut(rng);
    const ContactMap f = ContactMap::automorphism(aut);
    if (!(prolong_j1(f, j1_of(compose_with(u, aut), a)) == j1_of(u, aut.apply(a)))) ok = false;
    const J2Transport tr = transport_j2(aut);
    if (!(tr.apply(jet2(compose_with(u, aut), a)) == jet2(u, aut.apply(a)))) ok = false;
  }
  for (int t = 0; t < 20; ++t) {
    const ContactMap f = rng.next_int(0, 1) ? ContactMap::automorphism(random_aut(rng))
                                            : ContactMap::left_translation(random_point(2, rng));
    const ContactMap g = rng.next_int(0, 1) ? ContactMap::automorphism(random_aut(rng))
                                            : ContactMap::left_translation(random_point(2, rng));
    if (!chain_rule_check(f, g, random_point(2, rng))) ok = false;
  }
  report(7, "prolongation", ok);
}

// criterion 8: Williamson numerics at the pinned tolerances, < 10 s
void criterion_8() {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(8000);
  bool ok = true;
  std::string detail;

  auto random_spd = [&rng]() {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = 2.0 * rng.next_unit() - 1.0;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd ev(4);
    for (int i = 0; i < 4; ++i) ev(i) = std::pow(10.0, -3.0 + 6.0 * rng.next_unit());
    Eigen::MatrixXd m = q * ev.asDiagonal() * q.transpose();
    return Eigen::MatrixXd(0.5 * (m + m.transpose()));
  };

  double worst_sym = 0, worst_diag = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::MatrixXd m = random_spd();
    try {
      const SymplecticDecomposition d = williamson(m);
      worst_sym = std::max(worst_sym, d.residualSymplectic);
      worst_diag = std::max(worst_diag, d.residualDiagonal);
      if (d.residualSymplectic > 1e-9 || d.residualDiagonal > 1e-9) ok = false;
    } catch (const Error&) {
      ok = false;
    }
  }
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd v(4);
    for (int i = 0; i < 4; ++i) v(i) = std::pow(10.0, -2.0 + 4.0 * rng.next_unit());
    const Eigen::MatrixXd m = v.asDiagonal();
    const Eigen::VectorXd s = symplectic_spectrum(m);
    const double l1 = std::sqrt(v(0) * v(2)), l2 = std::sqrt(v(1) * v(3));
    const double hi = std::max(l1, l2), lo = std::min(l1, l2);
    if (std::abs(s(0) - hi) > 1e-9 * std::max(1.0, hi) ||
        std::abs(s(1) - lo) > 1e-9 * std::max(1.0, lo))
      ok = false;
  }
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd m = random_spd();
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(4, 4);
    for (int step = 0; step < 3; ++step) {
      Eigen::MatrixXd f = Eigen::MatrixXd::Identity(4, 4);
      switch (rng.next_int(0, 2)) {
        case 0: {
          const double b00 = rng.next_int(-2, 2), b11 = rng.next_int(-2, 2), b01 = rng.next_int(-2, 2);
          f(0, 2) = b00;
          f(0, 3) = b01;
          f(1, 2) = b01;
          f(1, 3) = b11;
          break;
        }
        case 1: {
          const double a0 = std::pow(2.0, rng.next_int(-1, 1));
          const double a1 = std::pow(2.0, rng.next_int(-1, 1));
          f(0, 0) = a0;
          f(1, 1) = a1;
          f(2, 2) = 1.0 / a0;
          f(3, 3) = 1.0 / a1;
          break;
        }
        default:
          f = Eigen::MatrixXd::Zero(4, 4);
          f(0, 2) = f(1, 3) = 1;
          f(2, 0) = f(3, 1) = -1;
      }
      s = s * f;
    }
    if (!congruence_invariance(m, s)) ok = false;
    const double alpha = std::pow(10.0, -2.0 + 4.0 * rng.next_unit());
    if (std::abs(classify(alpha * m) - classify(m)) > 1e-9) ok = false;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    ok = false;
    detail = "too slow: " + std::to_string(elapsed) + " s";
  } else {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "worst residuals %.2e / %.2e, %.2f s", worst_sym, worst_diag,
                  elapsed);
    detail = buf;
  }
  report(8, "williamson-numerics", ok, detail);
}

// criterion 9: operator conjugation via the swap, exact
void criterion_9() {
  bool ok = true;
  std::string detail;
  for (const Rational& c : {rat(2), rat(3, 5), rat(7, 2)}) {
    const FiberMapResult res = maps_harmonic_fibers(swap_automorphism(), lc_matrix(c));
    RatMatrix expect(4, 4);
    expect(0, 0) = c;
    expect(1, 1) = 1;
    expect(2, 2) = c;
    expect(3, 3) = 1;
    if (res.conjugated != expect || !res.fibers_match) {
      ok = false;
      detail = "failed at c = " + rat_str(c);
    }
  }
  report(9, "operator-conjugation", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
