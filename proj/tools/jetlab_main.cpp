// jetlab: exact bracket tables for the second horizontal jet space over H^2,
// isomorphism-invariant reports for the constrained subalgebras, Williamson
// classification of sub-Laplacian coefficient matrices, and a property
// verifier. Exit codes: 0 success, 1 property failure, 2 usage/parse error,
// 3 domain error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "jetlab/golden_tables.hpp"
#include "jetlab/hpoly.hpp"
#include "jetlab/invariants.hpp"
#include "jetlab/jet_algebra.hpp"
#include "jetlab/prolong.hpp"
#include "jetlab/williamson.hpp"

namespace {

using namespace jetlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("JETLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ParseError("JETLAB_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void emit(const std::string& doc, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + output_path);
  out << doc;
}

Rational parse_positive_rational(const std::string& text) {
  const Rational c = rat_parse(text);
  if (sgn(c) <= 0) throw ParseError("expected a positive rational, got '" + text + "'");
  return c;
}

// ---------------------------------------------------------------------- table

int cmd_table(const std::string& target, const std::string& c_text, const std::string& format,
              bool paper_layout, const std::string& output_path) {
  const GradedLieAlgebra algebra = [&]() -> GradedLieAlgebra {
    if (target == "j2") return j2_h2();
    if (c_text.empty()) throw ParseError("missing --c (required for --target jlc)");
    return jl_subalgebra(parse_positive_rational(c_text)).algebra;
  }();
  const std::string prefix = target == "j2" ? "E" : "F";
  std::string doc;
  if (format == "json")
    doc = emit_table_json(algebra).dump(2) + "\n";
  else
    doc = emit_table_text(algebra, prefix, paper_layout);
  emit(doc, output_path);
  return kExitOk;
}

// ----------------------------------------------------------------- invariants

std::string report_line(const std::string& c_text, const InvariantReport& r) {
  auto ints = [](const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  std::ostringstream os;
  os << "c = " << c_text << ": dim " << r.dim << ", layers " << ints(r.layerDims)
     << ", lowerCentral " << ints(r.lowerCentralDims) << ", derived " << ints(r.derivedDims)
     << ", center " << r.centerDim << ", der " << r.derDim << ", gradedDer " << r.gradedDerDim
     << ", h1 " << r.h1Dim << ", h2 " << r.h2Dim << ", sampledMaxAdRank " << r.sampledMaxAdRank
     << " (seed " << r.seed << ", trials " << r.trials << ")";
  return os.str();
}

int cmd_invariants(const std::vector<std::string>& c_texts, std::uint64_t seed, int trials,
                   const std::string& format, const std::string& output_path) {
  if (c_texts.empty()) throw ParseError("at least one --c is required");
  if (trials < 1) throw ParseError("--trials must be >= 1");
  std::vector<Rational> cs;
  for (const auto& t : c_texts) cs.push_back(parse_positive_rational(t));

  std::vector<InvariantReport> reports;
  for (const auto& c : cs) reports.push_back(invariant_report(jl_subalgebra(c).algebra, seed, trials));

  json out;
  out["reports"] = json::array();
  for (size_t i = 0; i < cs.size(); ++i) {
    json r;
    to_json(r, reports[i]);
    r["c"] = c_texts[i];
    out["reports"].push_back(r);
  }
  out["verdicts"] = json::array();
  std::ostringstream text;
  for (size_t i = 0; i < cs.size(); ++i) text << report_line(c_texts[i], reports[i]) << "\n";
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j) {
      const auto fields = differing_exact_fields(reports[i], reports[j]);
      json v{{"a", c_texts[i]}, {"b", c_texts[j]}};
      if (fields.empty()) {
        v["verdict"] = "SAME-INVARIANTS";
        text << "(" << c_texts[i] << ", " << c_texts[j] << "): SAME-INVARIANTS\n";
      } else {
        v["verdict"] = "DISTINGUISHED-BY";
        v["field"] = fields.front();
        v["fields"] = fields;
        text << "(" << c_texts[i] << ", " << c_texts[j] << "): DISTINGUISHED-BY " << fields.front()
             << "\n";
      }
      out["verdicts"].push_back(v);
    }

  emit(format == "json" ? out.dump(2) + "\n" : text.str(), output_path);
  return kExitOk;
}

// ------------------------------------------------------------------- classify

Eigen::MatrixXd parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string content = buffer.str();

  auto cell_value = [](const json& cell) -> double {
    if (cell.is_number()) return cell.get<double>();
    if (cell.is_string()) {
      const Rational q = rat_parse(cell.get<std::string>());
      return mpq_get_d(q.get_mpq_t());
    }
    throw ParseError("matrix cells must be numbers or \"p/q\" strings");
  };

  std::vector<std::vector<double>> rows;
  const size_t first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (content[first] == '[' || content[first] == '{')) {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("bad JSON matrix: ") + e.what());
    }
    const json& arr = j.is_object() ? j.at("m") : j;
    for (const auto& row : arr) {
      std::vector<double> r;
      for (const auto& cell : row) r.push_back(cell_value(cell));
      rows.push_back(std::move(r));
    }
  } else {
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
      std::vector<double> r;
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) {
        const size_t a = cell.find_first_not_of(" \t\r");
        if (a == std::string::npos) throw ParseError("empty CSV cell");
        const size_t b = cell.find_last_not_of(" \t\r");
        cell = cell.substr(a, b - a + 1);
        if (cell.find('/') != std::string::npos) {
          const Rational q = rat_parse(cell);
          r.push_back(mpq_get_d(q.get_mpq_t()));
        } else {
          size_t used = 0;
          const double v = std::stod(cell, &used);
          if (used != cell.size()) throw ParseError("bad CSV number: '" + cell + "'");
          r.push_back(v);
        }
      }
      rows.push_back(std::move(r));
    }
  }

  if (rows.empty()) throw ParseError("matrix file is empty");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ParseError("ragged matrix rows");
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_classify(const std::string& path, const std::string& format,
                 const std::string& output_path) {
  const Eigen::MatrixXd m = parse_matrix_file(path);
  if (m.rows() != 4 || m.cols() != 4) throw ParseError("classification expects a 4x4 matrix");
  if (m != m.transpose()) throw ParseError("matrix is not symmetric");

  const SymplecticDecomposition dec = williamson(m);
  const double raw = dec.lambda(1) / dec.lambda(0);
  const double canonical = raw > 1.0 ? 1.0 / raw : raw;  // fold to (0, 1]

  json out;
  out["lambda"] = {dec.lambda(0), dec.lambda(1)};
  out["c"] = canonical;
  out["rawRatio"] = raw;
  out["residuals"] = {{"symplectic", dec.residualSymplectic}, {"diagonal", dec.residualDiagonal}};
  std::ostringstream text;
  text << "lambda = (" << fmt_double(dec.lambda(0)) << ", " << fmt_double(dec.lambda(1)) << ")\n"
       << "c = " << fmt_double(canonical) << "\n"
       << "residuals: symplectic " << fmt_double(dec.residualSymplectic) << ", diagonal "
       << fmt_double(dec.residualDiagonal) << "\n";
  emit(format == "json" ? out.dump(2) + "\n" : text.str(), output_path);
  return kExitOk;
}

// --------------------------------------------------------------------- verify

struct VerifyContext {
  std::uint64_t seed = 0;
  std::vector<std::string> failures;
  std::ostringstream log;

  void check(const std::string& name, bool ok) {
    log << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) failures.push_back(name);
  }
};

void suite_jacobi(VerifyContext& ctx) {
  try {
    const GradedLieAlgebra& j2 = j2_h2();
    bool residuals_zero = true;
    std::vector<Rational> zero(j2.dim(), Rational(0));
    for (int i = 0; i < j2.dim() && residuals_zero; ++i)
      for (int j = i + 1; j < j2.dim() && residuals_zero; ++j)
        for (int k = j + 1; k < j2.dim(); ++k) {
          SparseVec acc = j2.bracket_sparse(j2.bracket_basis(i, j), {{k, Rational(1)}});
          sparse_axpy(acc, 1, j2.bracket_sparse(j2.bracket_basis(j, k), {{i, Rational(1)}}));
          sparse_axpy(acc, 1, j2.bracket_sparse(j2.bracket_basis(k, i), {{j, Rational(1)}}));
          if (!acc.empty()) {
            residuals_zero = false;
            break;
          }
        }
    ctx.check("jacobi/j2-triples", residuals_zero);
    for (const Rational& c : {rat(1), rat(2), rat(1, 2)}) {
      const JLSubalgebra jl = jl_subalgebra(c);  // construction re-validates
      ctx.check("jacobi/jlc-" + rat_str(c), jl.algebra.dim() == 20);
    }
    (void)psi();  // antimorphism identity + center well-definedness
    ctx.check("jacobi/antimorphism", true);
  } catch (const Error& e) {
    ctx.log << "  error: " << e.what() << "\n";
    ctx.check("jacobi/exception", false);
  }
}

void suite_tables(VerifyContext& ctx) {
  const auto e_table = parse_golden_table(golden_e_table(), rat(1));
  ctx.check("tables/E", compare_with_golden(j2_h2(), e_table).ok);
  for (const Rational& c : {rat(1), rat(2), rat(1, 2), rat(3, 5)}) {
    const auto f_table = parse_golden_table(golden_f_table(), c);
    ctx.check("tables/F-c-" + rat_str(c), compare_with_golden(jl_subalgebra(c).algebra, f_table).ok);
  }
}

void suite_harmonic(VerifyContext& ctx) {
  for (const Rational& c : {rat(1), rat(2), rat(1, 2)}) {
    SplitMix64 rng(ctx.seed + 17);
    bool member = true;
    std::vector<JetVector> jets;
    for (int d = 0; d <= 4; ++d)
      for (const auto& u : harmonic_basis(c, d))
        for (int s = 0; s < 5; ++s) {
          const JetVector j = jet2(u, random_point(2, rng));
          if (!satisfies_constraint(j, c)) member = false;
          jets.push_back(j);
        }
    ctx.check("harmonic/membership-c-" + rat_str(c), member);
    RatMatrix m(static_cast<int>(jets.size()), 15);
    for (size_t r = 0; r < jets.size(); ++r) {
      for (int k = 0; k < 11; ++k) m(static_cast<int>(r), k) = jets[r].eta[5 + k];
      for (int k = 0; k < 4; ++k) m(static_cast<int>(r), 11 + k) = jets[r].eta[17 + k];
    }
    ctx.check("harmonic/span-c-" + rat_str(c), rank(m) == 14);
  }
}

HPolynomial verify_random_poly(SplitMix64& rng) {
  HPolynomial u;
  for (int d = 0; d <= 4; ++d)
    for (const auto& m : monomials_of_weight(d))
      if (rng.next_int(0, 2) == 0) u += HPolynomial::monomial(m, rng.next_small_rational());
  return u;
}

HAutomorphism verify_random_aut(SplitMix64& rng) {
  HAutomorphism aut = HAutomorphism::dilation(2, rat(rng.next_int(1, 4)));
  if (rng.next_int(0, 1)) aut = HAutomorphism::compose(aut, HAutomorphism::reflection(2));
  if (rng.next_int(0, 1)) aut = HAutomorphism::compose(swap_automorphism(), aut);
  return aut;
}

void suite_prolong(VerifyContext& ctx) {
  SplitMix64 rng(ctx.seed + 41);
  bool chain_ok = true;
  for (int t = 0; t < 20; ++t) {
    const ContactMap f = rng.next_int(0, 1)
                             ? ContactMap::automorphism(verify_random_aut(rng))
                             : ContactMap::left_translation(random_point(2, rng));
    const ContactMap g = rng.next_int(0, 1)
                             ? ContactMap::automorphism(verify_random_aut(rng))
                             : ContactMap::left_translation(random_point(2, rng));
    if (!chain_rule_check(f, g, random_point(2, rng))) chain_ok = false;
  }
  ctx.check("prolong/chain-rule", chain_ok);

  bool j1_ok = true;
  for (int t = 0; t < 20; ++t) {
    const HPolynomial u = verify_random_poly(rng);
    const HPoint a = random_point(2, rng);
    const HAutomorphism aut = verify_random_aut(rng);
    const ContactMap f = ContactMap::automorphism(aut);
    const J1Point lifted = prolong_j1(f, j1_of(compose_with(u, aut), a));
    if (!(lifted == j1_of(u, aut.apply(a)))) j1_ok = false;
  }
  ctx.check("prolong/j1-transport", j1_ok);

  bool j2_ok = true;
  for (int t = 0; t < 20; ++t) {
    const HPolynomial u = verify_random_poly(rng);
    const HPoint a = random_point(2, rng);
    const HAutomorphism aut = verify_random_aut(rng);
    const J2Transport tr = transport_j2(aut);
    if (!(tr.apply(jet2(compose_with(u, aut), a)) == jet2(u, aut.apply(a)))) j2_ok = false;
  }
  ctx.check("prolong/j2-naturality", j2_ok);

  bool morph_ok = true;
  for (const HAutomorphism& aut :
       {swap_automorphism(), HAutomorphism::dilation(2, rat(3)), HAutomorphism::reflection(2),
        HAutomorphism::compose(swap_automorphism(), HAutomorphism::dilation(2, rat(1, 2)))}) {
    const RatMatrix t = transport_e_matrix(aut);
    if (!verify_morphism(j2_h2(), j2_h2(), t).ok) morph_ok = false;
  }
  ctx.check("prolong/j2-automorphism", morph_ok);
}

void suite_swap(VerifyContext& ctx) {
  for (const Rational& c : {rat(1), rat(2), rat(1, 2), rat(3, 5), rat(5, 7)}) {
    const RatMatrix l = swap_iso(c);
    const bool ok =
        verify_morphism(jl_subalgebra(c).algebra, jl_subalgebra(Rational(1) / c).algebra, l).ok;
    ctx.check("swap/iso-c-" + rat_str(c), ok);
  }
  const auto fibers = maps_harmonic_fibers(swap_automorphism(), lc_matrix(rat(2)));
  RatMatrix expect(4, 4);
  expect(0, 0) = 2;
  expect(1, 1) = 1;
  expect(2, 2) = 2;
  expect(3, 3) = 1;
  ctx.check("swap/fiber-conjugation", fibers.conjugated == expect && fibers.fibers_match);
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& format,
               const std::string& output_path) {
  VerifyContext ctx;
  ctx.seed = seed;
  const bool all = suite == "all";
  if (all || suite == "jacobi") suite_jacobi(ctx);
  if (all || suite == "tables") suite_tables(ctx);
  if (all || suite == "harmonic") suite_harmonic(ctx);
  if (all || suite == "prolong") suite_prolong(ctx);
  if (all || suite == "swap") suite_swap(ctx);

  json out;
  out["suite"] = suite;
  out["seed"] = seed;
  out["failures"] = ctx.failures;
  out["ok"] = ctx.failures.empty();
  std::string doc = ctx.log.str();
  if (!ctx.failures.empty() || format == "json") doc += out.dump(2) + "\n";
  emit(doc, output_path);
  return ctx.failures.empty() ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact jet-space bracket tables and sub-Laplacian classification"};
  app.require_subcommand(1);

  std::string format = "text", output_path;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("-o,--output", output_path, "write the document to a file");
    cmd->add_option("--seed", seed, "sampling seed")->each([&](const std::string&) {
      seed_given = true;
    });
  };

  std::string table_target, table_c;
  bool paper_layout = false;
  CLI::App* table = app.add_subcommand("table", "emit a bracket table");
  table->add_option("--target", table_target, "j2 or jlc")
      ->required()
      ->check(CLI::IsMember({"j2", "jlc"}));
  table->add_option("--c", table_c, "positive rational parameter for jlc");
  table->add_flag("--paper-layout", paper_layout, "omit the trivial last row/column");
  add_common(table);

  std::vector<std::string> inv_c;
  int trials = 8;
  CLI::App* invariants = app.add_subcommand("invariants", "invariant reports and verdicts");
  invariants->add_option("--c", inv_c, "positive rational parameters (repeatable)")->required();
  invariants->add_option("--trials", trials, "ad-rank sampling trials");
  add_common(invariants);

  std::string matrix_path;
  CLI::App* classify_cmd = app.add_subcommand("classify", "Williamson classification of a 4x4 SPD matrix");
  classify_cmd->add_option("--matrix", matrix_path, "JSON or CSV matrix file")->required();
  add_common(classify_cmd);

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", suite, "all|jacobi|tables|harmonic|prolong|swap")
      ->check(CLI::IsMember({"all", "jacobi", "tables", "harmonic", "prolong", "swap"}));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (table->parsed()) return cmd_table(table_target, table_c, format, paper_layout, output_path);
    if (invariants->parsed()) return cmd_invariants(inv_c, seed, trials, format, output_path);
    if (classify_cmd->parsed()) return cmd_classify(matrix_path, format, output_path);
    if (verify->parsed()) return cmd_verify(suite, seed, format, output_path);
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitUsage;
}
