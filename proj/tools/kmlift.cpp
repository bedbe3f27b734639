#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include "kmlift/cli/serialize.hpp"

namespace fs = std::filesystem;
using namespace kmlift;
using namespace kmlift::cli;

namespace {

constexpr const char* kVersion = "kmlift 1.0.0";

struct NamedError : std::runtime_error {
  NamedError(std::string n, const std::string& what) : std::runtime_error(what), name(std::move(n)) {}
  std::string name;
};

struct Result {
  bool ok = true;
  Json report;
  std::string text;
  Json constants = Json::object();
  Json errata = Json::array();
};

struct Globals {
  std::string out;
  int workers = 1;
  double budget = 2e9;
  std::uint64_t seed = 20240601;
};

DirichletChar parse_char(const std::string& d) {
  static const std::regex form(R"(^\s*[0-9]+\s*:\s*(-?[0-9]+(\s*,\s*-?[0-9]+)*)?\s*$)");
  if (!std::regex_match(d, form))
    throw NamedError("MalformedCharacterDescriptor", "'" + d + "' is not of the form N:e1,e2,...");
  try {
    std::string s;
    for (char c : d)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (std::stoll(s.substr(0, s.find(':'))) < 1) throw std::invalid_argument("modulus must be positive");
    return DirichletChar::from_descriptor(s);
  } catch (const std::exception& e) {
    throw NamedError("MalformedCharacterDescriptor", "'" + d + "': " + e.what());
  }
}

GramMat parse_gram_arg(const std::string& s) {
  try {
    return parse_gram(s);
  } catch (const std::exception& e) {
    throw NamedError("InvalidGramMatrix", "'" + s + "': " + e.what());
  }
}

void require(bool cond, const std::string& what) {
  if (!cond) throw NamedError("InvalidParameter", what);
}

Budget budget_of(const Globals& g) { return Budget{g.budget, g.workers}; }

Result from_charsum(const std::vector<CharSumReport>& reps) {
  Result r;
  Json a = Json::array();
  for (const auto& x : reps) {
    a.push_back(x.to_json());
    r.text += x.to_text();
    r.ok = r.ok && x.ok();
    if (x.printed_matches != x.grid_size)
      r.errata.push_back({{"identity", x.identity},
                          {"printed_variant_matches", x.printed_matches},
                          {"grid_size", x.grid_size},
                          {"corrected_matches", x.match_count}});
  }
  r.report = {{"reports", a}};
  return r;
}

// charsum
struct CharsumArgs {
  std::string identity;
  std::vector<i64> primes, moduli;
  std::vector<int> sizes;
  int max_m = 3, samples = 8, brute_m = 3, forms = 9;
  std::string mode = "auto";
};

Result run_charsum(const CharsumArgs& a, const Globals& g) {
  static const std::set<std::string> ids{"lemma5.1", "prop5.2", "lemma5.3", "prop5.4", "prop5.7", "prop5.8",
                                         "thm5.9",   "prop5.10", "thm5.5", "thm5.6",  "jm_nonzero"};
  require(ids.count(a.identity), "unknown identity '" + a.identity + "'");
  require(a.max_m >= 1 && a.max_m <= 6, "max-m must lie in 1..6");
  CharSumGrid grid{a.primes, a.max_m, a.samples, g.seed, budget_of(g)};
  auto need_primes = [&] {
    require(!a.primes.empty(), a.identity + " needs --primes");
    for (i64 p : a.primes) require(p >= 3 && nt::is_prime(p), "primes must be odd primes, got " + std::to_string(p));
  };
  if (a.identity == "lemma5.1") return need_primes(), from_charsum({run_lemma_5_1(grid)});
  if (a.identity == "prop5.2") {
    need_primes();
    std::vector<std::pair<int, i64>> cells;
    for (i64 p : a.primes)
      for (int m = 1; m <= a.max_m; ++m) cells.push_back({m, p});
    return from_charsum({run_prop_5_2(cells, budget_of(g))});
  }
  if (a.identity == "lemma5.3") return need_primes(), from_charsum({run_lemma_5_3(grid)});
  if (a.identity == "prop5.4") return need_primes(), from_charsum({run_prop_5_4(grid)});
  if (a.identity == "prop5.7" || a.identity == "prop5.8") {
    need_primes();
    auto reps = run_prop_5_7_5_8(grid);
    return from_charsum({a.identity == "prop5.7" ? reps[0] : reps[1]});
  }
  if (a.identity == "thm5.9") return need_primes(), from_charsum({run_thm_5_9(grid, a.brute_m)});
  if (a.identity == "prop5.10") return need_primes(), from_charsum({run_prop_5_10(a.primes)});
  if (a.identity == "jm_nonzero") {
    require(!a.moduli.empty(), "jm_nonzero needs --moduli");
    return from_charsum({run_jm_nonvanishing(a.moduli, a.max_m)});
  }
  require(!a.moduli.empty(), a.identity + " needs --moduli");
  for (i64 N : a.moduli) {
    require(N % 2 == 1 && N > 1, "moduli must be odd and > 1");
    for (auto [p, e] : nt::factorize(N)) require(e == 1, "moduli must be squarefree");
  }
  require(a.mode == "auto" || a.mode == "brute_sl" || a.mode == "brute_sym", "mode must be auto, brute_sl or brute_sym");
  HsumGrid hg{a.moduli, a.sizes.empty() ? std::vector<int>{2, 3} : a.sizes, a.forms, g.seed};
  hg.budget = budget_of(g);
  hg.sym_from_m = a.mode == "brute_sl" ? 99 : a.mode == "brute_sym" ? 1 : 4;
  for (int m : hg.sizes) {
    require(m >= 1 && m <= 4, "sizes must lie in 1..4");
    if (m < hg.sym_from_m)
      for (i64 N : a.moduli)
        budget_of(g).check("brute_sl at m=" + std::to_string(m) + " N=" + std::to_string(N),
                           std::pow(static_cast<double>(N), m * m));
  }
  return from_charsum({run_thm_5_5(hg)});
}

// jacobi
Result run_jacobi(const std::string& chi_s, const std::string& eta_s, int m) {
  Result r;
  auto chi = parse_char(chi_s);
  r.report["chi"] = chi.descriptor();
  r.report["order"] = chi.order();
  r.report["conductor"] = chi.conductor();
  r.report["gauss_sum"] = to_json(gauss_sum(chi));
  TextTable t({"quantity", "value"});
  t.add({"chi", chi.descriptor()});
  t.add({"G(chi)", gauss_sum(chi).to_string()});
  if (!eta_s.empty()) {
    auto eta = parse_char(eta_s);
    require(eta.modulus() == chi.modulus(), "chi and eta need the same modulus");
    CycloNum J = jacobi_sum(chi, eta);
    r.report["eta"] = eta.descriptor();
    r.report["jacobi_sum"] = to_json(J);
    t.add({"J(chi,eta)", J.to_string()});
    if (m > 0) {
      CycloNum Jm = Jm_brute(chi, eta, m);
      r.report["J_m_brute"] = to_json(Jm);
      t.add({"J_" + std::to_string(m) + "(chi,eta) brute", Jm.to_string()});
    }
  }
  if (m > 0 && chi.modulus() % 2 == 1) {
    CycloNum Jm = Jm_chi(chi, m);
    r.report["m"] = m;
    r.report["J_m_chi"] = to_json(Jm);
    t.add({"J_" + std::to_string(m) + "(chi)", Jm.to_string()});
  }
  r.text = t.str();
  return r;
}

// local
Result run_density(const std::string& gram, i64 p, const std::string& mode, const Globals& g) {
  require(mode == "brute" || mode == "closed" || mode == "both", "mode must be brute, closed or both");
  require(nt::is_prime(p), "p must be prime");
  GramMat G = parse_gram_arg(gram);
  Result r;
  r.report = {{"gram", to_json(G)}, {"p", p}};
  TextTable t({"mode", "alpha_p", "level"});
  std::optional<Rational> b, c;
  if (mode != "closed") {
    auto d = local_density_brute(G, p, budget_of(g));
    b = d.value;
    r.report["brute"] = {{"value", to_json(d.value)}, {"level", d.level}};
    t.add({"brute", to_fraction_string(d.value), std::to_string(d.level)});
  }
  if (mode != "brute") {
    require(p != 2, "closed density needs an odd prime");
    c = local_density_closed(G, p);
    r.report["closed"] = to_json(*c);
    t.add({"closed", to_fraction_string(*c), "-"});
  }
  if (b && c) r.ok = *b == *c;
  r.report["agree"] = r.ok;
  r.text = t.str();
  return r;
}

Result run_siegel(const std::string& gram, i64 p, const std::string& mode, int J, const Globals& g) {
  require(mode == "oracle" || mode == "interpolation" || mode == "both", "mode must be oracle, interpolation or both");
  require(nt::is_prime(p), "p must be prime");
  GramMat G = parse_gram_arg(gram);
  Result r;
  r.report = {{"gram", to_json(G)}, {"p", p}};
  TextTable t({"mode", "F(X)", "known", "complete", "symmetric"});
  auto row = [&](const SiegelPoly& S) {
    t.add({siegel_mode_name(S.mode), S.F.to_string("X"), std::to_string(S.known_terms), S.complete ? "yes" : "no",
           S.symmetric ? "yes" : "no"});
    if (S.complete && !S.symmetric) r.ok = false;
  };
  std::optional<SiegelPoly> I, O;
  if (mode != "oracle") {
    require(p != 2, "interpolation mode needs an odd prime");
    I = siegel_series_interpolation(G, p);
    r.report["interpolation"] = to_json(*I);
    row(*I);
  }
  if (mode != "interpolation") {
    int j = J > 0 ? J : I ? static_cast<int>(I->F.degree().value_or(0)) + 1 : 1;
    O = siegel_series_oracle(G, p, j, budget_of(g));
    r.report["oracle"] = to_json(*O);
    row(*O);
  }
  if (I && O) {
    bool eq = true;
    for (int j = 0; j < O->known_terms; ++j) eq = eq && O->F[j] == I->F[j];
    r.report["agree_on_known_terms"] = eq;
    r.ok = r.ok && eq;
  }
  r.text = t.str();
  return r;
}

Result run_pseries(int n, i64 p, const std::string& d0s, const std::string& omega, int prec, const std::string& mode) {
  require(mode == "brute" || mode == "closed" || mode == "both", "mode must be brute, closed or both");
  require(omega == "iota" || omega == "eps", "omega must be iota or eps");
  require(n >= 2 && n % 2 == 0, "n must be even and >= 2");
  require(p >= 3 && nt::is_prime(p), "p must be an odd prime");
  require(prec >= 1 && prec <= 6, "precision must lie in 1..6");
  Rational d0;
  try {
    d0 = parse_rational(d0s);
  } catch (const std::exception& e) {
    throw NamedError("InvalidParameter", e.what());
  }
  require(d0 != 0, "d0 must be nonzero");
  Omega w = omega == "iota" ? Omega::iota : Omega::eps;
  Result r;
  TextTable t({"mode", "series"});
  std::optional<PSeries> b, c;
  if (mode != "closed") {
    b = p_series(n, p, d0, w, prec, PSeriesMode::brute);
    r.report["brute"] = to_json(*b);
    t.add({"brute", b->series.to_string()});
  }
  if (mode != "brute") {
    c = p_series(n, p, d0, w, prec, PSeriesMode::closed);
    r.report["closed"] = to_json(*c);
    t.add({"closed", c->series.to_string()});
  }
  if (b && c) r.ok = b->series == c->series;
  r.report["agree"] = r.ok;
  r.text = t.str();
  return r;
}

// lseries
Result run_cohen(int l, int count, const std::string& conv) {
  require(conv == "plus_space" || conv == "printed", "convention must be plus_space or printed");
  require(l >= 2 && l % 2 == 0, "l must be even and >= 2");
  require(count >= 1 && count <= 2000, "count must lie in 1..2000");
  auto E = cohen_eisenstein(l, count, conv == "printed" ? CohenConvention::printed : CohenConvention::plus_space);
  Result r;
  Json c = Json::array();
  TextTable t({"e", "H(l,e)"});
  for (int e = 0; e < count; ++e) {
    c.push_back(to_json(E.series[e]));
    t.add({std::to_string(e), to_fraction_string(E.series[e])});
  }
  r.report = {{"l", l}, {"convention", conv}, {"support_ok", E.series.plus_support_ok()}, {"coeffs", c}, {"notes", E.notes}};
  r.text = t.str();
  return r;
}

Result run_stream(const std::string& source, const std::string& chi_s, i64 B, int shift) {
  require(B >= 1 && B <= 100000, "bound must lie in 1..100000");
  auto chi = parse_char(chi_s);
  DirStream s;
  if (source == "zeta")
    s = dirichlet_L_stream(char_fn(chi), 1, shift, B, "L(s-" + std::to_string(shift) + "," + chi.descriptor() + ")");
  else if (source == "delta")
    s = hecke_stream(delta_series(static_cast<int>(B) + 1), chi, B);
  else
    throw NamedError("InvalidParameter", "source must be zeta or delta");
  Result r;
  r.report = to_json(s);
  TextTable t({"m", "a(m)"});
  for (i64 m = 1; m <= B; ++m) t.add({std::to_string(m), s.a[m].to_string()});
  r.text = s.tag + "\n" + t.str();
  return r;
}

// forms
Result run_enumerate(int n, i64 B, long margin, const Globals& g) {
  require(n >= 1 && n <= 4, "n must lie in 1..4");
  require(B >= 1, "det-bound must be positive");
  auto L = enumerate_classes(n, B, margin, budget_of(g));
  Result r;
  r.report = to_json(L);
  TextTable t({"det", "gram", "e", "aut", "d", "f", "genus"});
  for (const auto& c : L.classes)
    t.add({c.gram.det().get_str(), c.gram.to_string(), std::to_string(c.e), std::to_string(c.o_full),
           std::to_string(c.split.d), std::to_string(c.split.f), std::to_string(c.genus)});
  r.text = t.str();
  return r;
}

Result run_aut(const std::string& gram, i64 level) {
  GramMat G = parse_gram_arg(gram);
  require(G.is_positive_definite(), "Gram matrix must be positive definite");
  require(level >= 1, "level must be positive");
  auto a = automorphism_count(G, level);
  Result r;
  r.report = {{"gram", to_json(G)}, {"level", level}, {"proper", a.proper}, {"full", a.full}};
  TextTable t({"gram", "level", "proper", "full"});
  t.add({G.to_string(), std::to_string(level), std::to_string(a.proper), std::to_string(a.full)});
  r.text = t.str();
  return r;
}

// lift, kmverify, firstkind
struct LiftArgs {
  int n = 4, k = 8, precision = 200, max_nu2 = 2;
  i64 bound = 40;
};

void check_flagship(const LiftArgs& a) {
  require(a.n % 2 == 0 && a.k % 2 == 0, "n and k must be even");
  require(a.n >= 2 && a.n <= 4, "class enumeration supports n <= 4");
  require(a.precision > 4 * a.bound, "precision must exceed 4 * det-bound");
  require(a.max_nu2 >= 0 && a.max_nu2 <= 3, "max-nu2 must lie in 0..3");
}

IkedaCoeffTable lift_table(const LiftArgs& a, PlusForm& F, const Globals& g) {
  F = build_plus_eigenform(a.k, a.n, a.precision);
  auto L = enumerate_classes(a.n, a.bound, 1, budget_of(g));
  IkedaOptions o;
  o.budget = budget_of(g);
  return ikeda_table(L, F, o);
}

Result run_lift(const LiftArgs& a, const Globals& g) {
  check_flagship(a);
  PlusForm F;
  auto T = lift_table(a, F, g);
  Result r;
  r.report = to_json(T);
  TextTable t({"det", "gram", "e", "a(T)"});
  for (const auto& row : T.rows)
    t.add({row.cls.gram.det().get_str(), row.cls.gram.to_string(), std::to_string(row.cls.e),
           row.coeff.excluded ? "excluded: " + row.coeff.reason : to_fraction_string(row.coeff.value)});
  r.text = t.str();
  return r;
}

Result run_kmverify(const LiftArgs& a, const std::string& chi_s, const Globals& g) {
  check_flagship(a);
  require(2 * a.k - a.n == 12, "the lift expansion is implemented for 2k - n = 12");
  auto chi = parse_char(chi_s);
  require(chi.conductor() % 2 == 1, "character conductor must be odd");
  PlusForm F;
  auto T = lift_table(a, F, g);
  LiftIdentityOptions o;
  o.bound = a.bound;
  o.max_nu2 = a.max_nu2;
  auto rep = verify_lift_identity(T, F, chi, o);
  Result r;
  r.ok = rep.pass();
  r.report = to_json(rep);
  r.constants = {{"c_n", to_json(rep.fit.c)}, {"d_n", to_json(rep.fit.d)}, {"two_power_shift", rep.shift}};
  TextTable t({"chi", "shift", "checked", "residuals", "c_n", "d_n"});
  t.add({rep.chi, rep.shift_found ? std::to_string(rep.shift) : "-", std::to_string(rep.fit.checked.size()),
         std::to_string(rep.fit.residuals.size()), to_fraction_string(rep.fit.c), to_fraction_string(rep.fit.d)});
  r.text = t.str();
  for (const auto& res : rep.fit.residuals)
    r.text += "  residual D=" + std::to_string(res.index) + ": lhs " + res.lhs.to_string() + ", rhs " + res.rhs.to_string() + "\n";
  for (const auto& n : rep.notes) r.text += "  note: " + n + "\n";
  return r;
}

Result run_firstkind(const LiftArgs& a, const std::string& chi_s, const std::string& mode, const Globals& g) {
  check_flagship(a);
  require(2 * a.k - a.n == 12, "the lift expansion is implemented for 2k - n = 12");
  auto chi = parse_char(chi_s);
  require(chi.modulus() % 2 == 1 && chi.modulus() >= 3, "first kind needs an odd modulus N >= 3");
  require(mode == "brute_sym" || mode == "brute_sl" || mode == "closed", "mode must be brute_sym, brute_sl or closed");
  PlusForm F;
  auto T = lift_table(a, F, g);
  Det1TableCache cache(budget_of(g));
  FirstKindOptionsFull o;
  o.bound = a.bound;
  o.max_nu2 = a.max_nu2;
  o.direct.mode = mode == "brute_sym" ? HsumMode::brute_sym : mode == "brute_sl" ? HsumMode::brute_sl : HsumMode::closed;
  o.direct.budget = budget_of(g);
  auto rep = verify_first_kind(T, F, chi, cache, o);
  Result r;
  r.ok = rep.pass();
  r.report = to_json(rep);
  r.constants = {{"c_n", to_json(rep.c_n)}, {"d_n", to_json(rep.d_n)}};
  TextTable t({"weights", "residuals", "c_n,N", "d_n,N", "ratio_c", "ratio_d", "predicted", "pass"});
  for (const auto& v : rep.variants) {
    t.add({jacobi_weights_name(v.weights), std::to_string(v.residuals_finite.size()), to_fraction_string(v.fit.c),
           to_fraction_string(v.fit.d), to_fraction_string(v.ratio_c), to_fraction_string(v.ratio_d),
           to_fraction_string(v.constant), v.pass() ? "yes" : "no"});
    r.constants[std::string("c_n_N_") + jacobi_weights_name(v.weights)] = to_json(v.fit.c);
    r.constants[std::string("d_n_N_") + jacobi_weights_name(v.weights)] = to_json(v.fit.d);
    r.constants[std::string("predicted_") + jacobi_weights_name(v.weights)] = to_json(v.constant);
    if (v.weights == JacobiWeights::printed)
      r.errata.push_back({{"identity", "firstkind weights"},
                          {"printed_constant", to_json(v.constant)},
                          {"printed_residuals", v.residuals_finite.size()},
                          {"corrected_constant", to_json(rep.variant(JacobiWeights::corrected)->constant)}});
  }
  std::string head = "chi " + rep.chi + (rep.zero_branch ? ", zero branch, residuals " +
                                                                std::to_string(rep.zero_residuals.size())
                                                          : ", psi " + std::to_string(rep.psi.size())) +
                     ", closed-vs-direct h mismatches " + std::to_string(rep.spot_mismatches) + "/" +
                     std::to_string(rep.spot_checks) + "\n";
  r.text = head + (rep.zero_branch ? "" : t.str());
  for (const auto& n : rep.notes) r.text += "  note: " + n + "\n";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) + ": twisted Koecher-Maass series, lift coefficients, local series and character sums"};
  app.set_config("--config", "", "flat key = value file; keys are option names, prefixed 'sub.' for subcommand options");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Character descriptors: N:e1,e2,... gives the exponents on the fixed generators of the prime-power\n"
      "components of (Z/N)^x, in increasing prime order (for 2^a, a >= 3: the generators -1 and 5).\n"
      "Environment: KMLIFT_OUT (output directory), KMLIFT_WORKERS (worker count).\n"
      "Exit status: 0 all requested checks have empty residuals, 1 residuals found, 2 invalid parameters, 3 budget refusal.");

  Globals g;
  if (const char* e = std::getenv("KMLIFT_OUT")) g.out = e;
  if (const char* e = std::getenv("KMLIFT_WORKERS")) g.workers = std::max(1, std::atoi(e));
  if (g.out.empty()) g.out = "kmlift_out";
  app.add_option("--out", g.out, "output directory");
  app.add_option("--workers", g.workers, "worker threads inside the brute-force modules")->check(CLI::Range(1, 256));
  app.add_option("--budget", g.budget, "maximum elementary steps for a brute-force route");
  app.add_option("--seed", g.seed, "seed for randomized grids");

  std::function<Result()> job;
  std::string job_name;
  auto bind = [&](CLI::App* sub, const std::string& name, std::function<Result()> f) {
    sub->callback([&job, &job_name, name, f] {
      job = f;
      job_name = name;
    });
  };

  CharsumArgs cs;
  auto* c_cs = app.add_subcommand("charsum", "character-sum identity against brute force");
  c_cs->add_option("--identity", cs.identity,
                   "lemma5.1 prop5.2 lemma5.3 prop5.4 prop5.7 prop5.8 thm5.9 prop5.10 thm5.5 thm5.6 jm_nonzero")
      ->required();
  c_cs->add_option("--primes", cs.primes, "prime grid")->delimiter(',');
  c_cs->add_option("--moduli", cs.moduli, "modulus grid (thm5.5, thm5.6, jm_nonzero)")->delimiter(',');
  c_cs->add_option("--sizes", cs.sizes, "matrix sizes (thm5.5, thm5.6)")->delimiter(',');
  c_cs->add_option("--max-m", cs.max_m, "largest matrix size");
  c_cs->add_option("--samples", cs.samples, "random samples per grid cell");
  c_cs->add_option("--brute-m", cs.brute_m, "largest size summed by brute force (thm5.9)");
  c_cs->add_option("--forms", cs.forms, "forms per (N, m) cell (thm5.5, thm5.6)");
  c_cs->add_option("--mode", cs.mode, "auto | brute_sl | brute_sym (thm5.5, thm5.6)");
  bind(c_cs, "charsum", [&] { return run_charsum(cs, g); });

  std::string j_chi, j_eta;
  int j_m = 0;
  auto* c_j = app.add_subcommand("jacobi", "Gauss and Jacobi sums of characters");
  c_j->add_option("--chi", j_chi, "character descriptor")->required();
  c_j->add_option("--eta", j_eta, "second character descriptor");
  c_j->add_option("--m", j_m, "size for J_m");
  bind(c_j, "jacobi", [&] { return run_jacobi(j_chi, j_eta, j_m); });

  auto* c_loc = app.add_subcommand("local", "local densities, Siegel series, P-series");
  c_loc->require_subcommand(1);
  std::string l_gram, l_mode_d = "both", l_mode_s = "both", p_mode = "both", p_d0 = "1", p_omega = "iota";
  i64 l_p = 3, s_p = 3, p_p = 3;
  int s_J = 0, p_n = 2, p_prec = 3;
  auto* c_den = c_loc->add_subcommand("density", "alpha_p(G, G)");
  c_den->add_option("--gram", l_gram, "Gram matrix of 2T, rows separated by ';'")->required();
  c_den->add_option("--p", l_p, "prime");
  c_den->add_option("--mode", l_mode_d, "brute | closed | both");
  bind(c_den, "local_density", [&] { return run_density(l_gram, l_p, l_mode_d, g); });
  auto* c_sie = c_loc->add_subcommand("siegel", "Siegel series polynomial F_p(T, X)");
  c_sie->add_option("--gram", l_gram, "Gram matrix of 2T")->required();
  c_sie->add_option("--p", s_p, "prime");
  c_sie->add_option("--mode", l_mode_s, "oracle | interpolation | both");
  c_sie->add_option("--J", s_J, "oracle truncation level (0: from the degree)");
  bind(c_sie, "local_siegel", [&] { return run_siegel(l_gram, s_p, l_mode_s, s_J, g); });
  auto* c_ps = c_loc->add_subcommand("pseries", "local P-series in t");
  c_ps->add_option("--n", p_n, "even size");
  c_ps->add_option("--p", p_p, "odd prime");
  c_ps->add_option("--d0", p_d0, "rational d0");
  c_ps->add_option("--omega", p_omega, "iota | eps");
  c_ps->add_option("--precision", p_prec, "t-precision");
  c_ps->add_option("--mode", p_mode, "brute | closed | both");
  bind(c_ps, "local_pseries", [&] { return run_pseries(p_n, p_p, p_d0, p_omega, p_prec, p_mode); });

  auto* c_ls = app.add_subcommand("lseries", "Cohen numbers and Dirichlet streams");
  c_ls->require_subcommand(1);
  int co_l = 4, co_count = 30;
  std::string co_conv = "plus_space", st_source = "zeta", st_chi = "1:";
  i64 st_bound = 30;
  int st_shift = 0;
  auto* c_co = c_ls->add_subcommand("cohen", "H(l, e) for e < count");
  c_co->add_option("--l", co_l, "even l >= 2");
  c_co->add_option("--count", co_count, "number of coefficients");
  c_co->add_option("--convention", co_conv, "plus_space | printed");
  bind(c_co, "lseries_cohen", [&] { return run_cohen(co_l, co_count, co_conv); });
  auto* c_st = c_ls->add_subcommand("stream", "Dirichlet coefficients up to a bound");
  c_st->add_option("--source", st_source, "zeta (L(s - shift, chi)) | delta (L(s, Delta, chi))");
  c_st->add_option("--chi", st_chi, "character descriptor");
  c_st->add_option("--bound", st_bound, "last index");
  c_st->add_option("--shift", st_shift, "shift a in L(s - a, chi)");
  bind(c_st, "lseries_stream", [&] { return run_stream(st_source, st_chi, st_bound, st_shift); });

  auto* c_fo = app.add_subcommand("forms", "positive definite even forms");
  c_fo->require_subcommand(1);
  int fe_n = 4;
  i64 fe_B = 16, fa_level = 1;
  long fe_margin = 1;
  std::string fa_gram;
  auto* c_fe = c_fo->add_subcommand("enumerate", "proper classes with det(2T) <= B");
  c_fe->add_option("--n", fe_n, "size");
  c_fe->add_option("--det-bound", fe_B, "bound on det(2T)");
  c_fe->add_option("--margin", fe_margin, "search margin");
  bind(c_fe, "forms_enumerate", [&] { return run_enumerate(fe_n, fe_B, fe_margin, g); });
  auto* c_fa = c_fo->add_subcommand("aut", "automorphism counts");
  c_fa->add_option("--gram", fa_gram, "Gram matrix of 2T")->required();
  c_fa->add_option("--level", fa_level, "count automorphisms congruent to 1 mod level");
  bind(c_fa, "forms_aut", [&] { return run_aut(fa_gram, fa_level); });

  LiftArgs la;
  auto add_lift = [&](CLI::App* s) {
    s->add_option("--n", la.n, "degree");
    s->add_option("--k", la.k, "weight");
    s->add_option("--det-bound", la.bound, "bound on D = det(2T)");
    s->add_option("--precision", la.precision, "q-expansion precision of h");
  };
  auto* c_li = app.add_subcommand("lift", "lift coefficients");
  c_li->require_subcommand(1);
  auto* c_lc = c_li->add_subcommand("coeffs", "a(T) over all classes with det(2T) <= B");
  add_lift(c_lc);
  bind(c_lc, "lift_coeffs", [&] { return run_lift(la, g); });

  std::string kv_chi = "1:", fk_chi = "7:2", fk_mode = "brute_sym";
  auto* c_kv = app.add_subcommand("kmverify", "second-kind series against the two-term lift expansion");
  add_lift(c_kv);
  c_kv->add_option("--chi", kv_chi, "character descriptor (odd conductor)");
  c_kv->add_option("--max-nu2", la.max_nu2, "largest nu_2(D) in scope");
  bind(c_kv, "kmverify", [&] { return run_kmverify(la, kv_chi, g); });
  auto* c_fk = app.add_subcommand("firstkind", "first-kind series: direct h(A, chi) route against the expansion");
  add_lift(c_fk);
  c_fk->add_option("--chi", fk_chi, "character descriptor, odd modulus N >= 3");
  c_fk->add_option("--max-nu2", la.max_nu2, "largest nu_2(D) in scope");
  c_fk->add_option("--mode", fk_mode, "brute_sym | brute_sl | closed");
  bind(c_fk, "firstkind", [&] { return run_firstkind(la, fk_chi, fk_mode, g); });

  CLI11_PARSE(app, argc, argv);

  Json config{{"subcommand", job_name},
               {"globals", {{"workers", g.workers}, {"budget", g.budget}, {"seed", g.seed}}},
               {"options", Json::object()}};
  for (CLI::App* sub = &app; sub;) {
    auto chosen = sub->get_subcommands();
    sub = chosen.empty() ? nullptr : chosen.front();
    if (!sub || !sub->get_subcommands().empty()) continue;
    for (const CLI::Option* o : sub->get_options()) {
      if (o->get_lnames().empty() || o->get_lnames().front() == "help") continue;
      std::string v;
      if (o->count())
        for (const auto& x : o->results()) v += (v.empty() ? "" : ",") + x;
      else
        v = o->get_default_str();
      config["options"][o->get_lnames().front()] = v;
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  Result res;
  int status = 0;
  try {
    res = job();
    status = res.ok ? 0 : 1;
  } catch (const NamedError& e) {
    std::cerr << "error: " << e.name << ": " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: BudgetRefused: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: InvalidParameter: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: InvalidParameter: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: InvalidParameter: " << e.what() << "\n";
    return 2;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(g.out);
  Json report{{"subcommand", job_name}, {"ok", res.ok}, {"result", res.report}};
  std::ofstream(fs::path(g.out) / (job_name + ".json")) << report.dump(2) << "\n";
  std::ofstream(fs::path(g.out) / (job_name + ".txt")) << res.text;
  Json manifest{{"version", kVersion},
                {"config", config},
                {"ok", res.ok},
                {"constants", res.constants},
                {"errata", res.errata},
                {"reports", {job_name + ".json", job_name + ".txt"}}};
  std::ofstream(fs::path(g.out) / "manifest.json") << manifest.dump(2) << "\n";
  std::ofstream(fs::path(g.out) / "timings.json") << Json{{job_name, secs}}.dump(2) << "\n";
  std::cout << res.text << (res.ok ? "ok" : "RESIDUALS") << "  (reports in " << g.out << ")\n";
  return status;
}
