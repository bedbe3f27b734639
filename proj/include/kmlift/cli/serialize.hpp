#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmlift/charsums.hpp"
#include "kmlift/liftkm.hpp"
#include "kmlift/lseries.hpp"
#include "kmlift/plocal.hpp"
#include "kmlift/quadforms.hpp"

namespace kmlift::cli {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return to_fraction_string(r); }

// level plus coefficients of zeta^0..zeta^{phi(level)-1}, at the minimal level
inline Json to_json(const CycloNum& z) {
  CycloNum m = z.minimal_level();
  Json c = Json::array();
  for (const auto& x : m.coeffs()) c.push_back(to_fraction_string(x));
  return {{"level", m.level()}, {"coeffs", c}};
}

inline Json to_json(const QuadSurd& x) {
  if (x.is_rational()) return to_fraction_string(x.a());
  return {{"a", to_fraction_string(x.a())}, {"b", to_fraction_string(x.b())}, {"radicand", x.radicand()}};
}

inline Json to_json(const RatPoly& f) {
  Json c = Json::array();
  for (const auto& x : f.coeffs()) c.push_back(to_fraction_string(x));
  return c;
}

template <class F>
Json to_json(const Laurent<F>& L) {
  Json t = Json::array();
  for (const auto& [k, c] : L.terms()) t.push_back({{"exp", k}, {"coeff", to_json(c)}});
  return t;
}

inline Json to_json(const GramMat& G) { return {{"n", G.n}, {"gram", G.g}}; }

inline Json to_json(const DiscSplit& s) { return {{"d", s.d}, {"f", s.f}}; }

inline Json to_json(const FormClass& c) {
  Json j = to_json(c.gram);
  j["det"] = c.gram.det().get_str();
  j["e"] = c.e;
  j["aut"] = c.o_full;
  j["disc"] = to_json(c.split);
  j["genus"] = c.genus;
  return j;
}

inline Json to_json(const ClassList& L) {
  Json cs = Json::array();
  for (const auto& c : L.classes) cs.push_back(to_json(c));
  return {{"n", L.n}, {"det_bound", L.bound}, {"candidates", L.candidates}, {"classes", cs}};
}

inline Json to_json(const SiegelPoly& S) {
  return {{"p", S.p},           {"n", S.n},
          {"mode", siegel_mode_name(S.mode)},
          {"F", to_json(S.F)},  {"nu_det", S.nu_det},
          {"xi", S.xi},         {"nu_f", S.nu_f},
          {"known_terms", S.known_terms},
          {"complete", S.complete},
          {"symmetric", S.symmetric},
          {"F_tilde", to_json(S.tilde())},
          {"flags", S.flags}};
}

inline Json to_json(const PSeries& P) {
  Json s = Json::array();
  for (int i = 0; i < P.series.precision(); ++i) s.push_back(to_json(P.series[i]));
  return {{"n", P.n},
          {"p", P.p},
          {"d0", to_json(P.d0)},
          {"omega", omega_name(P.omega)},
          {"mode", P.mode == PSeriesMode::brute ? "brute" : "closed"},
          {"parity_ok", P.parity_ok()},
          {"t_coeffs", s}};
}

inline Json to_json(const DirStream& s) {
  Json a = Json::array();
  for (i64 m = 1; m <= s.bound; ++m) a.push_back(to_json(s.a[m]));
  return {{"tag", s.tag}, {"bound", s.bound}, {"coeffs", a}};
}

inline Json to_json(const IkedaCoeffTable& T) {
  Json rows = Json::array();
  for (const auto& r : T.rows) {
    Json j = to_json(r.cls);
    j["excluded"] = r.coeff.excluded;
    if (r.coeff.excluded)
      j["reason"] = r.coeff.reason;
    else
      j["coeff"] = to_json(r.coeff.value);
    rows.push_back(j);
  }
  return {{"n", T.n}, {"k", T.k}, {"det_bound", T.bound}, {"rows", rows}, {"exclusions", T.exclusions}};
}

inline Json to_json(const FitResidual& r) { return {{"index", r.index}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}}; }

inline Json to_json(const std::vector<FitResidual>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

inline Json to_json(const TwoTermFit& f) {
  return {{"solved", f.solved},
          {"c", to_json(f.c)},
          {"d", to_json(f.d)},
          {"fit_indices", f.fit_indices},
          {"checked", f.checked},
          {"residuals", to_json(f.residuals)}};
}

inline Json to_json(const LiftIdentityReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) trials.push_back({{"shift", t.shift}, {"outcome", t.outcome}});
  return {{"n", r.n},
          {"k", r.k},
          {"chi", r.chi},
          {"det_bound", r.bound},
          {"max_nu2", r.max_nu2},
          {"shift_found", r.shift_found},
          {"two_power_shift", r.shift},
          {"trials", trials},
          {"fit", to_json(r.fit)},
          {"excluded_indices", r.excluded},
          {"exclusions", r.exclusions},
          {"notes", r.notes},
          {"pass", r.pass()}};
}

inline Json to_json(const FirstKindVariant& v) {
  return {{"weights", jacobi_weights_name(v.weights)},
          {"constant", to_json(v.constant)},
          {"constant_gamma_printed", to_json(v.constant_gamma_printed)},
          {"residuals_finite", to_json(v.residuals_finite)},
          {"fit", to_json(v.fit)},
          {"ratio_c", to_json(v.ratio_c)},
          {"ratio_d", to_json(v.ratio_d)},
          {"pass", v.pass()}};
}

inline Json to_json(const FirstKindReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.variants) vs.push_back(to_json(v));
  return {{"n", r.n},
          {"k", r.k},
          {"N", r.N},
          {"chi", r.chi},
          {"chi_tilde", r.chi_tilde},
          {"det_bound", r.bound},
          {"max_nu2", r.max_nu2},
          {"zero_branch", r.zero_branch},
          {"failing_primes", r.failing_primes},
          {"psi", r.psi},
          {"checked", r.checked},
          {"excluded_indices", r.excluded},
          {"zero_residuals", to_json(r.zero_residuals)},
          {"variants", vs},
          {"c_n", to_json(r.c_n)},
          {"d_n", to_json(r.d_n)},
          {"spot_checks", r.spot_checks},
          {"spot_mismatches", r.spot_mismatches},
          {"notes", r.notes},
          {"pass", r.pass()}};
}

// aligned-column text mirror of a table
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) {
    row.resize(header_.size());
    rows_.push_back(std::move(row));
  }
  std::string str() const {
    std::vector<std::size_t> w(header_.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = header_[i].size();
      for (const auto& r : rows_) w[i] = std::max(w[i], r[i].size());
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
      }
      os << s << "\n";
    };
    line(header_);
    std::vector<std::string> rule;
    for (auto x : w) rule.push_back(std::string(x, '-'));
    line(rule);
    for (const auto& r : rows_) line(r);
    return os.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace kmlift::cli
