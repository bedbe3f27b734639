#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmlift/charsums/counts.hpp"
#include "kmlift/charsums/hsum.hpp"
#include "kmlift/charsums/jmsums.hpp"
#include "kmlift/charsums/quadsums.hpp"

namespace kmlift {

struct CharSumMismatch {
  std::string inputs, brute, printed, corrected;
};

struct CharSumReport {
  CharSumReport() = default;
  CharSumReport(std::string id, std::string g) : identity(std::move(id)), grid(std::move(g)) {}

  std::string identity;
  std::string grid;
  long grid_size = 0;
  long match_count = 0;
  long printed_matches = 0;  // grid points where the printed variant also equals brute force
  std::vector<CharSumMismatch> mismatches;
  std::vector<std::string> notes;

  bool ok() const { return mismatches.empty() && match_count == grid_size; }

  void record(const std::string& inputs, const std::string& brute, const std::string& printed,
              const std::string& corrected, bool match, bool printed_match) {
    ++grid_size;
    if (match)
      ++match_count;
    else
      mismatches.push_back({inputs, brute, printed, corrected});
    if (printed_match) ++printed_matches;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["grid"] = grid;
    j["grid_size"] = grid_size;
    j["match_count"] = match_count;
    j["printed_matches"] = printed_matches;
    j["ok"] = ok();
    auto arr = nlohmann::ordered_json::array();
    for (auto& m : mismatches)
      arr.push_back({{"inputs", m.inputs}, {"brute", m.brute}, {"printed", m.printed}, {"corrected", m.corrected}});
    j["mismatches"] = arr;
    j["notes"] = notes;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << identity << "  grid: " << grid << "\n";
    os << "  matches " << match_count << "/" << grid_size << ", printed variant matches " << printed_matches << "/"
       << grid_size << (ok() ? "  OK" : "  MISMATCH") << "\n";
    for (auto& m : mismatches)
      os << "  mismatch " << m.inputs << ": brute " << m.brute << ", printed " << m.printed << ", corrected "
         << m.corrected << "\n";
    for (auto& n : notes) os << "  note: " << n << "\n";
    return os.str();
  }
};

struct CharSumGrid {
  std::vector<i64> primes;
  int max_m = 3;
  int samples = 8;
  std::uint64_t seed = 20240601;
  Budget budget;
};

namespace detail {

inline std::string join_ints(const std::vector<i64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline SymMatModN diag_mat(const std::vector<i64>& d, i64 p) {
  SymMatModN S(static_cast<int>(d.size()), p);
  for (std::size_t i = 0; i < d.size(); ++i) S.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return S;
}

inline std::vector<i64> random_units(std::mt19937_64& rng, int n, i64 p) {
  std::vector<i64> v(n);
  for (auto& x : v) x = 1 + static_cast<i64>(rng() % (p - 1));
  return v;
}

inline SymMatModN random_sym(std::mt19937_64& rng, int n, i64 N) {
  SymMatModN S(n, N);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) S.set(i, j, static_cast<i64>(rng() % N));
  return S;
}

inline std::string grid_label(const CharSumGrid& g) {
  return "primes " + join_ints(g.primes) + ", m <= " + std::to_string(g.max_m) + ", samples " +
         std::to_string(g.samples) + ", seed " + std::to_string(g.seed);
}

inline std::uint64_t cell_seed(std::uint64_t seed, i64 a, i64 b, i64 c) {
  return seed ^ (static_cast<std::uint64_t>(a) * 1000003u) ^ (static_cast<std::uint64_t>(b) * 10007u) ^
         (static_cast<std::uint64_t>(c) * 101u);
}

}  // namespace detail

// brute #A(S,T) against the general formula over sampled diagonal pairs
inline CharSumReport run_lemma_5_1(const CharSumGrid& g) {
  CharSumReport rep{"lemma5.1", detail::grid_label(g)};
  for (i64 p : g.primes)
    for (int m = 1; m <= g.max_m; ++m)
      for (int r = 1; r <= m; ++r) {
        std::mt19937_64 rng(detail::cell_seed(g.seed, p, m, r));
        for (int s = 0; s < g.samples; ++s) {
          auto ds = detail::random_units(rng, m, p), dt = detail::random_units(rng, r, p);
          SymMatModN S = detail::diag_mat(ds, p), T = detail::diag_mat(dt, p);
          Integer b = count_A_brute(S, T);
          Rational c = count_A_closed(S, T);
          bool pm = true;
          std::string printed = "-";
          if (r == 1) {
            Rational d = count_A_display(S, dt[0]);
            printed = to_fraction_string(d);
            pm = d == b;
          }
          rep.record("p=" + std::to_string(p) + " S=diag(" + detail::join_ints(ds) + ") T=diag(" +
                         detail::join_ints(dt) + ")",
                     b.get_str(), printed, to_fraction_string(c), c == b, pm);
        }
      }
  return rep;
}

// the documented display discrepancy at S = 1_m, c = 1
struct DisplayCheck {
  int m;
  i64 p;
  Integer brute;
  Rational general, display;
};
inline std::vector<DisplayCheck> lemma_5_1_display_checks() {
  std::vector<DisplayCheck> out;
  for (auto [m, p] : std::vector<std::pair<int, i64>>{{1, 3}, {3, 3}}) {
    SymMatModN S = SymMatModN::identity(m, p), T = SymMatModN::identity(1, p);
    out.push_back({m, p, count_A_brute(S, T), count_A_closed(S, T), count_A_display(S, 1)});
  }
  return out;
}

// count_R = gamma * count_M for every unit diagonal A and every c
inline CharSumReport run_prop_5_2(const std::vector<std::pair<int, i64>>& cells, const Budget& budget = {}) {
  std::string label;
  for (auto [m, p] : cells) label += (label.empty() ? "" : ",") + ("(m=" + std::to_string(m) + ",p=" + std::to_string(p) + ")");
  CharSumReport rep{"prop5.2", label};
  for (auto [m, p] : cells) {
    auto table = det1_diagonal_table(m, p, budget);
    Rational gc = gamma_const(m, p, GammaMode::corrected), gp = gamma_const(m, p, GammaMode::printed);
    std::optional<Rational> ratio;
    bool constant = true;
    i64 total = nt::ipow(p - 1, m);
    for (i64 code = 0; code < total; ++code) {
      std::vector<i64> d(m);
      i64 t = code;
      for (auto& x : d) {
        x = 1 + t % (p - 1);
        t /= p - 1;
      }
      auto R = sl_trace_histogram_prime(detail::diag_mat(d, p), budget);
      auto M = count_M_histogram(d, p, table);
      for (i64 c = 0; c < p; ++c) {
        if (M[c]) {
          Rational q = rat(R[c], M[c]);
          if (!ratio) ratio = q;
          else if (*ratio != q) constant = false;
        }
        std::string in = "m=" + std::to_string(m) + " p=" + std::to_string(p) + " A=diag(" + detail::join_ints(d) +
                         ") c=" + std::to_string(c);
        rep.record(in, std::to_string(R[c]), to_fraction_string(gp * M[c]), to_fraction_string(gc * M[c]),
                   gc * M[c] == R[c], gp * M[c] == R[c]);
      }
    }
    rep.notes.push_back("m=" + std::to_string(m) + " p=" + std::to_string(p) + ": ratio " +
                        (ratio ? to_fraction_string(*ratio) : std::string("undefined")) +
                        (constant ? " constant" : " NOT constant") + ", gamma corrected " + to_fraction_string(gc) +
                        ", printed " + to_fraction_string(gp));
    if (!constant || !ratio || *ratio != gc) rep.mismatches.push_back({"ratio m=" + std::to_string(m), ratio ? to_fraction_string(*ratio) : "-", to_fraction_string(gp), to_fraction_string(gc)});
  }
  return rep;
}

// I_{eta,S,c} brute against the closed branches, plus the scaling corollary
inline CharSumReport run_lemma_5_3(const CharSumGrid& g) {
  CharSumReport rep{"lemma5.3", detail::grid_label(g)};
  for (i64 p : g.primes) {
    CharGroup G(p);
    for (int l = 1; l <= g.max_m; ++l) {
      std::mt19937_64 rng(detail::cell_seed(g.seed, p, l, 53));
      for (int s = 0; s < g.samples; ++s) {
        std::vector<i64> d(l);
        for (auto& x : d) x = static_cast<i64>(rng() % p);
        SymMatModN S = detail::diag_mat(d, p);
        int r = rank_det_mod_p(S).rank;
        for (auto& eta : G.chars()) {
          if (eta.is_trivial() || (r % 2 && eta.pow(2).is_trivial())) continue;
          for (i64 c = 0; c < p; ++c) {
            CycloNum b = quad_char_sum_brute(eta, S, c), cl = quad_char_sum_closed(eta, S, c);
            std::string in = "p=" + std::to_string(p) + " eta=" + eta.descriptor() + " S=diag(" + detail::join_ints(d) +
                             ") c=" + std::to_string(c);
            rep.record(in, b.to_string(), cl.to_string(), cl.to_string(), b == cl, b == cl);
            if (c != 0) {
              i64 dd = 1 + static_cast<i64>(rng() % (p - 1));
              CycloNum scaled = quad_char_sum_brute(eta, S, nt::mulmod(c, dd, p));
              CycloNum pred = eta.value(dd) * CycloNum(r % 2 ? legendre(dd, p) : 1) * b;
              rep.record(in + " scaled by " + std::to_string(dd), scaled.to_string(), pred.to_string(), pred.to_string(),
                         scaled == pred, scaled == pred);
            }
          }
        }
      }
    }
  }
  return rep;
}

// bordered determinant sums: brute against both sign variants
inline CharSumReport run_prop_5_4(const CharSumGrid& g) {
  CharSumReport rep{"prop5.4", detail::grid_label(g)};
  for (i64 p : g.primes) {
    CharGroup G(p);
    for (int l = 2; l <= std::max(2, g.max_m); ++l) {
      std::mt19937_64 rng(detail::cell_seed(g.seed, p, l, 54));
      for (int s = 0; s < g.samples; ++s) {
        SymMatModN Z1 = s == 0 ? SymMatModN(l - 1, p) : detail::random_sym(rng, l - 1, p);
        for (auto& eta : G.chars()) {
          if (eta.pow(2).is_trivial()) continue;
          for (i64 z = 0; z < p; ++z) {
            CycloNum b = bordered_det_sum_brute(eta, Z1, z);
            CycloNum pr = bordered_det_sum_closed(eta, Z1, z, Variant::printed);
            CycloNum co = bordered_det_sum_closed(eta, Z1, z, Variant::corrected);
            rep.record("p=" + std::to_string(p) + " eta=" + eta.descriptor() + " Z1=" + Z1.to_string() +
                           " z=" + std::to_string(z),
                       b.to_string(), pr.to_string(), co.to_string(), b == co, b == pr);
          }
        }
      }
    }
  }
  return rep;
}

// I_m and J_m: brute histograms against the closed form and the recursion
inline std::vector<CharSumReport> run_prop_5_7_5_8(const CharSumGrid& g) {
  CharSumReport ri{"prop5.7", detail::grid_label(g)}, rj{"prop5.8", detail::grid_label(g)};
  for (i64 p : g.primes) {
    auto chars = CharGroup(p).chars();
    for (int m = 1; m <= g.max_m; ++m) {
      DetTraceHistogram H(m, p, g.budget);
      for (auto& chi : chars) {
        if (chi.pow(2).is_trivial()) continue;
        for (auto& eta : chars) {
          if (eta.is_trivial()) continue;
          std::string in = "p=" + std::to_string(p) + " m=" + std::to_string(m) + " chi=" + chi.descriptor() +
                           " eta=" + eta.descriptor();
          CycloNum ib = H.sum(chi, eta, false), jb = H.sum(chi, eta, true);
          CycloNum ip = Im_closed(chi, eta, m, Variant::printed), ic = Im_closed(chi, eta, m, Variant::corrected);
          CycloNum jp = Jm_recursive(chi, eta, m, Variant::printed), jc = Jm_recursive(chi, eta, m, Variant::corrected);
          ri.record(in, ib.to_string(), ip.to_string(), ic.to_string(), ib == ic, ib == ip);
          rj.record(in, jb.to_string(), jp.to_string(), jc.to_string(), jb == jc, jb == jp);
        }
      }
    }
  }
  return {ri, rj};
}

// J_m(chi rho^i, chi): brute up to brute_m, the recursion up to max_m
inline CharSumReport run_thm_5_9(const CharSumGrid& g, int brute_m) {
  CharSumReport rep{"thm5.9", detail::grid_label(g) + ", brute m <= " + std::to_string(brute_m)};
  for (i64 p : g.primes) {
    auto chars = CharGroup(p).chars();
    DirichletChar rho = DirichletChar::jacobi_char(p);
    for (int m = 1; m <= g.max_m; ++m) {
      std::optional<DetTraceHistogram> H;
      if (m <= brute_m) H.emplace(m, p, g.budget);
      for (auto& chi : chars) {
        if (chi.pow(2).is_trivial()) continue;
        for (int i = 0; i < 2; ++i) {
          DirichletChar ci = i ? chi * rho : chi;
          CycloNum ref = H ? H->sum(ci, chi, true) : Jm_recursive(ci, chi, m, Variant::corrected);
          CycloNum pr = Jm_twisted(chi, i, m, Variant::printed), co = Jm_twisted(chi, i, m, Variant::corrected);
          rep.record("p=" + std::to_string(p) + " m=" + std::to_string(m) + " i=" + std::to_string(i) +
                         " chi=" + chi.descriptor() + (H ? " (brute)" : " (vs recursion)"),
                     ref.to_string(), pr.to_string(), co.to_string(), ref == co, ref == pr);
        }
      }
    }
  }
  return rep;
}

// J(chi, rho) J(chi rho, chi rho) = (-1/p) conj(chi)(4) p
inline CharSumReport run_prop_5_10(const std::vector<i64>& primes) {
  CharSumReport rep{"prop5.10", "primes " + detail::join_ints(primes)};
  for (i64 p : primes)
    for (auto& chi : CharGroup(p).chars()) {
      if (chi.pow(2).is_trivial()) continue;
      auto v = prop_5_10(chi);
      rep.record("p=" + std::to_string(p) + " chi=" + chi.descriptor(), v.lhs.to_string(), v.rhs.to_string(),
                 v.rhs.to_string(), v.lhs == v.rhs, v.lhs == v.rhs);
    }
  return rep;
}

// J_m(chi) != 0 when chi^2 is primitive
inline CharSumReport run_jm_nonvanishing(const std::vector<i64>& moduli, int max_m) {
  CharSumReport rep{"jm_nonzero", "moduli " + detail::join_ints(moduli) + ", m <= " + std::to_string(max_m)};
  for (i64 N : moduli)
    for (auto& chi : CharGroup(N).chars()) {
      if (!chi.pow(2).is_primitive()) continue;
      for (int m = 1; m <= max_m; ++m) {
        CycloNum v = Jm_chi(chi, m);
        rep.record("N=" + std::to_string(N) + " m=" + std::to_string(m) + " chi=" + chi.descriptor(), v.to_string(),
                   "nonzero", "nonzero", !v.is_zero(), !v.is_zero());
      }
    }
  return rep;
}

struct HsumGrid {
  std::vector<i64> moduli;
  std::vector<int> sizes;
  int forms = 9;
  std::uint64_t seed = 20240601;
  int sym_from_m = 4;  // brute_sym for m >= this, brute_sl below
  bool cross_routes = false;  // also compare brute_sl with brute_sym below sym_from_m
  Budget budget;
};

// h(A, chi): brute against the closed evaluation
inline CharSumReport run_thm_5_5(const HsumGrid& g, long* forms_used = nullptr, long* zero_confirmed = nullptr) {
  CharSumReport rep{"thm5.5", "moduli " + detail::join_ints(g.moduli) + ", forms per cell " + std::to_string(g.forms)};
  Det1TableCache cache(g.budget);
  long nforms = 0, zeros = 0, printed6_matches = 0, route_checks = 0;
  HsumOptions printed{GammaMode::printed, HsumForm::printed_conj}, printed6{GammaMode::printed, HsumForm::printed_plain};
  HsumOptions derived{GammaMode::corrected, HsumForm::derived};
  for (i64 N : g.moduli)
    for (int m : g.sizes) {
      std::mt19937_64 rng(detail::cell_seed(g.seed, N, m, 55));
      auto chars = CharGroup(N).chars();
      for (int f = 0; f < g.forms; ++f) {
        SymMatModN A = detail::random_sym(rng, m, N);
        bool unit = true;
        for (auto [p, e] : nt::factorize(N))
          if (det_mod_p(reduce_mod(A, p)) == 0) unit = false;
        if (!unit) {
          --f;
          continue;
        }
        ++nforms;
        std::vector<long> hist;
        if (m < g.sym_from_m) hist = sl_trace_histogram(A, g.budget);
        for (auto& chi : chars) {
          if (!chi.is_primitive()) continue;
          if (m % 2) {
            bool ok = true;
            for (auto [p, e] : nt::factorize(N))
              if (chi.local_component(p).pow(2).is_trivial()) ok = false;
            if (!ok) continue;
          }
          CycloNum b = m < g.sym_from_m ? char_sum_from_histogram(chi, hist) : h_sum_brute_sym(A, chi, cache);
          CycloNum c = h_sum_closed(A, chi, derived);
          CycloNum pr = h_sum_closed(A, chi, printed);
          CycloNum pr6 = h_sum_closed(A, chi, printed6);
          if (g.cross_routes && m < g.sym_from_m) {
            CycloNum s = h_sum_brute_sym(A, chi, cache);
            ++route_checks;
            if (s != b)
              rep.mismatches.push_back({"routes N=" + std::to_string(N) + " chi=" + chi.descriptor() + " A=" + A.to_string(),
                                        b.to_string(), s.to_string(), s.to_string()});
          }
          if (c.is_zero() && b.is_zero()) ++zeros;
          if (b == pr6) ++printed6_matches;
          std::string in = "N=" + std::to_string(N) + " m=" + std::to_string(m) + " chi=" + chi.descriptor() +
                           " A=" + A.to_string();
          rep.record(in, b.to_string(), pr.to_string() + " | unconjugated printed " + pr6.to_string(), c.to_string(), b == c,
                     b == pr);
        }
      }
    }
  rep.notes.push_back("forms " + std::to_string(nforms) + ", vanishing confirmed " + std::to_string(zeros));
  if (g.cross_routes) rep.notes.push_back("brute_sl against brute_sym checks " + std::to_string(route_checks));
  rep.notes.push_back("unconjugated printed variant matches " + std::to_string(printed6_matches) + "/" +
                      std::to_string(rep.grid_size));
  if (forms_used) *forms_used = nforms;
  if (zero_confirmed) *zero_confirmed = zeros;
  return rep;
}

}  // namespace kmlift
