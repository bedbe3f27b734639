#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "kmlift/cli/suites.hpp"

namespace fs = std::filesystem;
using namespace kmlift;
using namespace kmlift::cli;

namespace {

struct Pass {
  std::map<int, SuiteOutcome> outcomes;
  std::map<int, double> seconds;
  std::map<int, std::string> errors;
};

Pass run_all(const std::set<int>& only, bool verbose) {
  FlagshipHolder H;
  Pass P;
  for (auto& s : acceptance_suites(H)) {
    if (!only.empty() && !only.count(s.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    try {
      P.outcomes[s.id] = s.run();
    } catch (const std::exception& e) {
      P.errors[s.id] = e.what();
      P.outcomes[s.id] = SuiteOutcome{false, std::string("error: ") + e.what(), Json{{"error", e.what()}}, ""};
    }
    P.seconds[s.id] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verbose) std::cerr << "  [" << s.id << "] " << s.name << " " << P.seconds[s.id] << " s\n";
  }
  return P;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmlift acceptance criteria"};
  std::string out = "acceptance_reports";
  std::vector<int> only_v;
  bool verbose = false;
  app.add_option("--out", out, "report directory");
  app.add_option("--only", only_v, "criteria to run (1-11); determinism covers the selection")->delimiter(',');
  app.add_flag("-v,--verbose", verbose, "per-suite timings on stderr");
  CLI11_PARSE(app, argc, argv);
  std::set<int> only(only_v.begin(), only_v.end());

  fs::create_directories(out);
  FlagshipHolder names_holder;
  auto suites = acceptance_suites(names_holder);

  Pass first = run_all(only, verbose);
  bool all = true;
  Json manifest{{"tool", "kmlift-acceptance"}, {"criteria", Json::array()}};
  for (auto& s : suites) {
    if (!first.outcomes.count(s.id)) continue;
    const auto& o = first.outcomes[s.id];
    double secs = first.seconds[s.id];
    bool in_time = s.limit_seconds == 0 || secs < s.limit_seconds;
    bool ok = o.ok && in_time;
    all = all && ok;
    char name[32];
    std::snprintf(name, sizeof name, "criterion_%02d", s.id);
    std::ofstream(fs::path(out) / (std::string(name) + ".json")) << o.report.dump(2) << "\n";
    std::ofstream(fs::path(out) / (std::string(name) + ".txt")) << o.text;
    std::cout << "criterion " << (s.id < 10 ? " " : "") << s.id << ": " << (ok ? "PASS" : "FAIL") << "  " << s.name
              << "  (" << o.summary << (in_time ? "" : "; over the runtime bound") << ", " << fixed(secs) << " s)"
              << std::endl;
    manifest["criteria"].push_back({{"id", s.id}, {"name", s.name}, {"pass", ok}, {"seconds", secs}});
  }

  Pass second = run_all(only, verbose);
  std::vector<int> differing;
  for (auto& [id, o] : first.outcomes)
    if (!second.outcomes.count(id) || second.outcomes[id].report.dump() != o.report.dump() ||
        second.outcomes[id].text != o.text)
      differing.push_back(id);
  bool det = differing.empty() && !first.outcomes.empty();
  all = all && det;
  std::string diff;
  for (int id : differing) diff += (diff.empty() ? "" : ",") + std::to_string(id);
  std::cout << "criterion 12: " << (det ? "PASS" : "FAIL") << "  determinism  (" << first.outcomes.size()
            << " suites rerun, " << (det ? "byte-identical reports" : "differing: " + diff) << ")" << std::endl;
  manifest["determinism"] = {{"pass", det}, {"differing", differing}};
  std::ofstream(fs::path(out) / "manifest.json") << manifest.dump(2) << "\n";
  return all ? 0 : 1;
}
