// Runs the twelve acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance --fixtures <calibration.json>

#include "mixnorm/calibration.hpp"
#include "mixnorm/errors.hpp"
#include "mixnorm/experiments.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace mixnorm;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  // Folds every failing check of a report into the outcome.
  void absorb(const ExperimentReport& r) {
    for (const auto& [k, v] : r.verdicts)
      if (v == "FAIL") require(false, r.experiment_id + ":" + k);
  }
};

Config cfg(std::initializer_list<std::pair<const char*, std::string>> kv) {
  Config c;
  for (const auto& [k, v] : kv) c.set(k, v);
  return c;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

double monomial_closed_form(double n, double q, double a) {
  if (std::isinf(q)) return std::pow(a, a) * std::pow(n, n) / std::pow(n + a, n + a);
  return std::pow(a * q * std::beta(a * q, n * q + 1.0), 1.0 / q);
}

}  // namespace

int main(int argc, char** argv) {
  std::string fixtures_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--fixtures") fixtures_path = argv[i + 1];
  if (fixtures_path.empty()) {
    std::cerr << "usage: acceptance --fixtures <calibration.json>\n";
    return 2;
  }
  const auto fixtures = load_fixtures(fixtures_path);

  struct Criterion {
    int id;
    std::string name;
    std::function<void(Outcome&)> run;
  };

  const std::vector<Criterion> criteria{
      {1, "Fejer block identities for N in {4,16,64}, under 5 s",
       [](Outcome& o) {
         const auto t0 = std::chrono::steady_clock::now();
         for (const char* N : {"4", "16", "64"}) o.absorb(run_experiment("fejer-check", cfg({{"N", N}})));
         const double ms = ms_since(t0);
         o.require(ms < 5000.0, "runtime " + format_double(ms) + " ms");
       }},
      {2, "monomial norms against closed forms",
       [](Outcome& o) {
         double worst = 0.0;
         for (double a : {0.5, 1.0, 2.0})
           for (double q : {1.0, 2.0, kInf})
             for (int n = 0; n <= 8; ++n) {
               const double v = mixed_norm(monomial(static_cast<std::size_t>(n)), SpaceParams(2.0, q, a));
               worst = std::max(worst, std::abs(v / monomial_closed_form(n, q, a) - 1.0));
             }
         o.require(worst <= 1e-8, "max relative error " + format_double(worst));
         for (double q : {1.0, 2.0, kInf}) {
           const double one = mixed_norm(constant(1.0), SpaceParams(2.0, q, 1.0));
           o.require(std::abs(one - 1.0) <= 1e-9, "||1|| = " + format_double(one));
         }
       }},
      {3, "subordination and composition bound on seeded pairs, under 60 s",
       [](Outcome& o) {
         const auto t0 = std::chrono::steady_clock::now();
         o.absorb(run_experiment("subordination", cfg({{"pairs", "200"}})));
         o.absorb(run_experiment("co-bound", cfg({{"pairs", "100"}, {"q", "inf"}})));
         const double ms = ms_since(t0);
         o.require(ms < 60000.0, "runtime " + format_double(ms) + " ms");
       }},
      {4, "flow fidelity, semiflow law, Koenigs residuals, generator recovery",
       [](Outcome& o) {
         o.absorb(run_experiment("flow-check"));
         o.absorb(run_experiment("koenigs"));
       }},
      {5, "strong continuity for q < inf on three semigroups",
       [](Outcome& o) { o.absorb(run_experiment("continuity")); }},
      {6, "failure of strong continuity at q = inf",
       [&fixtures](Outcome& o) {
         const auto& e = fixtures.at("obstruction");
         const double th = e.constants.at("threshold");
         o.require(e.constants.at("min_ratio") >= th, "oracle ratio below threshold");
         o.absorb(run_experiment("no-strong-continuity", cfg({{"threshold", format_double(th)}})));
       }},
      {7, "maximal-subspace classification",
       [](Outcome& o) {
         o.absorb(run_experiment("classify-maximal", cfg({{"spec", "dilation,interior-cayley,boundary-const"}})));
       }},
      {8, "T_g classification", [](Outcome& o) { o.absorb(run_experiment("tg-classify")); }},
      {9, "lacunary l_inf embedding two-sided bounds, under 120 s",
       [&fixtures_path](Outcome& o) {
         const auto t0 = std::chrono::steady_clock::now();
         o.absorb(run_experiment("embed-linfty", cfg({{"K", "10"}, {"L", "5"}, {"fixtures", fixtures_path}})));
         const double ms = ms_since(t0);
         o.require(ms < 120000.0, "runtime " + format_double(ms) + " ms");
       }},
      {10, "X_{nu,beta} bounds and h_n approximation",
       [&fixtures_path](Outcome& o) {
         o.absorb(run_experiment("xnu-embed", cfg({{"fixtures", fixtures_path}})));
         o.absorb(run_experiment("approx-E"));
       }},
      {11, "exponential membership",
       [](Outcome& o) {
         o.absorb(run_experiment("exp-membership", cfg({{"g", "log"}})));
         o.absorb(run_experiment("exp-membership", cfg({{"g", "z"}})));
       }},
      {12, "bit-identical re-runs",
       [](Outcome& o) {
         for (const char* id : {"fejer-check", "monomial-norms", "subordination", "co-bound", "flow-check", "koenigs",
                                "hl-derivative", "exp-membership", "classify-maximal"}) {
           const Config c = cfg({{"seed", "12345"}});
           const auto a = run_experiment(id, c);
           const auto b = run_experiment(id, c);
           o.require(a.same_as(b), std::string(id) + " differs between runs");
           o.require(to_json_string(report_from_json(to_json_string(a))) == to_json_string(a),
                     std::string(id) + " JSON round trip");
         }
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double ms = ms_since(t0);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " ("
              << static_cast<long long>(ms) << " ms)";
    for (const auto& n : o.notes) std::cout << "\n    " << n;
    std::cout << std::endl;
    if (!o.ok) ++failures;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
