// Acceptance checks. Usage: acceptance [criterion...]; with no argument every
// criterion runs. Prints one PASS/FAIL line per criterion and exits nonzero
// when any selected criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "shapegen/automaton.hpp"
#include "shapegen/bench.hpp"
#include "shapegen/diagnostics.hpp"
#include "shapegen/genfun.hpp"
#include "shapegen/parser.hpp"
#include "shapegen/pipeline.hpp"
#include "shapegen/point_sampler.hpp"
#include "shapegen/word_sampler.hpp"

using namespace shapegen;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string spec(const std::string& name) { return std::string(SHAPEGEN_SPEC_DIR) + "/" + name; }

fs::path workdir() {
  static const fs::path p = [] {
    fs::path d = fs::temp_directory_path() / "shapegen_acceptance";
    fs::create_directories(d);
    return d;
  }();
  return p;
}

struct Run {
  int code = -1;
  std::string out, err;
};

Run cli(const std::string& args, const std::string& tag) {
  const fs::path out = workdir() / (tag + ".out"), err = workdir() / (tag + ".err");
  const std::string cmd = "'" SHAPEGEN_CLI "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

// Collects sub-checks; the criterion passes when all of them do.
class Report {
 public:
  void check(bool ok, const std::string& what) {
    std::cout << "  " << (ok ? "ok   " : "FAIL ") << what << '\n';
    all_ = all_ && ok;
  }
  void info(const std::string& what) { std::cout << "  " << what << '\n'; }
  bool passed() const { return all_; }

 private:
  bool all_ = true;
};

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::vector<double> to_doubles(const json& a) {
  std::vector<double> out;
  for (const auto& v : a) out.push_back(v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>());
  return out;
}

// -- 1 ----------------------------------------------------------------------

void pulse_generating_function(Report& rep) {
  const auto t0 = Clock::now();
  const Run g = cli("genfun --spec " + spec("pulse.sexp"), "c1_genfun");
  const Run t = cli("tune --spec " + spec("pulse.sexp") + " --mean-length 15", "c1_tune");
  const double elapsed = seconds_since(t0);
  rep.check(g.code == 0 && t.code == 0, "genfun and tune exit 0");
  if (g.code != 0 || t.code != 0) return;
  const json gj = json::parse(g.out), tj = json::parse(t.out);
  rep.check(to_doubles(gj["numerator"]) == std::vector<double>{0, 0, 0, 0, 0, 1, 1}, "numerator z^5 + z^6");
  rep.check(to_doubles(gj["denominator"]) == std::vector<double>{1, 0, 0, 0, -1, -1}, "denominator 1 - z^4 - z^5");
  const double rconv = gj["rconv"].get<double>();
  rep.check(std::abs(rconv - 0.85667) <= 1e-4, "Rconv " + fmt(rconv, 10) + " within 1e-4 of 0.85667");
  const double z = tj["z"].get<double>();
  rep.check(std::abs(z - 0.78631) <= 1e-4, "z(N=15) " + fmt(z, 10) + " within 1e-4 of 0.78631");
  rep.check(elapsed < 1.0, "runtime " + fmt(elapsed, 3) + " s < 1 s (both commands)");
}

// -- 2 ----------------------------------------------------------------------

void boltzmann_law(Report& rep) {
  const auto t0 = Clock::now();
  const ShapeExpr e = parse_spec(read_file(spec("pulse.sexp")));
  const RationalFunction g = generating_function(e.regex);
  const double z = 0.78631;
  const auto oracle = build_oracle(e.regex, z);
  Rng rng(derive_seed(2, seed_stream::words));
  WordStats stats;
  for (int i = 0; i < 100'000; ++i) stats.add(sample_atoms(oracle, rng));
  const double mean = stats.mean();
  rep.check(std::abs(mean - 15.0) <= 0.5, "mean length " + fmt(mean) + " in 15 +- 0.5 over 1e5 words");
  const ChiSquare law = length_law_test(stats, g, z);
  rep.check(law.p_value > 0.01, "length law chi-square " + fmt(law.statistic) + " on " + std::to_string(law.dof) +
                                    " dof, p = " + fmt(law.p_value) + " > 0.01");

  const auto tiny = build_oracle(e.regex, 1e-6);
  const std::vector<std::string> shortest = oracle::word("ABCFA");
  int hits = 0;
  for (int i = 0; i < 10'000; ++i) hits += sample_atoms(tiny, rng) == shortest;
  rep.check(hits / 1e4 > 0.999, "ABCFA frequency " + fmt(hits / 1e4) + " > 0.999 at z = 1e-6");
  const double elapsed = seconds_since(t0);
  rep.check(elapsed < 30.0, "runtime " + fmt(elapsed, 3) + " s < 30 s");
}

// -- 3 ----------------------------------------------------------------------

void counting_oracle(Report& rep) {
  const auto t0 = Clock::now();
  Rng rng(3);
  int tested = 0, agreed = 0;
  while (tested < 10) {
    const std::size_t alphabet = 2 + rng.index(5);  // 2..6 atoms
    const Regex r = oracle::random_regex(rng, alphabet, 4);
    if (check_ambiguity(r).ambiguous) continue;
    const auto lang = oracle::derivations(r, 10);
    if (!lang) continue;
    const auto expected = oracle::counts_by_length(*lang, 10);
    const auto got = taylor_coefficients(generating_function(r), 10);
    bool same = got.size() == expected.size();
    for (std::size_t n = 0; same && n < got.size(); ++n) same = got[n] == BigInt(std::to_string(expected[n]));
    rep.check(same, print_regex(r));
    ++tested;
    agreed += same;
  }
  const double elapsed = seconds_since(t0);
  rep.info(std::to_string(agreed) + "/10 regexes agree up to degree 10");
  rep.check(elapsed < 10.0, "runtime " + fmt(elapsed, 3) + " s < 10 s");
}

// -- 4 ----------------------------------------------------------------------

void hit_and_run_correctness(Report& rep) {
  const std::vector<std::string> specs{"pulse.sexp", "ecg.sexp", "ring2d.sexp", "ring3d.sexp"};
  const std::vector<Variant> variants{Variant::rejection, Variant::hr, Variant::hr_shrink, Variant::cdhr,
                                      Variant::cdhr_shrink};
  std::uint64_t emitted = 0, violations = 0, shrink_violations = 0, shrink_rejections = 0;
  for (std::size_t si = 0; si < specs.size(); ++si) {
    const LoadedSpec s = load_spec(read_file(spec(specs[si])));
    // rejection is only practical on the rings; on the epsilon-thin pulse and
    // ECG sets its acceptance is far below 1e-7
    const bool ring = specs[si].rfind("ring", 0) == 0;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      const Variant v = variants[vi];
      if (v == Variant::rejection && !ring) continue;
      SamplerConfig cfg;
      cfg.variant = v;
      // without shrinking, an axis or random line crosses a 2 eps band of the
      // pulse constraint in a sliver of about eps / 900 of its length
      cfg.max_line_rejects = 100'000'000;
      cfg.seed = derive_seed(4, seed_stream::chain, si * 16 + vi);
      PsoConfig pso;
      pso.seed = derive_seed(4, seed_stream::pso, si * 16 + vi);
      const Valuation x0 = v == Variant::rejection ? Valuation{} : find_initial(s.space, pso);
      Chain chain(s.space, cfg, x0);
      std::uint64_t step = ~0ULL;
      double width = 0.0;
      if (shrinking(v)) {
        chain.set_trace([&](std::uint64_t k, double, const Interval& line, bool accepted) {
          if (k == step) {
            ++shrink_rejections;
            if (!(line.width() < width)) ++shrink_violations;
          }
          step = accepted ? ~0ULL : k;
          width = line.width();
        });
      }
      const std::size_t n = ring ? 10'000 : !shrinking(v) && specs[si] == "pulse.sexp" ? 1'000 : 5'000;
      std::size_t bad = 0;
      for (const auto& x : chain.sample(n)) bad += !s.space.contains(x);
      emitted += n;
      violations += bad;
      rep.info(specs[si] + " " + std::string(name(v)) + ": " + std::to_string(n) + " samples, acceptance " +
               fmt(100 * chain.stats().acceptance_rate(), 4) + "%, " + std::to_string(bad) + " outside");
    }
  }
  rep.check(emitted >= 100'000, std::to_string(emitted) + " samples emitted (>= 1e5)");
  rep.check(violations == 0, std::to_string(violations) + " membership violations");
  rep.check(shrink_rejections > 0 && shrink_violations == 0,
            "shrinking interval strictly decreased after all " + std::to_string(shrink_rejections) +
                " in-step rejections");
}

// -- 5 ----------------------------------------------------------------------

void ring_uniformity(Report& rep) {
  const auto t0 = Clock::now();
  const RingSpec ring{2, 1.0, 0.9, 1.0};
  BenchOptions opts;
  opts.burn_in = 1000;
  opts.thin = 10;
  const auto chain = run_bench(ring, {Variant::hr_shrink}, 1000, 1, 0, opts, true);
  const auto ref = run_bench(ring, {Variant::rejection}, 1000, 1, 1, opts, true);
  if (chain[0].status != "ok" || ref[0].status != "ok") {
    rep.check(false, "sampling failed: " + chain[0].message + ref[0].message);
    return;
  }
  const UniformityReport u = uniformity_report(chain[0].points, ring, 36, ref[0].points);
  rep.check(u.angular_p > 0.01, "angular chi-square p = " + fmt(u.angular_p) + " > 0.01 (36 bins)");
  for (std::size_t d = 0; d < u.per_dim_ks.size(); ++d)
    rep.check(u.per_dim_ks[d] < u.ks_critical, "x" + std::to_string(d + 1) + " KS vs rejection " +
                                                   fmt(u.per_dim_ks[d]) + " < " + fmt(u.ks_critical));
  rep.info("radius KS p = " + fmt(u.radius_p));
  const double elapsed = seconds_since(t0);
  rep.check(elapsed < 60.0, "runtime " + fmt(elapsed, 3) + " s < 60 s");
}

// -- 6 and 7 ----------------------------------------------------------------

double mean_acceptance(const std::vector<BenchSummary>& sums, Variant v) {
  for (const auto& s : sums)
    if (s.variant == v) return s.mean_acceptance;
  return NAN;
}

void thin_ring(Report& rep) {
  const auto t0 = Clock::now();
  const std::vector<Variant> vs{Variant::hr, Variant::hr_shrink, Variant::cdhr, Variant::cdhr_shrink};
  for (double c2 : {0.5, 0.75, 0.9, 0.99}) {
    const RingSpec ring{3, 1.0, c2, 1.0};
    const auto sums = summarize(run_bench(ring, vs, 1000, 5, 7));
    const double hr = mean_acceptance(sums, Variant::hr), hrs = mean_acceptance(sums, Variant::hr_shrink);
    const double cd = mean_acceptance(sums, Variant::cdhr), cds = mean_acceptance(sums, Variant::cdhr_shrink);
    rep.check(hrs >= hr, "c2 = " + fmt(c2) + ": hr_shrink " + fmt(100 * hrs, 4) + "% >= hr " + fmt(100 * hr, 4) + "%");
    rep.check(cds >= cd,
              "c2 = " + fmt(c2) + ": cdhr_shrink " + fmt(100 * cds, 4) + "% >= cdhr " + fmt(100 * cd, 4) + "%");
    if (c2 == 0.99) rep.check(hrs > 0.10, "c2 = 0.99: hr_shrink acceptance " + fmt(100 * hrs, 4) + "% > 10%");
  }
  const double elapsed = seconds_since(t0);
  rep.check(elapsed < 300.0, "runtime " + fmt(elapsed, 3) + " s < 300 s");
}

void box_sweep(Report& rep) {
  const auto t0 = Clock::now();
  for (double c : {1.0, 5.0, 10.0, 20.0}) {
    const RingSpec ring{3, 1.0, 0.9, c};
    const auto res = run_bench(ring, {Variant::rejection, Variant::hr_shrink}, 1000, 5, 8);
    std::uint64_t proposals = 0, accepted = 0;
    for (const auto& r : res)
      if (r.variant == Variant::rejection && r.status == "ok") {
        proposals += r.proposals;
        accepted += r.accepted;
      }
    const double p = ring_volume_ratio(ring);
    const double observed = static_cast<double>(accepted) / static_cast<double>(proposals);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(proposals));
    rep.check(proposals > 0 && std::abs(observed - p) <= 3 * se,
              "c = " + fmt(c) + ": rejection " + fmt(observed) + " vs analytic " + fmt(p) + " (" +
                  fmt(std::abs(observed - p) / se, 3) + " SE)");
    const double hrs = mean_acceptance(summarize(res), Variant::hr_shrink);
    if (c == 20.0) rep.check(hrs > 0.10, "c = 20: hr_shrink acceptance " + fmt(100 * hrs, 4) + "% > 10%");
    else rep.info("c = " + fmt(c) + ": hr_shrink acceptance " + fmt(100 * hrs, 4) + "%");
  }
  const double elapsed = seconds_since(t0);
  rep.check(elapsed < 300.0, "runtime " + fmt(elapsed, 3) + " s < 300 s");
}

// -- 8 ----------------------------------------------------------------------

void ball_100d(Report& rep) {
  const RingSpec ball{100, 1.0, 0.0, 1.0};
  const auto res = run_bench(ball, {Variant::cdhr_shrink}, 100, 1, 9);
  rep.check(res[0].status == "ok" && res[0].samples == 100, "100 samples from the 100-D ball: " + res[0].status);
  rep.check(res[0].wall_time < 120.0, "wall time " + fmt(res[0].wall_time, 3) + " s < 120 s (acceptance " +
                                          fmt(100 * res[0].acceptance_rate, 4) + "%)");
}

void rejection_budget(Report& rep) {
  const RingSpec ball{4, 1.0, 0.0, 1.0};
  BenchOptions opts;
  opts.rejection_max_dims = 4;
  opts.max_rejection_trials = 1'000'000;
  const auto res = run_bench(ball, {Variant::rejection}, 100, 1, 10, opts);
  rep.info("n = 4: 100 rejection samples used " + std::to_string(res[0].proposals) + " trials (" + res[0].status +
           "), analytic acceptance " + fmt(ring_volume_ratio(ball)));
  std::size_t n = 4;
  while (100.0 / ring_volume_ratio({n, 1.0, 0.0, 1.0}) <= 1e6) ++n;
  rep.info("the 1e6-trial budget for 100 samples is first exceeded analytically at n = " + std::to_string(n));
  rep.check(res[0].status != "ok" || res[0].proposals > 1'000'000, "rejection exceeds a 1e6-trial budget at n = 4");
}

// -- 9 ----------------------------------------------------------------------

void end_to_end(Report& rep) {
  const fs::path pulse_out = workdir() / "pulse";
  fs::remove_all(pulse_out);
  auto t0 = Clock::now();
  const Run p = cli("sample --spec " + spec("pulse.sexp") + " --count 10 --mean-length 15 --seed 1 --out " +
                        pulse_out.string(),
                    "c9_pulse");
  rep.check(p.code == 0, "pulse pipeline exit " + std::to_string(p.code) + " in " + fmt(seconds_since(t0), 3) + " s");
  if (p.code == 0) {
    const LoadedSpec s = load_spec(read_file(spec("pulse.sexp")));
    const double eps = s.space.epsilon();
    std::istringstream lines(read_file(pulse_out / "samples.jsonl"));
    std::string line;
    std::size_t records = 0, satisfied = 0;
    double worst = 0.0;
    while (std::getline(lines, line)) {
      const json j = json::parse(line);
      const auto word = j["word"].get<std::vector<std::string>>();
      const auto val = j["valuation"].get<std::map<std::string, double>>();
      for (double jump : boundary_jumps(s.expr, word, val)) worst = std::max(worst, jump);
      satisfied += satisfies_relaxed(s.expr.constraint, val, eps);
      ++records;
    }
    std::size_t signals = 0;
    for (const auto& f : fs::directory_iterator(pulse_out / "signals")) signals += f.path().extension() == ".csv";
    rep.check(records == 10 && signals == 10, std::to_string(records) + " records, " + std::to_string(signals) + " signals");
    rep.check(worst < 2 * eps, "largest boundary jump " + fmt(worst) + " < 2 eps = " + fmt(2 * eps));
    rep.check(satisfied == records, std::to_string(satisfied) + "/" + std::to_string(records) +
                                        " re-checked valuations satisfy the constraint");
  }

  const fs::path ecg_out = workdir() / "ecg";
  fs::remove_all(ecg_out);
  t0 = Clock::now();
  const Run e = cli("sample --spec " + spec("ecg.sexp") + " --count 100 --burn-in 1000 --z 0.5 --seed 1 --out " +
                        ecg_out.string(),
                    "c9_ecg");
  const double elapsed = seconds_since(t0);
  rep.check(e.code == 0, "ECG pipeline exit " + std::to_string(e.code) + (e.code ? ": " + e.err : ""));
  rep.check(elapsed < 600.0, "ECG runtime " + fmt(elapsed, 3) + " s < 600 s");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::pair<std::string, std::function<void(Report&)>>>> criteria{
      {"1", {"pulse generating function and tuning", pulse_generating_function}},
      {"2", {"Boltzmann length law", boltzmann_law}},
      {"3", {"generating function vs brute-force counts", counting_oracle}},
      {"4", {"hit-and-run membership and shrinking", hit_and_run_correctness}},
      {"5", {"2-D ring uniformity", ring_uniformity}},
      {"6", {"thin-ring acceptance", thin_ring}},
      {"7", {"box-size sweep", box_sweep}},
      {"8a", {"100-D ball with cdhr_shrink", ball_100d}},
      {"8b", {"rejection trial budget at n = 4", rejection_budget}},
      {"9", {"end-to-end pulse and ECG pipelines", end_to_end}},
  };
  std::vector<std::string> selected(argv + 1, argv + argc);
  bool all_passed = true;
  for (const auto& [id, entry] : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) continue;
    Report rep;
    const auto t0 = Clock::now();
    try {
      entry.second(rep);
    } catch (const std::exception& e) {
      rep.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (rep.passed() ? "PASS" : "FAIL") << " criterion " << id << ": " << entry.first << " ("
              << fmt(seconds_since(t0), 3) << " s)\n"
              << std::flush;
    all_passed = all_passed && rep.passed();
  }
  return all_passed ? 0 : 1;
}
