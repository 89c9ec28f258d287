#include "shapegen/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "shapegen/diagnostics.hpp"
#include "shapegen/error.hpp"
#include "shapegen/format.hpp"

namespace shapegen {

ParamSpace make_ring_space(const RingSpec& r) {
  if (r.n == 0) throw DomainError("ring dimension must be at least 1");
  if (!(r.c >= r.c1 && r.c1 > r.c2 && r.c2 >= 0.0))
    throw DomainError("ring needs c >= c1 > c2 >= 0 (got c=" + shortest(r.c) + ", c1=" + shortest(r.c1) +
                      ", c2=" + shortest(r.c2) + ")");
  std::vector<Constraint> parts;
  std::vector<std::string> names;
  Arith sum;
  for (std::size_t i = 1; i <= r.n; ++i) {
    names.push_back("x" + std::to_string(i));
    parts.push_back(cs::in(names.back(), -r.c, r.c));
    Arith sq = ar::pow(ar::param(names.back()), 2);
    sum = sum ? ar::add(sum, sq) : sq;
  }
  parts.push_back(cs::cmp(CmpOp::lt, sum, ar::number(r.c1 * r.c1)));
  parts.push_back(cs::cmp(CmpOp::gt, sum, ar::number(r.c2 * r.c2)));
  return compile(cs::all_of(parts), default_epsilon, names);
}

double ball_volume(std::size_t n, double r) {
  const double h = 0.5 * static_cast<double>(n);
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1.0)) * std::pow(r, static_cast<double>(n));
}

double ring_volume_ratio(const RingSpec& r) {
  return (ball_volume(r.n, r.c1) - ball_volume(r.n, r.c2)) / std::pow(2.0 * r.c, static_cast<double>(r.n));
}

std::vector<BenchResult> run_bench(const RingSpec& r, const std::vector<Variant>& variants, std::size_t samples,
                                   std::size_t repeats, std::uint64_t seed, const BenchOptions& opts,
                                   bool keep_points) {
  if (samples == 0) throw DomainError("samples must be at least 1");
  const ParamSpace space = make_ring_space(r);
  std::vector<BenchResult> out;
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      BenchResult res;
      res.variant = variants[vi];
      res.repeat = rep;
      if (res.variant == Variant::rejection && r.n > opts.rejection_max_dims) {
        res.status = "skipped";
        res.message = "rejection not run above " + std::to_string(opts.rejection_max_dims) + " dimensions";
        out.push_back(std::move(res));
        continue;
      }
      const std::uint64_t cell = (static_cast<std::uint64_t>(vi) << 16) + rep;
      SamplerConfig cfg;
      cfg.variant = res.variant;
      cfg.burn_in = opts.burn_in;
      cfg.thin = opts.thin;
      cfg.max_rejection_trials = opts.max_rejection_trials;
      cfg.seed = derive_seed(seed, seed_stream::bench, cell);
      PsoConfig pso = opts.pso;
      pso.seed = derive_seed(seed, seed_stream::pso, cell);
      PsoInitializer init(pso);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        ChainResult cr = run_chain(space, cfg, samples, &init);
        res.samples = cr.samples.size();
        res.proposals = cr.stats.proposals;
        res.accepted = cr.stats.accepted;
        res.acceptance_rate = cr.stats.acceptance_rate();
        if (keep_points) res.points = std::move(cr.samples);
      } catch (const InitializationError& e) {
        res.status = "init_failed";
        res.message = e.what();
      } catch (const ChainError& e) {
        res.status = "chain_failed";
        res.message = e.what();
        res.proposals = e.stats().proposals;
        res.accepted = e.stats().accepted;
        res.acceptance_rate = e.stats().acceptance_rate();
      }
      res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(res));
    }
  }
  return out;
}

std::vector<BenchSummary> summarize(const std::vector<BenchResult>& results) {
  std::vector<BenchSummary> out;
  for (const auto& res : results) {
    auto it = std::find_if(out.begin(), out.end(), [&](const BenchSummary& s) { return s.variant == res.variant; });
    if (it == out.end()) {
      out.push_back({res.variant});
      it = out.end() - 1;
    }
    if (res.status != "ok") continue;
    ++it->ok_repeats;
    it->mean_acceptance += res.acceptance_rate;
    it->mean_time += res.wall_time;
  }
  for (auto& s : out) {
    if (s.ok_repeats == 0) continue;
    s.mean_acceptance /= s.ok_repeats;
    s.mean_time /= s.ok_repeats;
    if (s.ok_repeats < 2) continue;
    for (const auto& res : results) {
      if (res.variant != s.variant || res.status != "ok") continue;
      s.sd_acceptance += (res.acceptance_rate - s.mean_acceptance) * (res.acceptance_rate - s.mean_acceptance);
      s.sd_time += (res.wall_time - s.mean_time) * (res.wall_time - s.mean_time);
    }
    s.sd_acceptance = std::sqrt(s.sd_acceptance / (s.ok_repeats - 1));
    s.sd_time = std::sqrt(s.sd_time / (s.ok_repeats - 1));
  }
  return out;
}

std::string bench_csv(const RingSpec& r, const std::vector<BenchResult>& results) {
  std::string out = "n,c1,c2,c,variant,repeat,status,samples,proposals,accepted,acceptance_rate,wall_time\n";
  for (const auto& res : results) {
    out += std::to_string(r.n) + ',' + shortest(r.c1) + ',' + shortest(r.c2) + ',' + shortest(r.c) + ',' +
           std::string(name(res.variant)) + ',' + std::to_string(res.repeat) + ',' + res.status + ',' +
           std::to_string(res.samples) + ',' + std::to_string(res.proposals) + ',' + std::to_string(res.accepted) +
           ',' + shortest(res.acceptance_rate) + ',' + significant(res.wall_time, 6) + '\n';
  }
  return out;
}

std::string bench_json(const RingSpec& r, const std::vector<BenchResult>& results) {
  nlohmann::ordered_json j;
  j["ring"] = {{"n", r.n}, {"c1", r.c1}, {"c2", r.c2}, {"c", r.c}};
  j["analytic_ratio"] = ring_volume_ratio(r);
  auto cells = nlohmann::ordered_json::array();
  for (const auto& res : results) {
    nlohmann::ordered_json c;
    c["variant"] = name(res.variant);
    c["repeat"] = res.repeat;
    c["status"] = res.status;
    c["samples"] = res.samples;
    c["proposals"] = res.proposals;
    c["accepted"] = res.accepted;
    c["acceptance_rate"] = res.acceptance_rate;
    c["wall_time"] = res.wall_time;
    if (!res.message.empty()) c["message"] = res.message;
    cells.push_back(std::move(c));
  }
  j["results"] = std::move(cells);
  auto sums = nlohmann::ordered_json::array();
  for (const auto& s : summarize(results)) {
    sums.push_back(nlohmann::ordered_json{{"variant", name(s.variant)},
                    {"ok_repeats", s.ok_repeats},
                    {"mean_acceptance", s.mean_acceptance},
                    {"sd_acceptance", s.sd_acceptance},
                    {"mean_time", s.mean_time},
                    {"sd_time", s.sd_time}});
  }
  j["summary"] = std::move(sums);
  return j.dump(2);
}

UniformityReport uniformity_report(const std::vector<Valuation>& samples, const RingSpec& r, std::size_t bins,
                                   const std::vector<Valuation>& reference) {
  if (bins == 0 || samples.size() < 10 * bins)
    throw DomainError("insufficient samples: need at least 10 per bin (" + std::to_string(10 * bins) + ")");
  UniformityReport rep;
  if (r.n == 2) {
    std::vector<double> observed(bins, 0.0);
    for (const auto& v : samples) {
      double a = std::atan2(v[1], v[0]);
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      auto b = static_cast<std::size_t>(a / (2.0 * std::numbers::pi) * static_cast<double>(bins));
      ++observed[std::min(b, bins - 1)];
    }
    const std::vector<double> expected(bins, static_cast<double>(samples.size()) / static_cast<double>(bins));
    rep.angular_p = chi_square(observed, expected).p_value;
  }
  std::vector<double> radius;
  for (const auto& v : samples) {
    double s = 0.0;
    for (double x : v) s += x * x;
    radius.push_back(std::sqrt(s));
  }
  const double n = static_cast<double>(r.n);
  const double lo = std::pow(r.c2, n);
  const double hi = std::pow(r.c1, n);
  rep.radius_ks = ks_statistic(radius, [&](double x) { return std::clamp((std::pow(x, n) - lo) / (hi - lo), 0.0, 1.0); });
  const double m = static_cast<double>(samples.size());
  rep.radius_p = kolmogorov_p((std::sqrt(m) + 0.12 + 0.11 / std::sqrt(m)) * rep.radius_ks);
  if (!reference.empty()) {
    rep.ks_critical = ks_critical_1pct(samples.size(), reference.size());
    for (std::size_t d = 0; d < r.n; ++d) {
      std::vector<double> a, b;
      for (const auto& v : samples) a.push_back(v[d]);
      for (const auto& v : reference) b.push_back(v[d]);
      rep.per_dim_ks.push_back(ks_statistic(std::move(a), std::move(b)));
    }
  }
  return rep;
}

}  // namespace shapegen
