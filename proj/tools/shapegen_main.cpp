// shapegen: command-line front end for the shape-expression sampling pipeline.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "shapegen/automaton.hpp"
#include "shapegen/bench.hpp"
#include "shapegen/diagnostics.hpp"
#include "shapegen/error.hpp"
#include "shapegen/format.hpp"
#include "shapegen/parser.hpp"
#include "shapegen/pipeline.hpp"
#include "shapegen/word_sampler.hpp"

using namespace shapegen;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { ok = 0, parse_error = 1, ambiguity = 2, init_failure = 3, chain_failure = 4, domain_error = 5 };

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json poly_json(const Polynomial& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(rational_json(c));
  if (a.empty()) a.push_back(0);
  return a;
}

json real_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SHAPEGEN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("SHAPEGEN_SEED is not an unsigned integer");
    }
  }
  return 0;
}

std::vector<std::string> split_word(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == ',' || ch == '.') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// "ABCFA" is accepted as a fixed word when every atom name is one character.
std::vector<std::string> parse_fixed_word(const std::string& s, const ShapeExpr& e) {
  auto parts = split_word(s);
  if (parts.size() == 1 && !e.find(parts[0])) {
    std::vector<std::string> chars;
    for (char ch : parts[0]) chars.emplace_back(1, ch);
    bool all = true;
    for (const auto& c : chars) all = all && e.find(c);
    if (all) return chars;
  }
  return parts;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

void note(const std::string& s) { std::cerr << "# " << s << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform random generation of signals from shape expressions"};
  app.require_subcommand(1);

  std::string spec_path;
  bool disambiguate = false;
  std::optional<double> epsilon;
  std::optional<double> z_flag, mean_flag;
  std::optional<std::uint64_t> seed_flag;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "shape expression file (.sexp)")->required();
    sub->add_flag("--disambiguate", disambiguate, "rewrite an ambiguous expression instead of failing");
  };
  auto add_tuning = [&](CLI::App* sub) {
    auto* z = sub->add_option("--z", z_flag, "Boltzmann parameter");
    auto* m = sub->add_option("--mean-length", mean_flag, "target mean word length");
    z->excludes(m);
  };

  // check
  auto* check = app.add_subcommand("check", "parse, check ambiguity and compile the constraint");
  add_spec(check);
  check->add_option("--epsilon", epsilon, "equality relaxation half-width");

  // genfun
  auto* genfun = app.add_subcommand("genfun", "generating function, convergence radius and mean length");
  add_spec(genfun);
  std::size_t terms = 12;
  genfun->add_option("--terms", terms, "Taylor coefficients to print (degree)");

  // tune
  auto* tune = app.add_subcommand("tune", "solve N(z) = mean length for z");
  add_spec(tune);
  tune->add_option("--mean-length", mean_flag, "target mean word length")->required();

  // words
  auto* words = app.add_subcommand("words", "Boltzmann-sample shape words");
  add_spec(words);
  add_tuning(words);
  words->add_option("--seed", seed_flag, "root seed (default: $SHAPEGEN_SEED or 0)");
  std::size_t word_count = 10;
  words->add_option("--count", word_count, "number of words");
  std::optional<std::size_t> exact_length;
  words->add_option("--exact-length", exact_length, "keep only words of this length (rejection)");
  bool jsonl = false;
  words->add_flag("--jsonl", jsonl, "one JSON object per line");
  std::size_t max_word_length = 1'000'000;
  words->add_option("--max-length", max_word_length, "abort words longer than this");

  // sample
  auto* sample = app.add_subcommand("sample", "words, valuations and rendered signals");
  add_spec(sample);
  add_tuning(sample);
  PipelineConfig pc;
  std::string variant = "hr_shrink";
  std::string fixed_word;
  sample->add_option("--seed", seed_flag, "root seed (default: $SHAPEGEN_SEED or 0)");
  sample->add_option("--count", pc.count, "number of outputs");
  sample->add_option("--fixed-word", fixed_word, "use this word for every output (e.g. 'A B C F A' or ABCFA)");
  sample->add_option("--variant", variant, "rejection | hr | hr_shrink | cdhr | cdhr_shrink");
  sample->add_option("--burn-in", pc.sampler.burn_in, "transitions discarded at chain start");
  sample->add_option("--thin", pc.sampler.thin, "transitions per emitted sample")->check(CLI::PositiveNumber);
  sample->add_option("--max-line-rejects", pc.sampler.max_line_rejects, "line proposals before a chain error");
  sample->add_option("--epsilon", epsilon, "equality relaxation half-width");
  sample->add_option("--dt", pc.dt, "signal sampling period in seconds")->check(CLI::PositiveNumber);
  sample->add_option("--out", pc.out_dir, "output directory");
  sample->add_option("--pso-swarm", pc.pso.swarm_size, "particles per swarm");
  sample->add_option("--pso-iters", pc.pso.max_iterations, "iterations per swarm");
  sample->add_option("--pso-restarts", pc.pso.restarts, "fresh swarms after the first");
  sample->add_flag("--project-continuity", pc.project_continuity, "shift segments so the rendered signal is continuous");

  // stats
  auto* stats = app.add_subcommand("stats", "word statistics from words/sample JSONL output");
  std::string input = "-";
  stats->add_option("input", input, "JSONL file ('-' for stdin)");
  stats->add_option("--spec", spec_path, "spec, enables the uniformity tests");
  add_tuning(stats);
  std::vector<std::size_t> test_lengths;
  stats->add_option("--same-length", test_lengths, "word lengths for the same-length uniformity test");

  // bench ring
  auto* bench = app.add_subcommand("bench", "benchmarks");
  bench->require_subcommand(1);
  auto* ring = bench->add_subcommand("ring", "hyper-ring acceptance and timing");
  RingSpec rs;
  std::string variants = "rejection,hr,hr_shrink,cdhr,cdhr_shrink";
  std::size_t bench_samples = 100, repeats = 5;
  std::vector<std::string> outs;
  BenchOptions bo;
  ring->add_option("--dims", rs.n, "dimension")->check(CLI::PositiveNumber);
  ring->add_option("--c1", rs.c1, "outer radius");
  ring->add_option("--c2", rs.c2, "inner radius");
  ring->add_option("--box", rs.c, "box half-width");
  ring->add_option("--variants", variants, "comma-separated sampler variants");
  ring->add_option("--samples", bench_samples, "samples per run");
  ring->add_option("--repeats", repeats, "repeats per variant");
  ring->add_option("--burn-in", bo.burn_in, "burn-in transitions");
  ring->add_option("--rejection-max-dims", bo.rejection_max_dims, "skip rejection above this dimension");
  ring->add_option("--seed", seed_flag, "root seed (default: $SHAPEGEN_SEED or 0)");
  ring->add_option("--out", outs, "report files (.csv or .json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const ShapeExpr e = parse_spec(read_file(spec_path));
      const auto rep = check_ambiguity(e.regex);
      json j;
      j["ok"] = !rep.ambiguous;
      j["atoms"] = atoms_of(e.regex);
      j["ambiguous"] = rep.ambiguous;
      if (rep.ambiguous) j["witness"] = rep.witness;
      const ParamSpace space = compile(e, epsilon);
      j["parameters"] = space.parameters();
      j["dims"] = space.dims();
      j["pinned"] = space.pinned();
      json defs = json::object();
      for (const auto& [n, a] : space.definitions()) defs[n] = print_arith(a);
      j["definitions"] = defs;
      j["epsilon"] = space.epsilon();
      if (rep.ambiguous && !disambiguate) {
        std::cerr << json{{"error", "ambiguity"}, {"message", "ambiguous expression"}, {"witness", rep.witness}}.dump()
                  << '\n';
        print(j);
        return ambiguity;
      }
      if (rep.ambiguous) j["disambiguated"] = print_regex(shapegen::disambiguate(e.regex));
      print(j);
      note(std::to_string(space.dimension()) + " free dimensions, " + std::to_string(space.parameters().size()) +
           " parameters");
      return ok;
    }

    if (genfun->parsed()) {
      const LoadedSpec s = load_spec(read_file(spec_path), disambiguate, epsilon);
      const auto n = mean_length_function(s.g);
      json j;
      j["numerator"] = poly_json(s.g.num());
      j["denominator"] = poly_json(s.g.den());
      j["rconv"] = real_json(convergence_radius(s.g));
      j["mean_length"] = {{"numerator", poly_json(n.num())}, {"denominator", poly_json(n.den())}};
      j["mean_length_at_0"] = n.evaluate(0.0);
      json coeffs = json::array();
      for (const auto& c : taylor_coefficients(s.g, terms)) coeffs.push_back(rational_json(Rational(c)));
      j["taylor"] = coeffs;
      print(j);
      note("g(z) = (" + s.g.num().to_string() + ") / (" + s.g.den().to_string() + ")");
      return ok;
    }

    if (tune->parsed()) {
      const LoadedSpec s = load_spec(read_file(spec_path), disambiguate);
      const TunedParams t = tune_z(s.g, *mean_flag);
      json j;
      j["z"] = t.z;
      j["rconv"] = real_json(t.rconv);
      j["mean_length_at_z"] = t.mean_length_at_z;
      j["root_polynomial"] = poly_json(mean_length_root_polynomial(mean_length_function(s.g), Rational(*mean_flag)));
      print(j);
      note("z = " + significant(t.z, 5) + ", rconv = " + significant(t.rconv, 5));
      return ok;
    }

    if (words->parsed()) {
      const LoadedSpec s = load_spec(read_file(spec_path), disambiguate);
      const TunedParams t = choose_z(s.g, z_flag, mean_flag);
      const auto oracle = build_oracle(s.regex, t.z, s.expr.constraint);
      Rng rng(derive_seed(resolve_seed(seed_flag), seed_stream::words));
      std::size_t emitted = 0;
      std::uint64_t draws = 0;
      while (emitted < word_count) {
        auto w = sample_atoms(oracle, rng, max_word_length);
        ++draws;
        if (exact_length && w.size() != *exact_length) {
          if (draws > 100'000'000) throw DomainError("exact-length filter: no word of that length in 1e8 draws");
          continue;
        }
        if (jsonl) {
          std::cout << json{{"word", w}, {"length", w.size()}}.dump() << '\n';
        } else {
          for (std::size_t i = 0; i < w.size(); ++i) std::cout << (i ? " " : "") << w[i];
          std::cout << '\n';
        }
        ++emitted;
      }
      note("z = " + shortest(t.z) + ", expected mean length " + significant(t.mean_length_at_z, 6));
      return ok;
    }

    if (sample->parsed()) {
      pc.spec_path = spec_path;
      pc.seed = resolve_seed(seed_flag);
      pc.z = z_flag;
      pc.mean_length = mean_flag;
      pc.epsilon = epsilon;
      pc.disambiguate = disambiguate;
      pc.sampler.variant = parse_variant(variant);
      if (!fixed_word.empty()) pc.fixed_word = parse_fixed_word(fixed_word, parse_spec(read_file(spec_path)));
      const PipelineReport r = run_pipeline(pc);
      double max_jump = 0.0;
      for (const auto& rec : r.records) max_jump = std::max(max_jump, rec.max_jump);
      json j;
      j["count"] = r.records.size();
      j["distinct_words"] = r.distinct_words;
      j["chains"] = r.chains;
      j["z"] = r.tuned.z;
      j["proposals"] = r.stats.proposals;
      j["accepted"] = r.stats.accepted;
      j["acceptance_rate"] = r.stats.acceptance_rate();
      j["chain_time"] = r.stats.wall_time;
      j["max_boundary_jump"] = max_jump;
      j["out"] = pc.out_dir.string();
      print(j);
      note(std::to_string(r.records.size()) + " signals in " + pc.out_dir.string() + ", acceptance rate " +
           significant(100.0 * r.stats.acceptance_rate(), 4) + "%");
      return ok;
    }

    if (stats->parsed()) {
      std::ifstream file;
      if (input != "-") {
        file.open(input);
        if (!file) throw Error("cannot read '" + input + "'");
      }
      std::istream& in = input == "-" ? std::cin : file;
      WordStats ws;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        ws.add(j.at("word").get<std::vector<std::string>>());
      }
      json j;
      j["count"] = ws.count;
      j["mean_length"] = ws.mean();
      j["variance"] = ws.variance();
      json hist = json::object();
      for (const auto& [n, c] : ws.length_histogram) hist[std::to_string(n)] = c;
      j["length_histogram"] = hist;
      j["distinct_words"] = ws.frequency.size() + (ws.untracked ? 1 : 0);
      if (!spec_path.empty()) {
        const LoadedSpec s = load_spec(read_file(spec_path), disambiguate);
        if (z_flag || mean_flag) {
          const TunedParams t = choose_z(s.g, z_flag, mean_flag);
          const auto law = length_law_test(ws, s.g, t.z);
          j["length_law"] = {{"z", t.z},
                             {"expected_mean", t.mean_length_at_z},
                             {"chi_square", law.statistic},
                             {"dof", law.dof},
                             {"p_value", law.p_value}};
        }
        json same = json::array();
        for (std::size_t n : test_lengths) {
          const auto r = same_length_test(ws, s.regex, n);
          if (r.skipped) {
            same.push_back({{"length", n}, {"skipped", true}, {"notice", r.notice}});
          } else {
            same.push_back({{"length", n}, {"chi_square", r.statistic}, {"dof", r.dof}, {"p_value", r.p_value}});
          }
        }
        j["same_length"] = same;
      }
      print(j);
      note(std::to_string(ws.count) + " words, mean length " + significant(ws.mean(), 6));
      return ok;
    }

    if (ring->parsed()) {
      std::vector<Variant> vs;
      for (const auto& v : split_word(variants)) vs.push_back(parse_variant(v));
      const auto results = run_bench(rs, vs, bench_samples, repeats, resolve_seed(seed_flag), bo);
      for (const auto& path : outs) {
        const bool as_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
        write_file_atomic(path, as_json ? bench_json(rs, results) : bench_csv(rs, results));
      }
      std::cout << bench_json(rs, results) << '\n';
      for (const auto& s : summarize(results))
        note(std::string(name(s.variant)) + ": acceptance " + significant(100.0 * s.mean_acceptance, 4) + "% +- " +
             significant(100.0 * s.sd_acceptance, 2) + "%, time " + significant(s.mean_time, 4) + " s (" +
             std::to_string(s.ok_repeats) + " ok)");
      return ok;
    }
  } catch (const ParseError& e) {
    std::cerr << json{{"error", "parse"}, {"message", e.detail()}, {"line", e.line()}, {"column", e.column()}}.dump()
              << '\n';
    return parse_error;
  } catch (const AmbiguityError& e) {
    std::cerr << json{{"error", "ambiguity"}, {"message", e.what()}, {"witness", e.witness()}}.dump() << '\n';
    return ambiguity;
  } catch (const InitializationError& e) {
    std::cerr << json{{"error", "initialization"},
                      {"message", e.what()},
                      {"best_penalty", e.best_penalty()},
                      {"best_point", e.best_point()}}
                     .dump()
              << '\n';
    return init_failure;
  } catch (const ChainError& e) {
    std::cerr << json{{"error", "chain"},
                      {"message", e.what()},
                      {"proposals", e.stats().proposals},
                      {"accepted", e.stats().accepted}}
                     .dump()
              << '\n';
    return chain_failure;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << '\n';
    return domain_error;
  }
  return ok;
}
