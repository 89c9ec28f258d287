#include "shapegen/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "shapegen/automaton.hpp"
#include "shapegen/error.hpp"
#include "shapegen/parser.hpp"
#include "shapegen/word_sampler.hpp"

namespace shapegen {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw Error("cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, p);
}

LoadedSpec load_spec(const std::string& text, bool disambiguate, std::optional<double> eps) {
  LoadedSpec s;
  s.expr = parse_spec(text);
  s.regex = s.expr.regex;
  const auto report = check_ambiguity(s.regex);
  if (report.ambiguous) {
    if (!disambiguate) throw AmbiguityError(report.witness);
    s.regex = shapegen::disambiguate(s.regex);
    s.disambiguated = true;
  }
  s.g = generating_function(s.regex);
  s.space = compile(s.expr, eps);
  return s;
}

TunedParams choose_z(const RationalFunction& g, std::optional<double> z, std::optional<double> mean_length) {
  if (z.has_value() == mean_length.has_value()) throw DomainError("give exactly one of --z and --mean-length");
  if (mean_length) return tune_z(g, *mean_length);
  TunedParams t;
  t.rconv = convergence_radius(g);
  if (!(*z >= 0.0 && *z < t.rconv)) throw DomainError("z must lie in [0, Rconv)");
  t.z = *z;
  t.mean_length_at_z = mean_length_function(g).evaluate(*z);
  return t;
}

std::string record_json(const SampleRecord& r) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["word_id"] = r.word_id;
  j["word"] = r.word;
  j["valuation"] = r.valuation;
  return j.dump();
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  if (cfg.count == 0) throw DomainError("count must be at least 1");
  const LoadedSpec spec = load_spec(read_file(cfg.spec_path), cfg.disambiguate, cfg.epsilon);
  PipelineReport report;

  std::optional<BoltzmannOracle> oracle;
  if (cfg.fixed_word) {
    if (!matches(spec.regex, *cfg.fixed_word)) throw DomainError("fixed word is not in the language of the spec");
    if (cfg.z || cfg.mean_length) report.tuned = choose_z(spec.g, cfg.z, cfg.mean_length);
  } else {
    report.tuned = choose_z(spec.g, cfg.z, cfg.mean_length);
    oracle = build_oracle(spec.regex, report.tuned.z, spec.expr.constraint);
  }

  Rng word_rng(derive_seed(cfg.seed, seed_stream::words));
  std::optional<Chain> chain;
  std::vector<std::string> chain_word;
  std::map<std::vector<std::string>, std::size_t> word_ids;
  std::string jsonl;
  RenderOptions ropts{cfg.dt, cfg.project_continuity};

  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::vector<std::string> word = cfg.fixed_word ? *cfg.fixed_word : sample_atoms(*oracle, word_rng, cfg.max_word_length);
    if (!chain || word != chain_word) {
      if (chain) report.stats += chain->stats();
      PsoConfig pso = cfg.pso;
      pso.seed = derive_seed(cfg.seed, seed_stream::pso, i);
      SamplerConfig sc = cfg.sampler;
      sc.seed = derive_seed(cfg.seed, seed_stream::chain, i);
      Valuation x0 = sc.variant == Variant::rejection ? Valuation{} : find_initial(spec.space, pso);
      chain.emplace(spec.space, sc, std::move(x0));
      chain_word = word;
      ++report.chains;
    }
    const Valuation v = chain->sample(1).front();
    SampleRecord rec;
    rec.step = chain->step_index();
    rec.word_id = word_ids.emplace(word, word_ids.size()).first->second;
    rec.valuation = spec.space.named_valuation(v);
    for (double j : boundary_jumps(spec.expr, word, rec.valuation)) rec.max_jump = std::max(rec.max_jump, j);
    const Signal sig = render(spec.expr, word, rec.valuation, ropts);
    char name[32];
    std::snprintf(name, sizeof name, "%03zu.csv", i);
    write_file_atomic(cfg.out_dir / "signals" / name, to_csv(sig));
    rec.word = std::move(word);
    jsonl += record_json(rec);
    jsonl += '\n';
    report.records.push_back(std::move(rec));
  }
  if (chain) report.stats += chain->stats();
  report.distinct_words = word_ids.size();
  write_file_atomic(cfg.out_dir / "samples.jsonl", jsonl);
  return report;
}

}  // namespace shapegen
