#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "shapegen/ast.hpp"
#include "shapegen/genfun.hpp"
#include "shapegen/initializer.hpp"
#include "shapegen/param_space.hpp"
#include "shapegen/point_sampler.hpp"
#include "shapegen/signal.hpp"

namespace shapegen {

/// A parsed spec with everything derived from it.
struct LoadedSpec {
  ShapeExpr expr;
  Regex regex;  // possibly disambiguated
  bool disambiguated = false;
  RationalFunction g;
  ParamSpace space;
};

std::string read_file(const std::filesystem::path& p);

/// Writes to a sibling temporary file, then renames over `p`.
void write_file_atomic(const std::filesystem::path& p, const std::string& content);

/// Parses, checks ambiguity (AmbiguityError unless `disambiguate`), builds
/// g and compiles the parameter space.
LoadedSpec load_spec(const std::string& text, bool disambiguate = false, std::optional<double> eps = std::nullopt);

/// Exactly one of `z`, `mean_length` must be set (DomainError otherwise).
TunedParams choose_z(const RationalFunction& g, std::optional<double> z, std::optional<double> mean_length);

struct PipelineConfig {
  std::filesystem::path spec_path;
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::optional<double> z;
  std::optional<double> mean_length;
  SamplerConfig sampler{};
  PsoConfig pso{};
  std::optional<double> epsilon;
  double dt = 0.01;
  std::filesystem::path out_dir = "out";
  std::optional<std::vector<std::string>> fixed_word;
  bool disambiguate = false;
  bool project_continuity = false;
  std::size_t max_word_length = 1'000'000;
};

struct SampleRecord {
  std::uint64_t step = 0;
  std::size_t word_id = 0;
  std::vector<std::string> word;
  std::map<std::string, double> valuation;
  double max_jump = 0.0;
};

struct PipelineReport {
  std::vector<SampleRecord> records;
  std::size_t distinct_words = 0;
  std::size_t chains = 0;
  ChainStats stats;
  TunedParams tuned;
};

/// Two-stage generation: a word from the Boltzmann sampler (or the fixed
/// word), then a valuation from a hit-and-run chain that continues while
/// the word repeats and restarts from a fresh PSO point when it changes.
/// Writes out_dir/signals/NNN.csv and out_dir/samples.jsonl.
PipelineReport run_pipeline(const PipelineConfig& cfg);

/// One JSONL line for a record (no trailing newline).
std::string record_json(const SampleRecord& r);

}  // namespace shapegen
