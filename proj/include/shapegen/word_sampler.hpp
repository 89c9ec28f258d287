#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shapegen/ast.hpp"
#include "shapegen/rng.hpp"

namespace shapegen {

/// A word of the regex's language together with the global constraint that
/// every valuation of its parameters must satisfy.
struct ShapeWord {
  std::vector<std::string> atoms;
  Constraint constraint;

  std::size_t length() const { return atoms.size(); }
  bool operator==(const ShapeWord& o) const { return atoms == o.atoms; }
};

/// g(z) of every subexpression at a fixed z, computed once.
class BoltzmannOracle {
 public:
  double z() const { return z_; }
  const Regex& regex() const { return regex_; }
  const Constraint& constraint() const { return constraint_; }
  /// g of the whole expression at z.
  double value() const { return value(regex_.get()); }
  double value(const RegexNode* node) const { return entries_.at(node).g; }
  std::size_t cached_count() const { return entries_.size(); }

 private:
  friend BoltzmannOracle build_oracle(const Regex&, double, Constraint);
  friend std::vector<std::string> sample_atoms(const BoltzmannOracle&, Rng&, std::size_t);
  friend double word_probability(const BoltzmannOracle&, std::span<const std::string>);

  // Lowest-order term c*z^m of g, used when g itself vanishes (z = 0 or
  // underflow); the sampler then follows the z -> 0+ limit.
  struct Entry {
    double g = 0.0;
    std::size_t min_length = 0;
    double min_count = 0.0;
  };

  Regex regex_;
  Constraint constraint_;
  double z_ = 0.0;
  std::unordered_map<const RegexNode*, Entry> entries_;
};

/// Throws DomainError unless 0 <= z < Rconv of every star subexpression.
BoltzmannOracle build_oracle(const Regex& r, double z, Constraint gamma = nullptr);

/// Draws a word with probability z^|w| / g(z). Kleene stars are sampled as
/// geometric loops. Throws DomainError past `max_length` atoms.
std::vector<std::string> sample_atoms(const BoltzmannOracle& oracle, Rng& rng, std::size_t max_length = 1'000'000);

ShapeWord sample_word(const BoltzmannOracle& oracle, Rng& rng, std::size_t max_length = 1'000'000);

/// z^|w| / g(z); DomainError when w is not in the language.
double word_probability(const BoltzmannOracle& oracle, std::span<const std::string> word);

}  // namespace shapegen
