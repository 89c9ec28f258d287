#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shapegen/ast.hpp"
#include "shapegen/error.hpp"

namespace shapegen {

/// Glushkov position automaton. State 0 is initial; state i > 0 is the i-th
/// atom occurrence of the expression (left to right) and is entered by
/// reading `label[i]`.
struct PositionAutomaton {
  std::vector<std::string> label;
  std::vector<std::vector<std::size_t>> next;  // may hold repeated targets
  std::vector<bool> accepting;

  std::size_t size() const { return label.size(); }
};

PositionAutomaton position_automaton(const Regex& r);

bool matches(const PositionAutomaton& a, std::span<const std::string> word);
bool matches(const Regex& r, std::span<const std::string> word);

struct AmbiguityReport {
  bool ambiguous = false;
  std::vector<std::string> witness;  // a shortest word with two derivations
};

/// Decides whether some word has two distinct derivations. Uses the squared
/// position automaton (pairs of runs that read the same word) plus the count
/// of ways each nullable subexpression derives the empty word.
AmbiguityReport check_ambiguity(const Regex& r);

class AmbiguityError : public Error {
 public:
  explicit AmbiguityError(std::vector<std::string> witness);
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::string> witness_;
};

/// Throws AmbiguityError when check_ambiguity reports a witness.
void require_unambiguous(const Regex& r);

/// Language-equivalent unambiguous expression: position automaton, subset
/// construction, then state elimination. Throws DomainError when an
/// intermediate expression exceeds `node_limit` tree nodes.
Regex disambiguate(const Regex& r, std::size_t node_limit = 10000);

/// All distinct words of exactly length n, in lexicographic order of atom
/// names.
std::vector<std::vector<std::string>> words_of_length(const Regex& r, std::size_t n);

}  // namespace shapegen
