#pragma once

// Brute-force reference implementations used by the tests. They work on the
// regex tree directly and share no code with the automaton or genfun code.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shapegen/ast.hpp"
#include "shapegen/rng.hpp"

namespace oracle {

using Word = std::vector<std::string>;

/// Every word of length <= max_len with its number of parse derivations.
/// Returns nullopt once more than `cap` distinct words appear.
std::optional<std::map<Word, std::uint64_t>> derivations(const shapegen::Regex& r, std::size_t max_len,
                                                         std::size_t cap = 200'000);

/// Number of distinct words per length 0..max_len.
std::vector<std::uint64_t> counts_by_length(const std::map<Word, std::uint64_t>& lang, std::size_t max_len);

/// Random regex over the first `alphabet` letters A, B, ...; star arguments
/// are never nullable.
shapegen::Regex random_regex(shapegen::Rng& rng, std::size_t alphabet, int depth);

/// Splits "A B C" or "ABC" (single-letter atoms) into a word.
Word word(const std::string& s);

}  // namespace oracle
