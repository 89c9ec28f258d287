#include "shapegen/word_sampler.hpp"

#include <cmath>

#include "shapegen/automaton.hpp"
#include "shapegen/error.hpp"
#include "shapegen/format.hpp"

namespace shapegen {
BoltzmannOracle build_oracle(const Regex& r, double z, Constraint gamma) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("Boltzmann parameter must be finite and >= 0");
  BoltzmannOracle o;
  o.regex_ = r;
  o.constraint_ = std::move(gamma);
  o.z_ = z;
  auto fill = [&](auto&& self, const Regex& node) -> const BoltzmannOracle::Entry& {
    if (auto it = o.entries_.find(node.get()); it != o.entries_.end()) return it->second;
    BoltzmannOracle::Entry e;
    switch (node->kind) {
      case RegexNode::Kind::epsilon: e = {1.0, 0, 1.0}; break;
      case RegexNode::Kind::atom: e = {z, 1, 1.0}; break;
      case RegexNode::Kind::alt: {
        const auto l = self(self, node->left);
        const auto r2 = self(self, node->right);
        e.g = l.g + r2.g;
        e.min_length = std::min(l.min_length, r2.min_length);
        if (l.min_length == e.min_length) e.min_count += l.min_count;
        if (r2.min_length == e.min_length) e.min_count += r2.min_count;
        break;
      }
      case RegexNode::Kind::cat: {
        const auto l = self(self, node->left);
        const auto r2 = self(self, node->right);
        e = {l.g * r2.g, l.min_length + r2.min_length, l.min_count * r2.min_count};
        break;
      }
      case RegexNode::Kind::star: {
        const auto in = self(self, node->left);
        if (!(in.g < 1.0))
          throw DomainError("z = " + shortest(z) + " is not below the convergence radius of a star subexpression");
        e = {1.0 / (1.0 - in.g), 0, 1.0};
        break;
      }
    }
    if (!std::isfinite(e.g)) throw DomainError("z = " + shortest(z) + " gives a non-finite generating function");
    return o.entries_.emplace(node.get(), e).first->second;
  };
  fill(fill, r);
  return o;
}

std::vector<std::string> sample_atoms(const BoltzmannOracle& oracle, Rng& rng, std::size_t max_length) {
  std::vector<std::string> word;
  std::vector<const RegexNode*> todo{oracle.regex_.get()};
  while (!todo.empty()) {
    const RegexNode* node = todo.back();
    todo.pop_back();
    switch (node->kind) {
      case RegexNode::Kind::epsilon: break;
      case RegexNode::Kind::atom:
        word.push_back(node->atom);
        if (word.size() > max_length)
          throw DomainError("sampled word exceeded the maximum length of " + std::to_string(max_length) + " atoms");
        break;
      case RegexNode::Kind::cat:
        todo.push_back(node->right.get());
        todo.push_back(node->left.get());
        break;
      case RegexNode::Kind::alt: {
        const auto& l = oracle.entries_.at(node->left.get());
        const auto& r = oracle.entries_.at(node->right.get());
        bool take_left;
        if (l.g + r.g > 0.0) {
          take_left = rng.uniform() * (l.g + r.g) < l.g;
        } else if (l.min_length != r.min_length) {
          take_left = l.min_length < r.min_length;
        } else {
          take_left = rng.uniform() * (l.min_count + r.min_count) < l.min_count;
        }
        todo.push_back(take_left ? node->left.get() : node->right.get());
        break;
      }
      case RegexNode::Kind::star: {
        // Stop with probability 1/g = 1 - g_inner, otherwise one more round.
        const double g_inner = oracle.entries_.at(node->left.get()).g;
        if (rng.uniform() < g_inner) {
          todo.push_back(node);
          todo.push_back(node->left.get());
        }
        break;
      }
    }
  }
  return word;
}

ShapeWord sample_word(const BoltzmannOracle& oracle, Rng& rng, std::size_t max_length) {
  return {sample_atoms(oracle, rng, max_length), oracle.constraint()};
}

double word_probability(const BoltzmannOracle& oracle, std::span<const std::string> word) {
  if (!matches(oracle.regex_, word)) throw DomainError("word is not in the language of the expression");
  const auto& root = oracle.entries_.at(oracle.regex_.get());
  if (root.g > 0.0) return std::pow(oracle.z_, static_cast<double>(word.size())) / root.g;
  return word.size() == root.min_length ? 1.0 / root.min_count : 0.0;
}

}  // namespace shapegen
