#include "shapegen/automaton.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <utility>

namespace shapegen {
namespace {

struct Fragment {
  bool nullable = false;
  std::vector<std::size_t> first;
  std::vector<std::size_t> last;
};

void append(std::vector<std::size_t>& to, const std::vector<std::size_t>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

Fragment build(const Regex& r, PositionAutomaton& a) {
  switch (r->kind) {
    case RegexNode::Kind::epsilon: return {true, {}, {}};
    case RegexNode::Kind::atom: {
      std::size_t pos = a.label.size();
      a.label.push_back(r->atom);
      a.next.emplace_back();
      return {false, {pos}, {pos}};
    }
    case RegexNode::Kind::alt: {
      Fragment l = build(r->left, a);
      Fragment rr = build(r->right, a);
      Fragment f{l.nullable || rr.nullable, l.first, l.last};
      append(f.first, rr.first);
      append(f.last, rr.last);
      return f;
    }
    case RegexNode::Kind::cat: {
      Fragment l = build(r->left, a);
      Fragment rr = build(r->right, a);
      for (std::size_t p : l.last) append(a.next[p], rr.first);
      Fragment f{l.nullable && rr.nullable, l.first, rr.last};
      if (l.nullable) append(f.first, rr.first);
      if (rr.nullable) append(f.last, l.last);
      return f;
    }
    case RegexNode::Kind::star: {
      Fragment in = build(r->left, a);
      for (std::size_t p : in.last) append(a.next[p], in.first);
      return {true, in.first, in.last};
    }
  }
  return {};
}

// Number of derivations of the empty word.
std::size_t null_count(const Regex& r) {
  switch (r->kind) {
    case RegexNode::Kind::epsilon:
    case RegexNode::Kind::star: return 1;
    case RegexNode::Kind::atom: return 0;
    case RegexNode::Kind::alt: return null_count(r->left) + null_count(r->right);
    case RegexNode::Kind::cat: return null_count(r->left) * null_count(r->right);
  }
  return 0;
}

using Word = std::vector<std::string>;

Word shortest_word(const Regex& r) {
  switch (r->kind) {
    case RegexNode::Kind::epsilon:
    case RegexNode::Kind::star: return {};
    case RegexNode::Kind::atom: return {r->atom};
    case RegexNode::Kind::alt: {
      Word l = shortest_word(r->left);
      Word rr = shortest_word(r->right);
      return rr.size() < l.size() ? rr : l;
    }
    case RegexNode::Kind::cat: {
      Word w = shortest_word(r->left);
      Word rr = shortest_word(r->right);
      w.insert(w.end(), rr.begin(), rr.end());
      return w;
    }
  }
  return {};
}

// Shortest word of `r` whose derivation visits `target` with `target`
// deriving the empty word.
std::optional<Word> shortest_through(const Regex& r, const RegexNode* target) {
  if (r.get() == target) return Word{};
  auto pick = [](std::optional<Word> a, std::optional<Word> b) {
    if (!a) return b;
    if (!b) return a;
    return b->size() < a->size() ? b : a;
  };
  switch (r->kind) {
    case RegexNode::Kind::epsilon:
    case RegexNode::Kind::atom: return std::nullopt;
    case RegexNode::Kind::alt: return pick(shortest_through(r->left, target), shortest_through(r->right, target));
    case RegexNode::Kind::star: return shortest_through(r->left, target);
    case RegexNode::Kind::cat: {
      std::optional<Word> via_left = shortest_through(r->left, target);
      if (via_left) {
        Word tail = shortest_word(r->right);
        via_left->insert(via_left->end(), tail.begin(), tail.end());
      }
      std::optional<Word> via_right = shortest_through(r->right, target);
      if (via_right) {
        Word head = shortest_word(r->left);
        head.insert(head.end(), via_right->begin(), via_right->end());
        via_right = std::move(head);
      }
      return pick(std::move(via_left), std::move(via_right));
    }
  }
  return std::nullopt;
}

void collect_multi_null(const Regex& r, std::vector<const RegexNode*>& out) {
  if (null_count(r) > 1) out.push_back(r.get());
  if (r->left) collect_multi_null(r->left, out);
  if (r->right) collect_multi_null(r->right, out);
}

// Two runs over the same word; `split` records whether they have taken
// different edges at some point.
struct PairState {
  std::size_t p;
  std::size_t q;
  bool split;
  auto operator<=>(const PairState&) const = default;
};

std::optional<Word> product_witness(const PositionAutomaton& a) {
  std::map<PairState, std::pair<PairState, std::string>> parent;
  std::queue<PairState> frontier;
  PairState start{0, 0, false};
  parent.emplace(start, std::make_pair(start, std::string{}));
  frontier.push(start);
  while (!frontier.empty()) {
    PairState s = frontier.front();
    frontier.pop();
    if (s.split && a.accepting[s.p] && a.accepting[s.q]) {
      Word w;
      for (PairState cur = s; !(cur == start);) {
        const auto& [prev, letter] = parent.at(cur);
        w.push_back(letter);
        cur = prev;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    const auto& np = a.next[s.p];
    const auto& nq = a.next[s.q];
    for (std::size_t i = 0; i < np.size(); ++i) {
      for (std::size_t j = 0; j < nq.size(); ++j) {
        if (a.label[np[i]] != a.label[nq[j]]) continue;
        // Edges out of the same state are identified by their index.
        bool split = s.split || s.p != s.q || i != j;
        PairState t{np[i], nq[j], split};
        if (parent.emplace(t, std::make_pair(s, a.label[np[i]])).second) frontier.push(t);
      }
    }
  }
  return std::nullopt;
}

// --- state elimination ------------------------------------------------------

Regex cat_simplified(const Regex& a, const Regex& b) {
  if (a->kind == RegexNode::Kind::epsilon) return b;
  if (b->kind == RegexNode::Kind::epsilon) return a;
  return re::cat(a, b);
}

std::vector<std::string> alphabet(const PositionAutomaton& a) {
  std::set<std::string> letters(a.label.begin() + 1, a.label.end());
  return {letters.begin(), letters.end()};
}

}  // namespace

PositionAutomaton position_automaton(const Regex& r) {
  PositionAutomaton a;
  a.label.emplace_back();
  a.next.emplace_back();
  Fragment f = build(r, a);
  a.next[0] = f.first;
  a.accepting.assign(a.size(), false);
  for (std::size_t p : f.last) a.accepting[p] = true;
  a.accepting[0] = f.nullable;
  return a;
}

bool matches(const PositionAutomaton& a, std::span<const std::string> word) {
  std::vector<char> current(a.size(), 0);
  current[0] = 1;
  for (const auto& letter : word) {
    std::vector<char> next(a.size(), 0);
    bool any = false;
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (!current[p]) continue;
      for (std::size_t q : a.next[p])
        if (a.label[q] == letter) next[q] = 1, any = true;
    }
    if (!any) return false;
    current.swap(next);
  }
  for (std::size_t p = 0; p < a.size(); ++p)
    if (current[p] && a.accepting[p]) return true;
  return false;
}

bool matches(const Regex& r, std::span<const std::string> word) {
  return matches(position_automaton(r), word);
}

AmbiguityError::AmbiguityError(std::vector<std::string> witness)
    : Error([&] {
        std::string msg = "ambiguous regular expression; witness word:";
        if (witness.empty()) msg += " eps";
        for (const auto& w : witness) msg += " " + w;
        return msg;
      }()),
      witness_(std::move(witness)) {}

AmbiguityReport check_ambiguity(const Regex& r) {
  std::optional<Word> best = product_witness(position_automaton(r));
  std::vector<const RegexNode*> multi;
  collect_multi_null(r, multi);
  for (const RegexNode* node : multi) {
    std::optional<Word> w = shortest_through(r, node);
    if (w && (!best || w->size() < best->size())) best = std::move(w);
  }
  if (!best) return {};
  return {true, std::move(*best)};
}

void require_unambiguous(const Regex& r) {
  AmbiguityReport rep = check_ambiguity(r);
  if (rep.ambiguous) throw AmbiguityError(std::move(rep.witness));
}

Regex disambiguate(const Regex& r, std::size_t node_limit) {
  PositionAutomaton a = position_automaton(r);
  std::vector<std::string> letters = alphabet(a);

  // Subset construction; states are sorted position sets.
  std::vector<std::vector<std::size_t>> states{{0}};
  std::map<std::vector<std::size_t>, std::size_t> index{{{0}, 0}};
  std::vector<std::vector<std::pair<std::string, std::size_t>>> delta(1);
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (const auto& letter : letters) {
      std::set<std::size_t> target;
      for (std::size_t p : states[s])
        for (std::size_t q : a.next[p])
          if (a.label[q] == letter) target.insert(q);
      if (target.empty()) continue;
      std::vector<std::size_t> key(target.begin(), target.end());
      auto [it, fresh] = index.emplace(key, states.size());
      if (fresh) {
        states.push_back(key);
        delta.emplace_back();
      }
      delta[s].emplace_back(letter, it->second);
    }
  }

  // Generalized automaton over regex-labelled edges. DFA states keep their
  // indices; `src` and `dst` are the added start and final states.
  const std::size_t m = states.size();
  const std::size_t src = m;
  const std::size_t dst = m + 1;
  std::map<std::pair<std::size_t, std::size_t>, Regex> edge;
  auto add_edge = [&](std::size_t i, std::size_t j, const Regex& label) {
    auto [it, fresh] = edge.emplace(std::make_pair(i, j), label);
    if (!fresh) it->second = re::alt(it->second, label);
  };
  add_edge(src, 0, re::epsilon());
  for (std::size_t s = 0; s < m; ++s) {
    for (const auto& [letter, t] : delta[s]) add_edge(s, t, re::atom(letter));
    bool accepting = std::any_of(states[s].begin(), states[s].end(),
                                 [&](std::size_t p) { return a.accepting[p]; });
    if (accepting) add_edge(s, dst, re::epsilon());
  }

  std::vector<bool> alive(m, true);
  for (std::size_t round = 0; round < m; ++round) {
    // Eliminate the live state with the fewest in*out edge pairs.
    std::size_t pick = m;
    std::size_t best_cost = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!alive[k]) continue;
      std::size_t in = 0;
      std::size_t out = 0;
      for (const auto& [key, _] : edge) {
        if (key.second == k && key.first != k) ++in;
        if (key.first == k && key.second != k) ++out;
      }
      if (pick == m || in * out < best_cost) pick = k, best_cost = in * out;
    }
    const std::size_t k = pick;
    alive[k] = false;

    Regex loop;
    if (auto it = edge.find({k, k}); it != edge.end()) loop = re::star(it->second);
    std::vector<std::pair<std::size_t, Regex>> ins;
    std::vector<std::pair<std::size_t, Regex>> outs;
    for (auto it = edge.begin(); it != edge.end();) {
      const auto [i, j] = it->first;
      if (i == k || j == k) {
        if (j == k && i != k) ins.emplace_back(i, it->second);
        if (i == k && j != k) outs.emplace_back(j, it->second);
        it = edge.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [i, into] : ins) {
      for (const auto& [j, from] : outs) {
        Regex path = loop ? cat_simplified(cat_simplified(into, loop), from) : cat_simplified(into, from);
        add_edge(i, j, path);
        if (edge.at({i, j})->size > node_limit)
          throw DomainError("disambiguation exceeded the node limit of " + std::to_string(node_limit) +
                            " nodes; rewrite the expression unambiguously by hand");
      }
    }
  }
  return edge.at({src, dst});
}

std::vector<std::vector<std::string>> words_of_length(const Regex& r, std::size_t n) {
  PositionAutomaton a = position_automaton(r);
  std::vector<std::string> letters = alphabet(a);
  std::vector<std::vector<std::string>> out;
  Word prefix;
  auto dfs = [&](auto&& self, const std::set<std::size_t>& current) -> void {
    if (prefix.size() == n) {
      if (std::any_of(current.begin(), current.end(), [&](std::size_t p) { return a.accepting[p]; }))
        out.push_back(prefix);
      return;
    }
    for (const auto& letter : letters) {
      std::set<std::size_t> next;
      for (std::size_t p : current)
        for (std::size_t q : a.next[p])
          if (a.label[q] == letter) next.insert(q);
      if (next.empty()) continue;
      prefix.push_back(letter);
      self(self, next);
      prefix.pop_back();
    }
  };
  dfs(dfs, {0});
  return out;
}

}  // namespace shapegen
