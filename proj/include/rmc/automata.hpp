#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmc/alphabet.hpp"

namespace rmc {

struct Edge {
  Symbol symbol;
  State target;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

class Nfa;

/// Mutable construction buffer; `build()` produces an immutable Nfa.
class NfaBuilder {
 public:
  explicit NfaBuilder(AlphabetPtr alphabet, std::size_t states = 0);

  State add_state();
  void add_states(std::size_t n);
  std::size_t num_states() const { return out_.size(); }
  void add_transition(State from, Symbol symbol, State to);
  void add_epsilon(State from, State to);
  void set_initial(State q, bool value = true);
  void set_final(State q, bool value = true);
  const AlphabetPtr& alphabet() const { return alphabet_; }

  Nfa build() &&;

 private:
  AlphabetPtr alphabet_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<State>> eps_;
  std::vector<char> initial_;
  std::vector<char> final_;
};

/// Nondeterministic automaton with optional epsilon moves. Immutable.
class Nfa {
 public:
  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return out_.size(); }
  std::size_t num_transitions() const;
  /// Outgoing edges of `q`, sorted by (symbol, target).
  std::span<const Edge> edges(State q) const { return out_[q]; }
  /// Outgoing edges of `q` labelled `a`.
  std::span<const Edge> edges(State q, Symbol a) const;
  std::span<const State> epsilon(State q) const { return eps_[q]; }
  bool has_epsilon() const;
  const std::vector<State>& initial() const { return initial_; }
  bool is_initial(State q) const;
  bool is_final(State q) const { return final_[q] != 0; }
  std::vector<State> finals() const;

 private:
  friend class NfaBuilder;
  Nfa() = default;
  AlphabetPtr alphabet_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<State>> eps_;
  std::vector<State> initial_;
  std::vector<char> final_;
};

/// Complete deterministic automaton; state 0.. n-1, table indexed q * |alphabet| + a.
class Dfa {
 public:
  Dfa() = default;
  Dfa(AlphabetPtr alphabet, std::size_t states, State initial);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return final_.size(); }
  State initial() const { return initial_; }
  State next(State q, Symbol a) const { return delta_[q * k_ + a]; }
  bool is_final(State q) const { return final_[q] != 0; }
  void set_next(State q, Symbol a, State to) { delta_[q * k_ + a] = to; }
  void set_final(State q, bool v = true) { final_[q] = v; }
  State run(const Word& w) const;

  Nfa to_nfa() const;

 private:
  AlphabetPtr alphabet_;
  std::size_t k_ = 0;
  State initial_ = 0;
  std::vector<State> delta_;
  std::vector<char> final_;
};

struct DfaSizes {
  std::size_t complete = 0;  // minimal complete DFA, sink included
  std::size_t trim = 0;      // minimal DFA without the dead state
};

struct EquivalenceResult {
  bool equal = true;
  std::optional<Word> witness;  // shortest, lexicographically least, in the symmetric difference
};

Nfa empty_nfa(AlphabetPtr alphabet);
Nfa universal_nfa(AlphabetPtr alphabet);
Nfa word_nfa(AlphabetPtr alphabet, const Word& w);
/// Words of exactly the given length.
Nfa length_nfa(AlphabetPtr alphabet, std::size_t length);

std::vector<State> epsilon_closure(const Nfa& a, std::vector<State> states);
Nfa remove_epsilon(const Nfa& a);
/// Keeps states that are reachable and co-reachable; renumbers in BFS order.
Nfa trim(const Nfa& a);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
Nfa concat(const Nfa& a, const Nfa& b);
Dfa determinize(const Nfa& a);
Dfa complement(const Dfa& a);
Dfa complement(const Nfa& a);
Dfa intersect(const Dfa& a, const Dfa& b);
/// Minimal complete DFA, states renumbered in BFS order from the initial state.
Dfa minimize(const Dfa& a);
Dfa minimize(const Nfa& a);
DfaSizes minimal_sizes(const Dfa& a);
DfaSizes minimal_sizes(const Nfa& a);

bool accepts(const Nfa& a, const Word& w);
bool accepts(const Dfa& a, const Word& w);
/// Shortest accepted word, lexicographically least among those; nullopt when empty.
std::optional<Word> shortest_accepted(const Nfa& a);
std::optional<Word> shortest_accepted(const Dfa& a);
bool is_empty(const Nfa& a);
EquivalenceResult equivalent(const Nfa& a, const Nfa& b);
EquivalenceResult equivalent(const Dfa& a, const Dfa& b);
/// Accepted words of length <= max_len, in length-lexicographic order.
std::vector<Word> enumerate_words(const Nfa& a, std::size_t max_len);

std::string to_dot(const Nfa& a, const std::string& name = "nfa");
std::string to_dot(const Dfa& a, const std::string& name = "dfa");

}  // namespace rmc
