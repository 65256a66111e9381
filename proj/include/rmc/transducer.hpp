#pragma once

#include <set>
#include <utility>

#include "rmc/automata.hpp"

namespace rmc {

/**
 * Letters of L_# x R_#, where the pad of each side is the id equal to the
 * side's size. Letter (a, b) has id a * (|R| + 1) + b.
 */
struct PairCodec {
  std::size_t left = 0;
  std::size_t right = 0;

  Symbol left_pad() const { return static_cast<Symbol>(left); }
  Symbol right_pad() const { return static_cast<Symbol>(right); }
  Symbol pack(Symbol a, Symbol b) const { return static_cast<Symbol>(a * (right + 1) + b); }
  Symbol first(Symbol p) const { return static_cast<Symbol>(p / (right + 1)); }
  Symbol second(Symbol p) const { return static_cast<Symbol>(p % (right + 1)); }
  bool first_is_pad(Symbol p) const { return first(p) == left_pad(); }
  bool second_is_pad(Symbol p) const { return second(p) == right_pad(); }
  std::size_t size() const { return (left + 1) * (right + 1); }
};

/// Alphabet of pair letters, names "a/b" with "_" for the pad.
AlphabetPtr pair_alphabet(const AlphabetPtr& left, const AlphabetPtr& right);

/// Binary rational relation given by an automaton over pair letters.
class Transducer {
 public:
  /// The automaton must be over pair_alphabet(left, right). Not normalized.
  Transducer(AlphabetPtr left, AlphabetPtr right, Nfa automaton);

  const AlphabetPtr& left() const { return left_; }
  const AlphabetPtr& right() const { return right_; }
  const Nfa& automaton() const { return automaton_; }
  const PairCodec& codec() const { return codec_; }
  std::size_t num_states() const { return automaton_.num_states(); }

  /// (u, w) in the relation.
  bool relates(const Word& u, const Word& w) const;

 private:
  AlphabetPtr left_;
  AlphabetPtr right_;
  PairCodec codec_;
  Nfa automaton_;
};

/// Left aligned convolution, the shorter word padded at the end.
Word convolve(const PairCodec& codec, const Word& u, const Word& w);
/// Inverse of convolve; throws UsageError when pads are interleaved.
std::pair<Word, Word> deconvolve(const PairCodec& codec, const Word& pairs);

/// Words over the pair alphabet that are convolutions of some pair (pad-suffix form).
Nfa valid_convolution_nfa(const AlphabetPtr& left, const AlphabetPtr& right);
/// Rewrites into pad-suffix normal form and trims.
Transducer normalize(const Transducer& t);

Transducer inverse(const Transducer& t);
/// {(x, z) | exists y: (x, y) in t1, (y, z) in t2}.
Transducer compose(const Transducer& t1, const Transducer& t2);
/// Track 1 or 2 of the relation; pads on the kept track become epsilon moves.
Nfa project(const Transducer& t, int track);
/// {w | exists u in c: (u, w) in t}.
Nfa image(const Nfa& c, const Transducer& t);
/// {u | exists w in c: (u, w) in t}.
Nfa preimage(const Transducer& t, const Nfa& c);
Transducer identity_on(const AlphabetPtr& alphabet);
Transducer identity_on(const Nfa& language);
/// (L x R)-convolutions not in t.
Transducer complement_relation(const Transducer& t);
Transducer intersect(const Transducer& a, const Transducer& b);
Transducer unite(const Transducer& a, const Transducer& b);
/// t restricted to pairs whose first component is in `first` and second in `second`.
Transducer restrict(const Transducer& t, const Nfa& first, const Nfa& second);
/// No useful transition carries a pad.
bool is_length_preserving(const Transducer& t);
/// Same relation.
EquivalenceResult equivalent(const Transducer& a, const Transducer& b);

/// All w with (u, w) in t and |w| <= max_len.
std::set<Word> successors(const Transducer& t, const Word& u, std::size_t max_len);

std::string to_dot(const Transducer& t, const std::string& name = "transducer");

}  // namespace rmc
