#pragma once

#include <optional>
#include <string>

#include "rmc/invariants.hpp"
#include "rmc/sat.hpp"

namespace rmc {

/// How an interpretation treats pairs (A, c) with |A| != |c|.
enum class PaddingKind {
  Strict,      // never satisfied
  Saturating,  // always satisfied
  Mixed,
};

PaddingKind padding_kind(const Framework& f);

/// Variable and clause groups of a separation query, sizes as built.
struct SeparationEncoding {
  Cnf cnf;
  std::size_t length = 0;                   // |A|
  std::vector<std::vector<int>> letter;     // letter[i][g], i in 0..length-1
  std::vector<std::vector<int>> reach;      // reach[i][q]: q reachable in the non-inductive NFA after i letters
  std::size_t letter_vars = 0;
  std::size_t constraint_vars = 0;
  std::size_t positive_vars = 0;
  std::size_t negative_vars = 0;
  std::size_t reach_vars = 0;
  std::size_t aux_vars = 0;
};

/// Precomputed automata shared by repeated separation queries on one instance.
class SeparationContext {
 public:
  explicit SeparationContext(const SafetyInstance& inst);

  const SafetyInstance& instance() const { return inst_; }
  const Nfa& non_inductive() const { return non_inductive_; }
  PaddingKind kind() const { return kind_; }
  /// Length of the separators searched for: |c'| for saturating padding, |c| otherwise.
  std::size_t separator_length(const Word& c, const Word& c2) const;

  SeparationEncoding encode(const Word& c, const Word& c2) const;
  /**
   * Some inductive A with c in V(A) and c' not in V(A), or nullopt. Requires
   * a length-preserving delta; with mixed padding only |c| = |c'| is
   * supported and only constraints of that length are searched. Throws
   * UnsupportedInstance otherwise. When `dimacs` is
   * non-null the formula is stored there.
   */
  std::optional<Word> separate(const Word& c, const Word& c2, std::string* dimacs = nullptr) const;

 private:
  const SafetyInstance& inst_;
  Nfa non_inductive_;
  PaddingKind kind_;
  bool length_preserving_;
};

std::optional<Word> separate(const SafetyInstance& inst, const Word& c, const Word& c2);

/// Enumerates constraints of length |c| and |c'| in length-lexicographic order.
std::optional<Word> brute_force_separate(const SafetyInstance& inst, const Word& c, const Word& c2,
                                         std::size_t max_candidates = 1000000);

}  // namespace rmc
