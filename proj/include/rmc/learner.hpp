#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "rmc/invariants.hpp"

namespace rmc {

struct LearnerOptions {
  /// Teacher answers equivalence against the full inductive DFA instead of the
  /// safety-driven checks.
  bool exact = false;
  std::size_t max_equivalence_queries = 10000;
  /// Query trace, one line per query.
  std::ostream* trace = nullptr;
  /// When set, each separation formula is written to <dimacs_dir>/sep_<k>.cnf.
  std::string dimacs_dir;
};

enum class LearnOutcome {
  EarlySafe,               // some hypothesis already proves safety
  AbstractionInsufficient, // an unseparable pair reaches the unsafe set
  Learned,                 // exact mode: hypothesis equals the inductive DFA
};

struct LearnResult {
  LearnOutcome outcome = LearnOutcome::EarlySafe;
  Verdict verdict;
  Dfa hypothesis;
  std::size_t membership_queries = 0;
  std::size_t equivalence_queries = 0;
};

/// Angluin-style learner for the inductive constraints, built on membership
/// (is_inductive) and a teacher for equivalence.
LearnResult learn_and_check(const SafetyInstance& inst, const LearnerOptions& opts = {});

}  // namespace rmc
