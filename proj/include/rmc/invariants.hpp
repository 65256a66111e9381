#pragma once

#include <map>
#include <optional>
#include <string>

#include "rmc/framework.hpp"

namespace rmc {

/// Regular transition system with initial and unsafe configurations, checked under a framework.
struct SafetyInstance {
  std::string name;
  AlphabetPtr sigma;
  Transducer delta;
  Nfa c_init;
  Nfa c_unsafe;
  FrameworkPtr framework;
};

/// Throws UsageError when alphabets disagree.
void validate(const SafetyInstance& inst);

struct Verdict {
  bool safe = false;
  std::optional<Dfa> certificate;  // set when safe
  Word witness_initial;            // set when not abstractly safe
  Word witness_unsafe;
  /// Sizes and counters, keys are lowercase dotted names.
  std::map<std::string, std::size_t> stats;
};

/**
 * {A in gamma* | V(A) is not inductive}, the product of V, delta and the
 * complement of V on the constraint track. Trimmed, epsilon-free. The
 * constraint language is not intersected here; see inductive_dfa.
 */
Nfa non_inductive_nfa(const SafetyInstance& inst);
/// Same language built by composing V, delta and complement(V^-1), then
/// intersecting with the identity and projecting.
Nfa non_inductive_nfa_by_composition(const SafetyInstance& inst);
/// Minimal complete DFA of the inductive constraints (constraint language minus the above).
Dfa inductive_dfa(const SafetyInstance& inst);
/// Word-restricted product; throws UsageError when a is not a constraint.
bool is_inductive(const SafetyInstance& inst, const Word& a);

/// {(c, c') | some A in ind_lang has c in V(A) and c' not in V(A)}.
Transducer not_preach_transducer(const SafetyInstance& inst, const Nfa& ind_lang);
/// Complement of the above, minimized.
Transducer preach_transducer(const SafetyInstance& inst, const Nfa& ind_lang);

struct SafetyCheck {
  bool safe = false;
  Word initial, unsafe;  // shortest unsafe witness and a matching initial configuration
  DfaSizes preach_sizes;
};

/// Tests image(C_I, PReach_H) against C_U for the constraint set H.
SafetyCheck check_with_constraints(const SafetyInstance& inst, const Nfa& ind_lang);

/// Builds Ind once and checks safety with it.
Verdict abstract_safety_direct(const SafetyInstance& inst);

}  // namespace rmc
