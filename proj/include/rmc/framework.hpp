#pragma once

#include <functional>
#include <memory>

#include "rmc/transducer.hpp"

namespace rmc {

/**
 * Constraint language over gamma together with its interpretation, a
 * deterministic complete transducer gamma x sigma relating a constraint to
 * the configurations satisfying it.
 */
class Framework {
 public:
  /// Throws UsageError when the interpretation is not deterministic; incomplete
  /// interpretations are completed with a rejecting sink.
  Framework(std::string name, AlphabetPtr sigma, AlphabetPtr gamma, Nfa constraints, Transducer interp);

  const std::string& name() const { return name_; }
  const AlphabetPtr& sigma() const { return sigma_; }
  const AlphabetPtr& gamma() const { return gamma_; }
  const Nfa& constraints() const { return constraints_; }
  const Dfa& constraints_dfa() const { return constraints_dfa_; }
  const Transducer& interp() const { return interp_; }
  const Dfa& interp_dfa() const { return interp_dfa_; }
  const PairCodec& codec() const { return interp_.codec(); }

  bool in_constraints(const Word& a) const { return accepts(constraints_dfa_, a); }
  /// c in V(a).
  bool satisfies(const Word& a, const Word& c) const;
  /// V(a) as an automaton over sigma.
  Nfa interpret(const Word& a) const;

 private:
  std::string name_;
  AlphabetPtr sigma_;
  AlphabetPtr gamma_;
  Nfa constraints_;
  Dfa constraints_dfa_;
  Transducer interp_;
  Dfa interp_dfa_;
};

using FrameworkPtr = std::shared_ptr<const Framework>;

/// Some position i has c_i in A_i; b > 1 is the b-fold convolution.
FrameworkPtr disjunctive_framework(const AlphabetPtr& sigma, int b);
/// Exactly one position i has c_i in A_i.
FrameworkPtr xor_framework(const AlphabetPtr& sigma);
/// Constant constraints F^l over sets F of words of length <= k; V(F^l) are the
/// length-l words with no scattered subword in F.
FrameworkPtr views_framework(const AlphabetPtr& sigma, int k);
/// Tagged disjoint union; satisfied according to the side the constraint comes from.
FrameworkPtr union_framework(const FrameworkPtr& f1, const FrameworkPtr& f2);
/// Equal-length pairs of constraints, satisfied when both components are.
FrameworkPtr convolution_framework(const FrameworkPtr& f1, const FrameworkPtr& f2);

/// Loads the framework stored in an instance file (used by "file=<path>").
using FrameworkLoader = std::function<FrameworkPtr(const std::string& path, const AlphabetPtr& sigma)>;

/**
 * Parses "disj=<b>", "xor", "views=<k>", "union(<spec>,<spec>)",
 * "conv(<spec>,<spec>)" and "file=<path>". Throws UsageError.
 */
FrameworkPtr parse_framework_spec(const std::string& spec, const AlphabetPtr& sigma,
                                  const FrameworkLoader& loader = nullptr);

}  // namespace rmc
