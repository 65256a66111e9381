#include "rmc/separability.hpp"

#include <cmath>
#include <set>

namespace rmc {

PaddingKind padding_kind(const Framework& f) {
  const PairCodec c = f.codec();
  AlphabetPtr pairs = f.interp_dfa().alphabet();
  // Valid convolutions containing at least one pad letter.
  NfaBuilder b(pairs, 2);
  for (Symbol s = 0; s < c.size(); ++s) {
    b.add_transition(0, s, 0);
    b.add_transition(1, s, 1);
    if (c.first_is_pad(s) || c.second_is_pad(s)) b.add_transition(0, s, 1);
  }
  b.set_initial(0);
  b.set_final(1);
  Nfa unequal = intersect(std::move(b).build(), valid_convolution_nfa(f.gamma(), f.sigma()));
  const Nfa v = f.interp_dfa().to_nfa();
  if (is_empty(intersect(unequal, complement(f.interp_dfa()).to_nfa()))) return PaddingKind::Saturating;
  if (is_empty(intersect(unequal, v))) return PaddingKind::Strict;
  return PaddingKind::Mixed;
}

SeparationContext::SeparationContext(const SafetyInstance& inst)
    : inst_(inst),
      non_inductive_(non_inductive_nfa(inst)),
      kind_(padding_kind(*inst.framework)),
      length_preserving_(is_length_preserving(inst.delta)) {}

std::size_t SeparationContext::separator_length(const Word& c, const Word& c2) const {
  return kind_ == PaddingKind::Saturating ? c2.size() : c.size();
}

SeparationEncoding SeparationContext::encode(const Word& c, const Word& c2) const {
  const Framework& f = *inst_.framework;
  const std::size_t n = separator_length(c, c2);
  const std::size_t ng = f.gamma()->size();
  const Dfa& adfa = f.constraints_dfa();
  const Dfa& v = f.interp_dfa();
  const PairCodec vc = f.codec();
  const Nfa& bad = non_inductive_;
  SeparationEncoding enc;
  enc.length = n;
  Cnf& cnf = enc.cnf;

  // (a) one letter per position.
  enc.letter.assign(n, std::vector<int>(ng));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < ng; ++g) enc.letter[i][g] = cnf.new_var();
    std::vector<Lit> alo(enc.letter[i].begin(), enc.letter[i].end());
    cnf.add(alo);
    for (std::size_t g = 0; g < ng; ++g)
      for (std::size_t h = g + 1; h < ng; ++h) cnf.add({-enc.letter[i][g], -enc.letter[i][h]});
  }
  enc.letter_vars = n * ng;

  // Deterministic run of `d` forced along positions 0..len; letters[i] gives the
  // pair symbol at step i for each constraint letter, or a fixed symbol past n.
  auto run_vars = [&](std::size_t states, std::size_t len) {
    std::vector<std::vector<int>> r(len + 1, std::vector<int>(states));
    for (auto& row : r)
      for (auto& x : row) x = cnf.new_var();
    return r;
  };

  // (b) A is a constraint.
  {
    auto s = run_vars(adfa.num_states(), n);
    enc.constraint_vars = (n + 1) * adfa.num_states();
    for (State q = 0; q < adfa.num_states(); ++q) cnf.add({q == adfa.initial() ? s[0][q] : -s[0][q]});
    for (std::size_t i = 1; i <= n; ++i)
      for (State q = 0; q < adfa.num_states(); ++q)
        for (Symbol g = 0; g < ng; ++g) cnf.add({-s[i - 1][q], -enc.letter[i - 1][g], s[i][adfa.next(q, g)]});
    for (State q = 0; q < adfa.num_states(); ++q)
      if (!adfa.is_final(q)) cnf.add({-s[n][q]});
  }

  // (c) V run on (A, c) ends accepting, V run on (A, c') ends rejecting.
  auto interp_run = [&](const Word& w, bool accept) {
    const std::size_t len = std::max(n, w.size());
    auto r = run_vars(v.num_states(), len);
    for (State q = 0; q < v.num_states(); ++q) cnf.add({q == v.initial() ? r[0][q] : -r[0][q]});
    for (std::size_t i = 1; i <= len; ++i) {
      Symbol x = i <= w.size() ? w[i - 1] : vc.right_pad();
      for (State q = 0; q < v.num_states(); ++q) {
        if (i <= n) {
          for (Symbol g = 0; g < ng; ++g) cnf.add({-r[i - 1][q], -enc.letter[i - 1][g], r[i][v.next(q, vc.pack(g, x))]});
        } else {
          cnf.add({-r[i - 1][q], r[i][v.next(q, vc.pack(vc.left_pad(), x))]});
        }
      }
    }
    for (State q = 0; q < v.num_states(); ++q)
      if (v.is_final(q) != accept) cnf.add({-r[len][q]});
    return (len + 1) * v.num_states();
  };
  enc.positive_vars = interp_run(c, true);
  enc.negative_vars = interp_run(c2, false);

  // (d) reachable sets of the non-inductive automaton; no final state at n.
  {
    const std::size_t m = bad.num_states();
    auto q = run_vars(m, n);
    enc.reach = q;
    enc.reach_vars = (n + 1) * m;
    for (State s = 0; s < m; ++s) cnf.add({bad.is_initial(s) ? q[0][s] : -q[0][s]});
    for (std::size_t i = 1; i <= n; ++i) {
      std::vector<std::vector<int>> incoming(m);
      for (State s = 0; s < m; ++s) {
        auto edges = bad.edges(s);
        for (std::size_t e = 0; e < edges.size();) {
          Symbol g = edges[e].symbol;
          int t = cnf.new_var();
          ++enc.aux_vars;
          cnf.add({-t, q[i - 1][s]});
          cnf.add({-t, enc.letter[i - 1][g]});
          cnf.add({t, -q[i - 1][s], -enc.letter[i - 1][g]});
          for (; e < edges.size() && edges[e].symbol == g; ++e) incoming[edges[e].target].push_back(t);
        }
      }
      for (State p = 0; p < m; ++p) {
        std::vector<Lit> cl{-q[i][p]};
        for (int t : incoming[p]) {
          cl.push_back(t);
          cnf.add({-t, q[i][p]});
        }
        cnf.add(cl);
      }
    }
    for (State s = 0; s < m; ++s)
      if (bad.is_final(s)) cnf.add({-q[n][s]});
  }
  return enc;
}

std::optional<Word> SeparationContext::separate(const Word& c, const Word& c2, std::string* dimacs) const {
  if (!length_preserving_) {
    throw UnsupportedInstance("separate: the transition relation of " + inst_.name + " is not length-preserving");
  }
  if (kind_ == PaddingKind::Mixed && c.size() != c2.size()) {
    throw UnsupportedInstance("separate: framework " + inst_.framework->name() +
                              " treats length mismatches inconsistently; only equal lengths are supported");
  }
  SeparationEncoding enc = encode(c, c2);
  if (dimacs) *dimacs = enc.cnf.to_dimacs();
  SatResult r = sat_solve(enc.cnf);
  if (!r.sat) return std::nullopt;
  Word a;
  for (std::size_t i = 0; i < enc.length; ++i)
    for (std::size_t g = 0; g < enc.letter[i].size(); ++g)
      if (r.model[enc.letter[i][g]]) {
        a.push_back(static_cast<Symbol>(g));
        break;
      }
  const Framework& f = *inst_.framework;
  if (a.size() != enc.length || !f.in_constraints(a) || !f.satisfies(a, c) || f.satisfies(a, c2) ||
      !is_inductive(inst_, a)) {
    throw std::logic_error("separate: decoded model is not a separator");
  }
  return a;
}

std::optional<Word> separate(const SafetyInstance& inst, const Word& c, const Word& c2) {
  return SeparationContext(inst).separate(c, c2);
}

std::optional<Word> brute_force_separate(const SafetyInstance& inst, const Word& c, const Word& c2,
                                         std::size_t max_candidates) {
  const Framework& f = *inst.framework;
  const std::size_t ng = f.gamma()->size();
  std::set<std::size_t> lengths{c.size(), c2.size()};
  double total = 0;
  for (std::size_t n : lengths) total += std::pow(static_cast<double>(ng), static_cast<double>(n));
  if (total > static_cast<double>(max_candidates)) {
    throw DiagnosticFailure("brute_force_separate: " + std::to_string(static_cast<long long>(total)) +
                            " candidates exceed the guard");
  }
  for (std::size_t n : lengths) {
    Word a(n, 0);
    while (true) {
      if (f.in_constraints(a) && f.satisfies(a, c) && !f.satisfies(a, c2) && is_inductive(inst, a)) return a;
      std::size_t i = n;
      while (i > 0 && a[i - 1] + 1 == ng) {
        a[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
      ++a[i - 1];
    }
  }
  return std::nullopt;
}

}  // namespace rmc
