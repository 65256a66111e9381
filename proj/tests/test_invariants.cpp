#include "doctest.h"
#include "oracles.hpp"

using namespace rmc;

namespace {

InstanceFile token_file() { return load_instance(oracle::data("token_passing.rts")); }

SafetyInstance token(const std::string& framework, const std::string& property = "two_tokens") {
  InstanceFile f = token_file();
  return f.instance(f.property_index(property), parse_framework_spec(framework, f.sigma));
}

SafetyInstance growth(const std::string& framework) {
  InstanceFile f = load_instance(oracle::data("growth.rts"));
  return f.instance(0, parse_framework_spec(framework, f.sigma));
}

/// Bounded breadth-first reachability from every initial configuration up to a length.
bool bounded_reach_unsafe(const SafetyInstance& inst, std::size_t max_len, int steps) {
  oracle::Steps table(inst.delta, max_len);
  std::set<Word> frontier;
  for (const Word& c : oracle::words_upto(inst.sigma->size(), max_len))
    if (accepts(inst.c_init, c)) frontier.insert(c);
  std::set<Word> seen = frontier;
  for (int i = 0; i <= steps; ++i) {
    std::set<Word> next;
    for (const Word& c : frontier) {
      if (accepts(inst.c_unsafe, c)) return true;
      for (const Word& d : table.table().at(c))
        if (seen.insert(d).second) next.insert(d);
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace

TEST_CASE("token passing verdicts") {
  {
    Verdict v = abstract_safety_direct(token("xor"));
    CHECK(v.safe);
    REQUIRE(v.certificate);
  }
  {
    Verdict v = abstract_safety_direct(token("disj=1", "no_token"));
    CHECK(v.safe);
  }
  {
    const SafetyInstance inst = token("disj=1");
    Verdict v = abstract_safety_direct(inst);
    CHECK(!v.safe);
    CHECK(format_word(*inst.sigma, v.witness_unsafe) == "tnt");
    CHECK(format_word(*inst.sigma, v.witness_initial) == "tnn");
    CHECK(accepts(inst.c_init, v.witness_initial));
    CHECK(accepts(inst.c_unsafe, v.witness_unsafe));
    // No inductive constraint separates the witness pair.
    oracle::Steps steps(inst.delta, 6);
    oracle::InductiveSet ind(*inst.framework, steps);
    CHECK(!ind.separator(v.witness_initial, v.witness_unsafe, 0, 4));
    CHECK(v.stats.count("ind.trim"));
    CHECK(v.stats.count("preach.complete"));
  }
}

TEST_CASE("fused product and composition chain agree") {
  for (const std::string spec : {"disj=1", "disj=2", "xor", "views=1", "union(xor,disj=1)"}) {
    CAPTURE(spec);
    const SafetyInstance inst = token(spec);
    CHECK(equivalent(non_inductive_nfa(inst), non_inductive_nfa_by_composition(inst)).equal);
  }
  for (const std::string spec : {"disj=1", "xor"}) {
    CAPTURE(spec);
    const SafetyInstance inst = growth(spec);
    CHECK(equivalent(non_inductive_nfa(inst), non_inductive_nfa_by_composition(inst)).equal);
  }
}

TEST_CASE("inductive constraints agree with the brute-force oracle") {
  for (const std::string spec : {"xor", "disj=1", "views=1"}) {
    CAPTURE(spec);
    const SafetyInstance inst = token(spec);
    const Dfa ind = inductive_dfa(inst);
    oracle::Steps steps(inst.delta, 6);
    const std::size_t max_a = 4;
    for (const Word& a : oracle::words_upto(inst.framework->gamma()->size(), max_a)) {
      if (!inst.framework->in_constraints(a)) {
        CHECK(!accepts(ind, a));
        CHECK_THROWS_AS(is_inductive(inst, a), UsageError);
        continue;
      }
      const bool expect = oracle::inductive(*inst.framework, steps, a);
      REQUIRE(accepts(ind, a) == expect);
      REQUIRE(is_inductive(inst, a) == expect);
    }
  }
  // Growing and shrinking arrays change the length by one.
  const SafetyInstance g = growth("disj=1");
  const Dfa ind = inductive_dfa(g);
  oracle::Steps steps(g.delta, 6, 1);
  for (const Word& a : oracle::words_upto(4, 3)) REQUIRE(accepts(ind, a) == oracle::inductive(*g.framework, steps, a));
}

TEST_CASE("inductive and non-inductive constraints partition the constraint language") {
  for (const std::string spec : {"xor", "disj=1", "views=1"}) {
    const SafetyInstance inst = token(spec);
    const Nfa bad = non_inductive_nfa(inst);
    const Nfa ind = inductive_dfa(inst).to_nfa();
    const Nfa cons = inst.framework->constraints();
    CHECK(is_empty(intersect(bad, ind)));
    CHECK(equivalent(unite(intersect(bad, cons), ind), cons).equal);
  }
}

TEST_CASE("potential reachability agrees with separator existence") {
  for (const std::string spec : {"xor", "disj=1"}) {
    CAPTURE(spec);
    const SafetyInstance inst = token(spec);
    const Transducer pr = preach_transducer(inst, inductive_dfa(inst).to_nfa());
    oracle::Steps steps(inst.delta, 7);
    oracle::InductiveSet ind(*inst.framework, steps);
    for (std::size_t l = 0; l <= 3; ++l)
      for (const Word& c : oracle::words(2, l))
        for (const Word& c2 : oracle::words(2, l)) {
          CAPTURE(format_word(*inst.sigma, c));
          CAPTURE(format_word(*inst.sigma, c2));
          const bool separable = ind.separator(c, c2, 0, l + 2).has_value();
          REQUIRE(pr.relates(c, c2) == !separable);
        }
  }
}

TEST_CASE("potential reachability is reflexive and transitive") {
  for (const std::string spec : {"xor", "disj=1"}) {
    const SafetyInstance inst = token(spec);
    const Transducer pr = preach_transducer(inst, inductive_dfa(inst).to_nfa());
    for (std::size_t l = 0; l <= 3; ++l) {
      const auto ws = oracle::words(2, l);
      for (const Word& a : ws) {
        CHECK(pr.relates(a, a));
        for (const Word& b : ws) {
          if (!pr.relates(a, b)) continue;
          for (const Word& c : ws)
            if (pr.relates(b, c)) REQUIRE(pr.relates(a, c));
        }
      }
    }
  }
}

TEST_CASE("fewer constraints give a larger potential reachability") {
  const SafetyInstance inst = token("xor");
  const Nfa full = inductive_dfa(inst).to_nfa();
  // Only the inductive constraints of length at most 2.
  Nfa shortlist = intersect(full, unite(unite(length_nfa(inst.framework->gamma(), 0), length_nfa(inst.framework->gamma(), 1)),
                                        length_nfa(inst.framework->gamma(), 2)));
  const Transducer big = preach_transducer(inst, full), small = preach_transducer(inst, shortlist);
  std::size_t strictly = 0;
  for (const Word& c : oracle::words_upto(2, 4))
    for (const Word& c2 : oracle::words(2, c.size())) {
      if (big.relates(c, c2)) REQUIRE(small.relates(c, c2));
      if (small.relates(c, c2) && !big.relates(c, c2)) ++strictly;
    }
  CHECK(strictly > 0);
  // The not-potentially-reachable relation is the complement.
  const Transducer np = not_preach_transducer(inst, full);
  for (const Word& c : oracle::words_upto(2, 3))
    for (const Word& c2 : oracle::words(2, c.size())) CHECK(np.relates(c, c2) != big.relates(c, c2));
}

TEST_CASE("reachable unsafe configurations are never reported safe") {
  InstanceFile file = token_file();
  // Token at the second position, at the end, and anywhere: all reachable.
  const char* unsafe[] = {"ntn", "nnnt", "tn", "t"};
  for (const char* w : unsafe)
    for (const std::string spec : {"xor", "disj=1", "views=1"}) {
      SafetyInstance inst = file.instance(0, parse_framework_spec(spec, file.sigma));
      inst.c_unsafe = word_nfa(inst.sigma, parse_word(*inst.sigma, w));
      REQUIRE(bounded_reach_unsafe(inst, 5, 10));
      CHECK(!abstract_safety_direct(inst).safe);
    }
}

TEST_CASE("size bound of the non-inductive automaton") {
  for (const std::string spec : {"xor", "disj=1", "disj=2", "views=1", "union(xor,disj=1)", "conv(xor,disj=1)"}) {
    for (const SafetyInstance& inst : {token(spec), growth(spec)}) {
      CAPTURE(spec);
      const std::size_t nv = inst.framework->interp_dfa().num_states();
      CHECK(non_inductive_nfa(inst).num_states() <= inst.delta.num_states() * nv * nv);
    }
  }
}

TEST_CASE("checks with a hypothesis") {
  const SafetyInstance inst = token("xor");
  const Nfa full = inductive_dfa(inst).to_nfa();
  SafetyCheck ok = check_with_constraints(inst, full);
  CHECK(ok.safe);
  // Without any constraint every pair is potentially reachable, whatever the lengths.
  SafetyCheck none = check_with_constraints(inst, empty_nfa(inst.framework->gamma()));
  CHECK(!none.safe);
  CHECK(format_word(*inst.sigma, none.unsafe) == "tt");
  CHECK(format_word(*inst.sigma, none.initial) == "t");
}

TEST_CASE("mismatched alphabets are rejected") {
  SafetyInstance inst = token("xor");
  inst.c_unsafe = universal_nfa(make_alphabet("ab", {"a", "b"}));
  CHECK_THROWS_AS(validate(inst), UsageError);
  CHECK_THROWS_AS(abstract_safety_direct(inst), UsageError);
}
