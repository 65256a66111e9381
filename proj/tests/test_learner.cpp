#include "doctest.h"
#include "oracles.hpp"
#include "rmc/learner.hpp"
#include "rmc/separability.hpp"

using namespace rmc;

namespace {

SafetyInstance token(const std::string& framework, const std::string& property = "two_tokens") {
  InstanceFile f = load_instance(oracle::data("token_passing.rts"));
  return f.instance(f.property_index(property), parse_framework_spec(framework, f.sigma));
}

}  // namespace

TEST_CASE("lazy xor proves safety early") {
  const SafetyInstance inst = token("xor");
  std::ostringstream trace;
  LearnerOptions opts;
  opts.trace = &trace;
  const LearnResult r = learn_and_check(inst, opts);
  CHECK(r.outcome == LearnOutcome::EarlySafe);
  CHECK(r.verdict.safe);
  REQUIRE(r.verdict.certificate);
  const Dfa ind = inductive_dfa(inst);
  // The certificate contains only inductive constraints and suffices on its own.
  CHECK(is_empty(intersect(r.verdict.certificate->to_nfa(), complement(ind).to_nfa())));
  CHECK(check_with_constraints(inst, r.verdict.certificate->to_nfa()).safe);
  CHECK(minimal_sizes(r.hypothesis).trim <= minimal_sizes(ind).trim);
  CHECK(r.verdict.stats.at("queries.equivalence") == r.equivalence_queries);
  CHECK(r.membership_queries > 0);
  // Every membership answer in the trace matches the oracle.
  oracle::Steps steps(inst.delta, 8);
  std::istringstream lines(trace.str());
  std::string line;
  std::size_t mq = 0, eq = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("eq ", 0) == 0) ++eq;
    if (line.rfind("mq ", 0) != 0) continue;
    ++mq;
    const auto sep = line.find(" = ");
    REQUIRE(sep != std::string::npos);
    const Word a = parse_word(*inst.framework->gamma(), line.substr(3, sep - 3));
    if (a.size() > 6) continue;
    CHECK((line.substr(sep + 3) == "1") == oracle::inductive(*inst.framework, steps, a));
  }
  CHECK(mq >= 1);
  CHECK(eq == r.equivalence_queries);
}

TEST_CASE("lazy disjunctive reports an unseparable pair") {
  const SafetyInstance inst = token("disj=1");
  const LearnResult r = learn_and_check(inst);
  CHECK(r.outcome == LearnOutcome::AbstractionInsufficient);
  CHECK(!r.verdict.safe);
  const Word& c = r.verdict.witness_initial;
  const Word& c2 = r.verdict.witness_unsafe;
  CHECK(accepts(inst.c_init, c));
  CHECK(accepts(inst.c_unsafe, c2));
  CHECK(!brute_force_separate(inst, c, c2));
  oracle::Steps steps(inst.delta, 6);
  oracle::InductiveSet ind(*inst.framework, steps);
  CHECK(!ind.separator(c, c2, 0, 4));
}

TEST_CASE("exact mode learns the inductive language") {
  for (const std::string spec : {"xor", "disj=1", "views=1"}) {
    CAPTURE(spec);
    const SafetyInstance inst = token(spec);
    LearnerOptions opts;
    opts.exact = true;
    const LearnResult r = learn_and_check(inst, opts);
    CHECK(r.outcome == LearnOutcome::Learned);
    const Dfa ind = inductive_dfa(inst);
    CHECK(equivalent(r.hypothesis, ind).equal);
    CHECK(r.equivalence_queries <= minimize(ind).num_states());
    CHECK(r.verdict.safe == abstract_safety_direct(inst).safe);
  }
  const SafetyInstance safe = token("disj=1", "no_token");
  LearnerOptions opts;
  opts.exact = true;
  CHECK(learn_and_check(safe, opts).verdict.safe);
  CHECK(learn_and_check(safe).verdict.safe);
}

TEST_CASE("learner limits and unsupported instances") {
  LearnerOptions opts;
  opts.max_equivalence_queries = 1;
  CHECK_THROWS_AS(learn_and_check(token("xor"), opts), DiagnosticFailure);
  InstanceFile g = load_instance(oracle::data("growth.rts"));
  const SafetyInstance gi = g.instance(0, parse_framework_spec("disj=1", g.sigma));
  CHECK_THROWS_AS(learn_and_check(gi), UnsupportedInstance);
  LearnerOptions exact;
  exact.exact = true;
  CHECK(learn_and_check(gi, exact).outcome == LearnOutcome::Learned);
}
