#include "doctest.h"
#include "hardness_cases.hpp"

using namespace rmc;

TEST_CASE("machine files") {
  auto g = cases::gadget("tm_example.tm");
  CHECK(g.s() == 5);
  CHECK(g.m() == 6);
  CHECK(g.cells()->size() == 7);
  CHECK(g.sigma()->size() == 16);
  CHECK_THROWS_AS(parse_tm("state q0 initial\nstate qf final\ntape B\ntrans q0 B -> qf B R\ntrans q0 B -> q0 B L\n"),
                  UsageError);
  CHECK_THROWS_AS(parse_tm("state q0 initial\ntape B\n"), UsageError);
  CHECK_THROWS_AS(parse_tm("state q0 initial\nstate qf final\ntape B\ntrans q0 C -> qf B R\n"), UsageError);
  CHECK_THROWS_AS(HardnessGadget(parse_tm("state q0 initial\nstate qf final\ntape B\nsize 3\n")),
                  UnsupportedInstance);
}

TEST_CASE("window function") {
  auto g = cases::gadget("tm_example.tm");
  auto c = [&](const char* n) { return g.cell_symbol(n); };
  CHECK(g.delta(c("#"), c("q0"), c("B"), c("B")) == c("x"));
  CHECK(g.delta(c("q0"), c("B"), c("B"), c("B")) == c("q1"));
  CHECK(g.delta(c("B"), c("B"), c("B"), c("#")) == c("B"));
  CHECK(g.delta(c("B"), c("#"), c("q0"), c("B")) == c("#"));
  CHECK(g.delta(c("B"), c("."), c("B"), c("B")) == c("."));
  // q1 has no move, so the configuration repeats.
  CHECK(g.delta(c("x"), c("q1"), c("B"), c("B")) == c("q1"));
  const auto alpha = g.run_prefix(18);
  std::string s;
  for (Symbol x : alpha) s += g.cells()->name(x) + " ";
  CHECK(s == "# q0 B B B B # x q1 B B B # x q1 B B B ");
}

TEST_CASE("sample run replays through the transducers") {
  auto g = cases::gadget("tm_example.tm");
  const Transducer delta = g.transition_relation();
  const Transducer mark = g.mark_transducer(), write = g.write_transducer(), init = g.init_transducer();
  Word u = cases::sample_start(g);
  CHECK(accepts(g.initial_configurations(), u));
  int step = 0;
  for (const auto& s : cases::sample_run()) {
    CAPTURE(step);
    auto v = g.oracle_step(u, s.choice);
    REQUIRE(v);
    if (!s.prime.empty()) CHECK(*v == cases::expected(g, s));
    CHECK(delta.relates(u, *v));
    const Transducer& kind = s.choice.kind == StepKind::Mark ? mark : s.choice.kind == StepKind::Write ? write : init;
    CHECK(kind.relates(u, *v));
    u = *v;
    ++step;
  }
  CHECK(step == 21);
}

TEST_CASE("oracle steps") {
  auto g = cases::gadget("tm_example.tm");
  const Word start = cases::sample_start(g);
  // Only the first prime can be selected first; residue 2 does not exist for it.
  CHECK(!g.oracle_step(start, {StepKind::Mark, 2, 0}));
  // Write needs a good prime part.
  CHECK(!g.oracle_step(start, {StepKind::Write, 0, 1}));
  CHECK(!g.oracle_step(start, {StepKind::Init, 0, 0}));
  Word good = *g.oracle_step(*g.oracle_step(start, {StepKind::Mark, 0, 0}), {StepKind::Mark, 0, 0});
  // Position 0 is marked, so init writes # at the next marked cell (6).
  Word after = *g.oracle_step(good, {StepKind::Init, 0, 0});
  CHECK(g.cell_of(after[static_cast<std::size_t>(g.s()) + 6]) == g.hash_cell());
  // Writing with no marked cell after the window has no successor.
  Word lone = g.config("01100", {{1, "#"}, {1, "q0"}, {1, "."}, {0, "."}, {1, "."}});
  CHECK(!g.oracle_step(lone, {StepKind::Write, 0, 3}));
  // Mark with an already consistent residue leaves unmarked cells unmarked.
  Word once = *g.oracle_step(start, {StepKind::Mark, 1, 0});
  Word twice = *g.oracle_step(once, {StepKind::Mark, 1, 0});
  for (int t = 0; t < 10; ++t)
    if (g.mark_of(once[static_cast<std::size_t>(g.s() + t)]) == 1)
      CHECK(g.mark_of(twice[static_cast<std::size_t>(g.s() + t)]) == 1);
}

TEST_CASE("transducers agree with the pseudo-code on short configurations") {
  auto g = cases::gadget("tm_example.tm");
  const Transducer delta = g.transition_relation();
  std::size_t checked = 0;
  for (int len = 0; len <= 2; ++len) {
    for (const Word& u : cases::all_configs(g, len)) {
      REQUIRE(cases::transducer_successors(delta, u) == g.oracle_successors(u));
      ++checked;
    }
  }
  CHECK(checked == 32 * (1 + 14 + 14 * 14));
}

TEST_CASE("transducers agree with the pseudo-code on sampled configurations") {
  auto g = cases::gadget("tm_example.tm");
  const Transducer delta = g.transition_relation();
  std::mt19937 rng(7);
  for (int len = 3; len <= 10; ++len)
    for (int i = 0; i < 150; ++i) {
      Word u = i % 3 ? cases::biased_config(g, rng, len) : cases::random_config(g, rng, len);
      REQUIRE(cases::transducer_successors(delta, u) == g.oracle_successors(u));
    }
}

TEST_CASE("write and init are gated on one bit per prime") {
  auto g = cases::gadget("tm_example.tm");
  const Transducer write = g.write_transducer(), init = g.init_transducer();
  std::mt19937 rng(3);
  int tested = 0;
  while (tested < 200) {
    Word u = cases::random_config(g, rng, 6);
    if (g.good(u)) continue;
    CHECK(cases::transducer_successors(write, u).empty());
    CHECK(cases::transducer_successors(init, u).empty());
    ++tested;
  }
}

TEST_CASE("level constraints") {
  auto g = cases::gadget("tm_example.tm");
  Word a = g.constraint_a2(3, 10);
  CHECK(format_word(*g.levels(), a) == "011000102010102");
  for (int t = 0; t < 10; ++t) CHECK((a[static_cast<std::size_t>(5 + t)] == 2) == (t % 6 == 3));
  const SafetyInstance inst = g.instance_v2();
  for (int i = 0; i < 6; ++i)
    for (int l : {3, 8}) {
      Word w = g.constraint_a2(i, l);
      int ones1 = static_cast<int>(w[0] + w[1]), ones2 = static_cast<int>(w[2] + w[3] + w[4]);
      CHECK(ones1 == 1);
      CHECK(ones2 == 1);
      CHECK(inst.framework->in_constraints(w));
      CHECK(is_inductive(inst, w));
    }
}

TEST_CASE("level constraints are inductive against the pseudo-code") {
  auto g = cases::gadget("tm_example.tm");
  const FrameworkPtr fp = g.framework_v2();
  const auto& f = *fp;
  for (int i : {0, 1, 4})
    for (int l : {1, 2}) {
      const Word a = g.constraint_a2(i, l);
      for (const Word& u : cases::all_configs(g, l)) {
        if (!f.satisfies(a, u)) continue;
        for (const Word& v : g.oracle_successors(u)) REQUIRE(f.satisfies(a, v));
      }
    }
}

TEST_CASE("an accepting machine reaches the unsafe set") {
  auto g = cases::gadget("tm_accept.tm");
  Word u = g.config("00000", {{0, "#"}, {0, "q0"}, {0, "."}, {0, "."}, {0, "."}, {0, "."}, {0, "."}, {0, "."},
                              {0, "."}});
  REQUIRE(accepts(g.initial_configurations(), u));
  CHECK(cases::bfs_to_unsafe(g, u, 200000) > 0);
}

TEST_CASE("separator candidates for a rejecting machine") {
  auto g = cases::gadget("tm_example.tm");
  const SafetyInstance inst = g.instance();
  const auto& f = *inst.framework;
  const auto alpha = g.run_prefix(14);
  std::mt19937 rng(11);
  int checked = 0;
  for (int len : {2, 6, 9, 12, 14}) {
    std::vector<std::pair<int, std::string>> init{{0, "#"}, {0, "q0"}};
    for (int t = 2; t < len; ++t) init.emplace_back(0, ".");
    const Word u = g.config("00000", init);
    for (int pos = 0; pos < len; ++pos) {
      // Cell 1 is handled below.
      if (pos == 1) continue;
      std::vector<std::pair<int, std::string>> cells;
      for (int t = 0; t < len; ++t) cells.emplace_back(0, g.cells()->name(alpha[static_cast<std::size_t>(t)]));
      cells[static_cast<std::size_t>(pos)].second = "qf";
      const Word v = g.config("00000", cells);
      auto cand = g.separator_candidate(u, v);
      REQUIRE(cand);
      const Word a = g.combine(cand->first, cand->second);
      CAPTURE(len);
      CAPTURE(pos);
      CHECK(f.in_constraints(a));
      CHECK(f.satisfies(a, u));
      CHECK(!f.satisfies(a, v));
      CHECK(is_inductive(inst, a));
      ++checked;
    }
  }
  CHECK(checked == 38);
}

// Init overwrites cell 1 whenever cell 0 is unmarked and cell 1 is marked, so a
// single-letter q0 constraint at cell 1 cannot be made inductive. At lengths
// where only single-letter constraints exist, no separator exists at all.
TEST_CASE("a final state at cell 1 has no inductive separator at short lengths") {
  auto g = cases::gadget("tm_example.tm");
  const SafetyInstance inst = g.instance();
  const auto& f = *inst.framework;
  for (int len : {2, 3}) {
    std::vector<std::pair<int, std::string>> init{{0, "#"}, {0, "q0"}}, bad{{0, "#"}, {0, "qf"}};
    for (int t = 2; t < len; ++t) {
      init.emplace_back(0, ".");
      bad.emplace_back(0, "B");
    }
    const Word u = g.config("00000", init), v = g.config("00000", bad);
    const std::size_t total = static_cast<std::size_t>(g.s() + len);
    std::size_t separating = 0;
    for (int p = 0; p < len; ++p)
      for (Symbol y = 1; y < g.num_cells(); ++y) {
        Word a1(total, 0);
        a1[static_cast<std::size_t>(g.s() + p)] = y;
        for (const Word& a2 : oracle::words(g.levels()->size(), total)) {
          const Word a = g.combine(a1, a2);
          if (!f.in_constraints(a) || !f.satisfies(a, u) || f.satisfies(a, v)) continue;
          ++separating;
          CHECK(!is_inductive(inst, a));
        }
      }
    CAPTURE(len);
    CHECK(separating > 0);
  }
}

TEST_CASE("size bound of the non-inductive automaton") {
  auto g = cases::gadget("tm_example.tm");
  for (const SafetyInstance& inst : {g.instance(), g.instance_v2()}) {
    const std::size_t nv = inst.framework->interp_dfa().num_states();
    CHECK(non_inductive_nfa(inst).num_states() <= inst.delta.num_states() * nv * nv);
  }
}
