#include <map>

#include "doctest.h"
#include "oracles.hpp"

using namespace rmc;

namespace {

AlphabetPtr ab() { return make_alphabet("ab", {"a", "b"}); }

/// Random automaton over pair letters; pads are rarer than ordinary letters.
Transducer random_transducer(std::mt19937& rng, std::size_t states, bool pads) {
  auto s = ab();
  const PairCodec c{2, 2};
  NfaBuilder b(pair_alphabet(s, s), states);
  std::uniform_int_distribution<int> pct(0, 99);
  for (State p = 0; p < states; ++p) {
    for (Symbol x = 0; x < c.size(); ++x) {
      const bool pad = c.first_is_pad(x) || c.second_is_pad(x);
      if (pad && (!pads || c.first_is_pad(x) && c.second_is_pad(x))) continue;
      for (State r = 0; r < states; ++r)
        if (pct(rng) < (pad ? 12 : 18)) b.add_transition(p, x, r);
    }
    if (pct(rng) < 35) b.set_final(p);
  }
  b.set_initial(0);
  return Transducer(s, s, std::move(b).build());
}

/// Relation by direct simulation of the raw automaton on the convolution.
bool raw_relates(const Transducer& t, const Word& u, const Word& w) {
  return oracle::nfa_accepts(t.automaton(), convolve(t.codec(), u, w));
}

using Relation = std::map<Word, std::set<Word>>;

Relation tabulate(const Transducer& t, std::size_t n) {
  Relation r;
  const auto ws = oracle::words_upto(2, n);
  for (const Word& u : ws)
    for (const Word& w : ws)
      if (t.relates(u, w)) r[u].insert(w);
  return r;
}

Transducer token_delta() { return load_instance(oracle::data("token_passing.rts")).delta; }

}  // namespace

TEST_CASE("convolution") {
  const PairCodec c{2, 2};
  auto s = ab();
  auto pairs = pair_alphabet(s, s);
  CHECK(pairs->name(c.pack(0, 2)) == "a/_");
  CHECK(pairs->name(c.pack(2, 1)) == "_/b");
  const Word conv = convolve(c, {1}, {1, 0, 0});
  CHECK(conv == Word{c.pack(1, 1), c.pack(2, 0), c.pack(2, 0)});
  CHECK(deconvolve(c, conv) == std::make_pair(Word{1}, Word{1, 0, 0}));
  CHECK_THROWS_AS(deconvolve(c, {c.pack(2, 0), c.pack(1, 0)}), UsageError);
  // Same layout as the token passing letters: "t" against "tnn".
  auto tn = make_alphabet("tn", {"n", "t"});
  const PairCodec d{2, 2};
  std::string rendered;
  for (Symbol x : convolve(d, {1}, {1, 0, 0})) rendered += pair_alphabet(tn, tn)->name(x) + " ";
  CHECK(rendered == "t/t _/n _/n ");
}

TEST_CASE("relates agrees with simulation and the result is in normal form") {
  std::mt19937 rng(5);
  const Nfa valid = valid_convolution_nfa(ab(), ab());
  for (int iter = 0; iter < 20; ++iter) {
    const Transducer t = random_transducer(rng, 2 + iter % 3, true);
    const Transducer n = normalize(t);
    CHECK(is_empty(intersect(n.automaton(), complement(valid).to_nfa())));
    for (const Word& u : oracle::words_upto(2, 4))
      for (const Word& w : oracle::words_upto(2, 4)) {
        const bool r = raw_relates(t, u, w);
        REQUIRE(t.relates(u, w) == r);
        REQUIRE(n.relates(u, w) == r);
      }
  }
}

TEST_CASE("composition agrees with the join") {
  std::mt19937 rng(6);
  for (int iter = 0; iter < 12; ++iter) {
    const bool pads = iter % 3 != 0;
    const Transducer t1 = random_transducer(rng, 2 + iter % 2, pads);
    const Transducer t2 = random_transducer(rng, 2 + (iter / 2) % 2, pads);
    const Transducer c = compose(t1, t2);
    // Middle words up to length 7.
    const Relation r1 = tabulate(t1, 7), r2 = tabulate(t2, 7);
    CHECK(is_empty(intersect(c.automaton(), complement(valid_convolution_nfa(ab(), ab())).to_nfa())));
    for (const Word& u : oracle::words_upto(2, 5)) {
      std::set<Word> joined;
      auto it = r1.find(u);
      if (it != r1.end())
        for (const Word& y : it->second) {
          auto jt = r2.find(y);
          if (jt == r2.end()) continue;
          for (const Word& z : jt->second)
            if (z.size() <= 5) joined.insert(z);
        }
      for (const Word& w : oracle::words_upto(2, 5)) REQUIRE(c.relates(u, w) == joined.count(w) > 0);
    }
    if (!pads) {
      CHECK(is_length_preserving(c));
      CHECK(c.num_states() <= t1.num_states() * t2.num_states());
    }
  }
}

TEST_CASE("relation operations") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 10; ++iter) {
    const Transducer a = random_transducer(rng, 3, true), b = random_transducer(rng, 2, true);
    const Transducer inv = inverse(a), comp = complement_relation(a), in = intersect(a, b), un = unite(a, b);
    const Nfa first = word_nfa(ab(), {0}), second = universal_nfa(ab());
    const Transducer re = restrict(a, unite(first, word_nfa(ab(), {0, 1})), second);
    const Nfa dom = project(a, 1), ran = project(a, 2);
    const auto small = oracle::words_upto(2, 4);
    for (const Word& u : small) {
      bool any_w = false;
      for (const Word& w : small) {
        const bool r = a.relates(u, w), s = b.relates(u, w);
        any_w = any_w || r;
        REQUIRE(inv.relates(w, u) == r);
        REQUIRE(comp.relates(u, w) == !r);
        REQUIRE(in.relates(u, w) == (r && s));
        REQUIRE(un.relates(u, w) == (r || s));
        REQUIRE(re.relates(u, w) == (r && (u == Word{0} || u == Word{0, 1})));
      }
      // Domain words up to length 4 whose witness has length up to 4.
      if (any_w) CHECK(accepts(dom, u));
    }
    for (const Word& u : small)
      if (accepts(dom, u)) {
        bool found = false;
        for (const Word& w : oracle::words_upto(2, 7)) found = found || a.relates(u, w);
        CHECK(found);
      }
    (void)ran;
    CHECK(equivalent(a, inverse(inverse(a))).equal);
    CHECK(equivalent(a, normalize(a)).equal);
    CHECK(!equivalent(a, comp).equal);
  }
}

TEST_CASE("image and preimage agree with one-step enumeration") {
  const Transducer d = token_delta();
  const AlphabetPtr s = d.left();
  CHECK(d.num_states() == 3);
  CHECK(is_length_preserving(d));
  for (const Word& u : oracle::words_upto(2, 6)) {
    const auto succ = oracle::successors(d, u);
    const Nfa img = image(word_nfa(s, u), d);
    std::set<Word> got;
    for (const Word& w : enumerate_words(img, 6)) got.insert(w);
    CHECK(got == std::set<Word>(succ.begin(), succ.end()));
    std::set<Word> pre_expected;
    for (const Word& p : oracle::words(2, u.size()))
      if (d.relates(p, u)) pre_expected.insert(p);
    std::set<Word> pre;
    for (const Word& w : enumerate_words(preimage(d, word_nfa(s, u)), 6)) pre.insert(w);
    CHECK(pre == pre_expected);
  }
  // "t n n" moves to "n t n".
  CHECK(d.relates(parse_word(*s, "tnn"), parse_word(*s, "ntn")));
  CHECK(!d.relates(parse_word(*s, "tnn"), parse_word(*s, "nnt")));
  CHECK(successors(d, parse_word(*s, "tn"), 5) == std::set<Word>{parse_word(*s, "nt")});
}

TEST_CASE("identity and length preservation") {
  auto s = ab();
  const Transducer id = identity_on(s);
  CHECK(is_length_preserving(id));
  CHECK(id.relates({0, 1}, {0, 1}));
  CHECK(!id.relates({0, 1}, {0, 0}));
  const Transducer idl = identity_on(word_nfa(s, {1}));
  CHECK(idl.relates({1}, {1}));
  CHECK(!idl.relates({0}, {0}));
  const Transducer growth = load_instance(oracle::data("growth.rts")).delta;
  CHECK(!is_length_preserving(growth));
  CHECK(to_dot(growth).find("/_") != std::string::npos);
}

TEST_CASE("composition of mismatched alphabets is rejected") {
  auto s = ab();
  auto c = make_alphabet("c", {"c"});
  CHECK_THROWS_AS(compose(identity_on(s), identity_on(c)), UsageError);
}
