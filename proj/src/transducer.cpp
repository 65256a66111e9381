#include "rmc/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace rmc {

AlphabetPtr pair_alphabet(const AlphabetPtr& left, const AlphabetPtr& right) {
  // Cached so that repeated operations share one alphabet object.
  static std::mutex mu;
  static std::map<std::pair<const Alphabet*, const Alphabet*>,
                  std::tuple<std::weak_ptr<const Alphabet>, std::weak_ptr<const Alphabet>,
                             std::weak_ptr<const Alphabet>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(left.get(), right.get());
  auto it = cache.find(key);
  if (it != cache.end()) {
    auto& [l, r, p] = it->second;
    auto lp = l.lock(), rp = r.lock(), pp = p.lock();
    if (lp == left && rp == right && pp) return pp;
  }
  std::vector<std::string> names;
  names.reserve((left->size() + 1) * (right->size() + 1));
  for (Symbol a = 0; a <= left->size(); ++a)
    for (Symbol b = 0; b <= right->size(); ++b) {
      std::string x = a == left->size() ? std::string(kPadName) : left->name(a);
      std::string y = b == right->size() ? std::string(kPadName) : right->name(b);
      names.push_back(x + "/" + y);
    }
  auto result = std::make_shared<const Alphabet>(left->label() + "#x" + right->label() + "#",
                                                 std::move(names), false);
  cache[key] = {left, right, result};
  return result;
}

Transducer::Transducer(AlphabetPtr left, AlphabetPtr right, Nfa automaton)
    : left_(std::move(left)),
      right_(std::move(right)),
      codec_{left_->size(), right_->size()},
      automaton_(std::move(automaton)) {
  if (automaton_.alphabet()->size() != codec_.size()) {
    throw UsageError("transducer automaton alphabet " + automaton_.alphabet()->label() +
                     " does not match pair alphabet of " + left_->label() + " and " + right_->label());
  }
}

bool Transducer::relates(const Word& u, const Word& w) const {
  return accepts(automaton_, convolve(codec_, u, w));
}

Word convolve(const PairCodec& codec, const Word& u, const Word& w) {
  const std::size_t n = std::max(u.size(), w.size());
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Symbol a = i < u.size() ? u[i] : codec.left_pad();
    Symbol b = i < w.size() ? w[i] : codec.right_pad();
    out[i] = codec.pack(a, b);
  }
  return out;
}

std::pair<Word, Word> deconvolve(const PairCodec& codec, const Word& pairs) {
  Word u, w;
  bool u_end = false, w_end = false;
  for (Symbol p : pairs) {
    Symbol a = codec.first(p), b = codec.second(p);
    if (a == codec.left_pad() && b == codec.right_pad()) throw UsageError("pad/pad letter in convolution");
    if (a == codec.left_pad()) {
      u_end = true;
    } else {
      if (u_end) throw UsageError("interleaved pad in first track");
      u.push_back(a);
    }
    if (b == codec.right_pad()) {
      w_end = true;
    } else {
      if (w_end) throw UsageError("interleaved pad in second track");
      w.push_back(b);
    }
  }
  return {u, w};
}

Nfa valid_convolution_nfa(const AlphabetPtr& left, const AlphabetPtr& right) {
  const PairCodec c{left->size(), right->size()};
  NfaBuilder b(pair_alphabet(left, right), 3);
  // 0: both tracks running, 1: first ended, 2: second ended.
  for (Symbol x = 0; x <= c.left; ++x)
    for (Symbol y = 0; y <= c.right; ++y) {
      bool px = x == c.left_pad(), py = y == c.right_pad();
      if (px && py) continue;
      Symbol s = c.pack(x, y);
      if (!px && !py) b.add_transition(0, s, 0);
      if (px) {
        b.add_transition(0, s, 1);
        b.add_transition(1, s, 1);
      }
      if (py) {
        b.add_transition(0, s, 2);
        b.add_transition(2, s, 2);
      }
    }
  for (State q = 0; q < 3; ++q) b.set_final(q);
  b.set_initial(0);
  return std::move(b).build();
}

Transducer normalize(const Transducer& t) {
  Nfa a = intersect(t.automaton(), valid_convolution_nfa(t.left(), t.right()));
  return Transducer(t.left(), t.right(), trim(a));
}

Transducer inverse(const Transducer& t) {
  const PairCodec& c = t.codec();
  const PairCodec ci{c.right, c.left};
  const Nfa& a = t.automaton();
  NfaBuilder b(pair_alphabet(t.right(), t.left()), a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) b.add_transition(q, ci.pack(c.second(e.symbol), c.first(e.symbol)), e.target);
    for (State r : a.epsilon(q)) b.add_epsilon(q, r);
    if (a.is_final(q)) b.set_final(q);
  }
  for (State q : a.initial()) b.set_initial(q);
  return Transducer(t.right(), t.left(), std::move(b).build());
}

Transducer compose(const Transducer& t1, const Transducer& t2) {
  require_same_alphabet(t1.right(), t2.left(), "compose");
  const Transducer n1 = normalize(t1);
  const Transducer n2 = normalize(t2);
  const Nfa a1 = remove_epsilon(n1.automaton());
  const Nfa a2 = remove_epsilon(n2.automaton());
  const PairCodec& c1 = n1.codec();
  const PairCodec& c2 = n2.codec();
  const PairCodec co{c1.left, c2.right};
  const Symbol ypad = c1.right_pad();
  NfaBuilder out(pair_alphabet(t1.left(), t2.right()));
  // Key: s1, s2, first track ended, third track ended.
  struct Key {
    State s1, s2;
    bool fx, fz;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return (std::size_t{k.s1} * 1000003u) ^ (std::size_t{k.s2} << 2) ^ (k.fx ? 1 : 0) ^ (k.fz ? 2 : 0);
    }
  };
  std::unordered_map<Key, State, KeyHash> ids;
  std::deque<Key> queue;
  auto get = [&](const Key& k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    State s = out.add_state();
    ids.emplace(k, s);
    if (a1.is_final(k.s1) && a2.is_final(k.s2)) out.set_final(s);
    queue.push_back(k);
    return s;
  };
  for (State p : a1.initial())
    for (State q : a2.initial()) out.set_initial(get({p, q, false, false}));
  auto emit = [&](State from, const Key& k, Symbol a, Symbol cc, State s1, State s2) {
    const bool pa = a == c1.left_pad(), pc = cc == c2.right_pad();
    if (k.fx && !pa) return;
    if (k.fz && !pc) return;
    Key nk{s1, s2, k.fx || pa, k.fz || pc};
    State to = get(nk);
    if (pa && pc) {
      out.add_epsilon(from, to);
    } else {
      out.add_transition(from, co.pack(a, cc), to);
    }
  };
  while (!queue.empty()) {
    Key k = queue.front();
    queue.pop_front();
    State from = ids.at(k);
    // t1 moves on (a, y).
    for (const Edge& e1 : a1.edges(k.s1)) {
      Symbol a = c1.first(e1.symbol), y = c1.second(e1.symbol);
      // t2 moves on (y, c): edges with first component y are contiguous.
      auto e2s = a2.edges(k.s2);
      auto lo = std::lower_bound(e2s.begin(), e2s.end(), Edge{c2.pack(y, 0), 0});
      for (auto it = lo; it != e2s.end() && c2.first(it->symbol) == y; ++it) {
        emit(from, k, a, c2.second(it->symbol), e1.target, it->target);
      }
      // t2 has finished: only possible while the middle track is padded.
      if (y == ypad && a != c1.left_pad()) emit(from, k, a, c2.right_pad(), e1.target, k.s2);
    }
    // t1 has finished, t2 reads (pad, c).
    {
      auto e2s = a2.edges(k.s2);
      auto lo = std::lower_bound(e2s.begin(), e2s.end(), Edge{c2.pack(ypad, 0), 0});
      for (auto it = lo; it != e2s.end() && c2.first(it->symbol) == ypad; ++it) {
        Symbol cc = c2.second(it->symbol);
        if (cc == c2.right_pad()) continue;
        emit(from, k, c1.left_pad(), cc, k.s1, it->target);
      }
    }
  }
  Nfa res = trim(remove_epsilon(std::move(out).build()));
  return Transducer(t1.left(), t2.right(), std::move(res));
}

Nfa project(const Transducer& t, int track) {
  if (track != 1 && track != 2) throw UsageError("project: track must be 1 or 2");
  const Transducer n = normalize(t);
  const PairCodec& c = n.codec();
  const Nfa& a = n.automaton();
  NfaBuilder b(track == 1 ? t.left() : t.right(), a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) {
      Symbol x = track == 1 ? c.first(e.symbol) : c.second(e.symbol);
      bool pad = track == 1 ? x == c.left_pad() : x == c.right_pad();
      if (pad) {
        b.add_epsilon(q, e.target);
      } else {
        b.add_transition(q, x, e.target);
      }
    }
    for (State r : a.epsilon(q)) b.add_epsilon(q, r);
    if (a.is_final(q)) b.set_final(q);
  }
  for (State q : a.initial()) b.set_initial(q);
  return trim(remove_epsilon(std::move(b).build()));
}

Nfa image(const Nfa& cx, const Transducer& t) {
  require_same_alphabet(cx.alphabet(), t.left(), "image");
  const Nfa c = remove_epsilon(cx);
  const Transducer n = normalize(t);
  const Nfa a = remove_epsilon(n.automaton());
  const PairCodec& pc = n.codec();
  NfaBuilder out(t.right());
  std::unordered_map<std::uint64_t, State> ids;
  std::deque<std::pair<State, State>> queue;
  auto get = [&](State p, State q) {
    std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    State s = out.add_state();
    ids.emplace(key, s);
    if (c.is_final(p) && a.is_final(q)) out.set_final(s);
    queue.emplace_back(p, q);
    return s;
  };
  for (State p : c.initial())
    for (State q : a.initial()) out.set_initial(get(p, q));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    State from = ids.at((std::uint64_t{p} << 32) | q);
    for (const Edge& e : a.edges(q)) {
      Symbol x = pc.first(e.symbol), y = pc.second(e.symbol);
      auto add = [&](State p2) {
        State to = get(p2, e.target);
        if (y == pc.right_pad()) {
          out.add_epsilon(from, to);
        } else {
          out.add_transition(from, y, to);
        }
      };
      if (x == pc.left_pad()) {
        add(p);
      } else {
        for (const Edge& ce : c.edges(p, x)) add(ce.target);
      }
    }
  }
  return trim(remove_epsilon(std::move(out).build()));
}

Nfa preimage(const Transducer& t, const Nfa& c) { return image(c, inverse(t)); }

Transducer identity_on(const AlphabetPtr& alphabet) { return identity_on(universal_nfa(alphabet)); }

Transducer identity_on(const Nfa& lx) {
  const Nfa l = remove_epsilon(lx);
  const PairCodec c{l.alphabet()->size(), l.alphabet()->size()};
  NfaBuilder b(pair_alphabet(l.alphabet(), l.alphabet()), l.num_states());
  for (State q = 0; q < l.num_states(); ++q) {
    for (const Edge& e : l.edges(q)) b.add_transition(q, c.pack(e.symbol, e.symbol), e.target);
    if (l.is_final(q)) b.set_final(q);
  }
  for (State q : l.initial()) b.set_initial(q);
  return Transducer(l.alphabet(), l.alphabet(), std::move(b).build());
}

Transducer complement_relation(const Transducer& t) {
  Dfa d = complement(determinize(t.automaton()));
  Nfa a = intersect(d.to_nfa(), valid_convolution_nfa(t.left(), t.right()));
  return Transducer(t.left(), t.right(), trim(a));
}

Transducer intersect(const Transducer& a, const Transducer& b) {
  require_same_alphabet(a.left(), b.left(), "intersect");
  require_same_alphabet(a.right(), b.right(), "intersect");
  return normalize(Transducer(a.left(), a.right(), intersect(a.automaton(), b.automaton())));
}

Transducer unite(const Transducer& a, const Transducer& b) {
  require_same_alphabet(a.left(), b.left(), "unite");
  require_same_alphabet(a.right(), b.right(), "unite");
  return Transducer(a.left(), a.right(), unite(a.automaton(), b.automaton()));
}

Transducer restrict(const Transducer& t, const Nfa& fx, const Nfa& sx) {
  require_same_alphabet(fx.alphabet(), t.left(), "restrict");
  require_same_alphabet(sx.alphabet(), t.right(), "restrict");
  const Nfa f = remove_epsilon(fx), s = remove_epsilon(sx);
  const Transducer n = normalize(t);
  const Nfa a = remove_epsilon(n.automaton());
  const PairCodec& pc = n.codec();
  NfaBuilder out(a.alphabet());
  struct Key {
    State q, p, r;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::size_t{k.q} * 1000003u ^ std::size_t{k.p} * 7919u ^ k.r;
    }
  };
  std::unordered_map<Key, State, KeyHash> ids;
  std::deque<Key> queue;
  auto get = [&](Key k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    State st = out.add_state();
    ids.emplace(k, st);
    if (a.is_final(k.q) && f.is_final(k.p) && s.is_final(k.r)) out.set_final(st);
    queue.push_back(k);
    return st;
  };
  for (State q : a.initial())
    for (State p : f.initial())
      for (State r : s.initial()) out.set_initial(get({q, p, r}));
  while (!queue.empty()) {
    Key k = queue.front();
    queue.pop_front();
    State from = ids.at(k);
    for (const Edge& e : a.edges(k.q)) {
      Symbol x = pc.first(e.symbol), y = pc.second(e.symbol);
      std::vector<State> ps, rs;
      if (x == pc.left_pad()) {
        ps.push_back(k.p);
      } else {
        for (const Edge& fe : f.edges(k.p, x)) ps.push_back(fe.target);
      }
      if (y == pc.right_pad()) {
        rs.push_back(k.r);
      } else {
        for (const Edge& se : s.edges(k.r, y)) rs.push_back(se.target);
      }
      for (State p2 : ps)
        for (State r2 : rs) out.add_transition(from, e.symbol, get({e.target, p2, r2}));
    }
  }
  return Transducer(t.left(), t.right(), trim(std::move(out).build()));
}

bool is_length_preserving(const Transducer& t) {
  const Transducer n = normalize(t);
  const PairCodec& c = n.codec();
  const Nfa& a = n.automaton();
  for (State q = 0; q < a.num_states(); ++q)
    for (const Edge& e : a.edges(q))
      if (c.first_is_pad(e.symbol) || c.second_is_pad(e.symbol)) return false;
  return true;
}

EquivalenceResult equivalent(const Transducer& a, const Transducer& b) {
  return equivalent(normalize(a).automaton(), normalize(b).automaton());
}

std::set<Word> successors(const Transducer& t, const Word& u, std::size_t max_len) {
  Nfa img = image(word_nfa(t.left(), u), t);
  auto words = enumerate_words(img, max_len);
  return {words.begin(), words.end()};
}

std::string to_dot(const Transducer& t, const std::string& name) { return to_dot(t.automaton(), name); }

}  // namespace rmc
