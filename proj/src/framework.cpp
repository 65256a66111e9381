#include "rmc/framework.hpp"

#include <algorithm>

#include "state_index.hpp"

namespace rmc {

namespace {

Dfa deterministic_interp(const Transducer& t) {
  const Nfa& a = t.automaton();
  if (a.has_epsilon() || a.initial().size() != 1) {
    throw UsageError("interpretation transducer must be deterministic (one initial state, no epsilon moves)");
  }
  const std::size_t k = a.alphabet()->size();
  bool incomplete = false;
  for (State q = 0; q < a.num_states(); ++q) {
    std::vector<int> count(k, 0);
    for (const Edge& e : a.edges(q))
      if (++count[e.symbol] > 1)
        throw UsageError("interpretation transducer is not deterministic at state " + std::to_string(q));
    for (int c : count)
      if (!c) incomplete = true;
  }
  const std::size_t n = a.num_states() + (incomplete ? 1 : 0);
  const State sink = static_cast<State>(a.num_states());
  Dfa d(a.alphabet(), n, a.initial()[0]);
  for (State q = 0; q < n; ++q)
    for (Symbol s = 0; s < k; ++s) d.set_next(q, s, sink);
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) d.set_next(q, e.symbol, e.target);
    d.set_final(q, a.is_final(q));
  }
  return d;
}

/// Interpretation built from a complete step function over pair letters.
template <class Key, class Hash, class Step, class Final>
Dfa explore(const AlphabetPtr& pairs, const Key& init, Step step, Final is_final) {
  detail::StateIndex<Key, Hash> idx;
  idx.insert(init);
  std::vector<State> delta;
  const std::size_t k = pairs->size();
  for (std::size_t cur = 0; cur < idx.size(); ++cur) {
    Key key = idx.key(static_cast<State>(cur));
    for (Symbol s = 0; s < k; ++s) delta.push_back(idx.get(step(key, s)));
  }
  Dfa d(pairs, idx.size(), 0);
  for (State q = 0; q < idx.size(); ++q) {
    for (Symbol s = 0; s < k; ++s) d.set_next(q, s, delta[q * k + s]);
    d.set_final(q, is_final(idx.key(q)));
  }
  return d;
}

struct IntHash {
  std::size_t operator()(int x) const { return std::hash<int>()(x); }
};

}  // namespace

Framework::Framework(std::string name, AlphabetPtr sigma, AlphabetPtr gamma, Nfa constraints, Transducer interp)
    : name_(std::move(name)),
      sigma_(std::move(sigma)),
      gamma_(std::move(gamma)),
      constraints_(std::move(constraints)),
      constraints_dfa_(minimize(constraints_)),
      interp_(interp),
      interp_dfa_(deterministic_interp(interp)) {
  require_same_alphabet(constraints_.alphabet(), gamma_, "framework constraints");
  require_same_alphabet(interp_.left(), gamma_, "framework interpretation");
  require_same_alphabet(interp_.right(), sigma_, "framework interpretation");
  if (interp_dfa_.num_states() != interp_.num_states()) {
    interp_ = Transducer(gamma_, sigma_, interp_dfa_.to_nfa());
  }
}

bool Framework::satisfies(const Word& a, const Word& c) const {
  return accepts(interp_dfa_, convolve(codec(), a, c));
}

Nfa Framework::interpret(const Word& a) const {
  if (!in_constraints(a)) throw UsageError("interpret: " + format_word(*gamma_, a) + " is not a constraint of " + name_);
  return image(word_nfa(gamma_, a), interp_);
}

FrameworkPtr disjunctive_framework(const AlphabetPtr& sigma, int b) {
  if (b < 1) throw UsageError("disj: b must be at least 1");
  if (b > 1) {
    FrameworkPtr f = disjunctive_framework(sigma, 1);
    FrameworkPtr acc = f;
    for (int i = 1; i < b; ++i) acc = convolution_framework(acc, f);
    return std::make_shared<const Framework>("disj=" + std::to_string(b), acc->sigma(), acc->gamma(),
                                             acc->constraints(), acc->interp());
  }
  AlphabetPtr gamma = powerset_alphabet(sigma);
  AlphabetPtr pairs = pair_alphabet(gamma, sigma);
  const PairCodec c{gamma->size(), sigma->size()};
  // 0: no match yet, 1: satisfied (a match or a length mismatch).
  NfaBuilder nb(pairs, 2);
  for (Symbol g = 0; g <= c.left; ++g)
    for (Symbol s = 0; s <= c.right; ++s) {
      Symbol p = c.pack(g, s);
      bool pad = g == c.left_pad() || s == c.right_pad();
      bool hit = !pad && ((g >> s) & 1u);
      nb.add_transition(0, p, pad || hit ? 1 : 0);
      nb.add_transition(1, p, 1);
    }
  nb.set_initial(0);
  nb.set_final(1);
  Transducer interp(gamma, sigma, std::move(nb).build());
  return std::make_shared<const Framework>("disj=1", sigma, gamma, universal_nfa(gamma), interp);
}

FrameworkPtr xor_framework(const AlphabetPtr& sigma) {
  AlphabetPtr gamma = powerset_alphabet(sigma);
  AlphabetPtr pairs = pair_alphabet(gamma, sigma);
  const PairCodec c{gamma->size(), sigma->size()};
  // 0: no match, 1: one match, 2: length mismatch, 3: two or more matches.
  // Any length mismatch satisfies the constraint, as for the disjunctive one.
  NfaBuilder nb(pairs, 4);
  for (Symbol g = 0; g <= c.left; ++g)
    for (Symbol s = 0; s <= c.right; ++s) {
      Symbol p = c.pack(g, s);
      bool pad = g == c.left_pad() || s == c.right_pad();
      bool hit = !pad && ((g >> s) & 1u);
      nb.add_transition(0, p, pad ? 2 : hit ? 1 : 0);
      nb.add_transition(1, p, pad ? 2 : hit ? 3 : 1);
      nb.add_transition(2, p, 2);
      nb.add_transition(3, p, pad ? 2 : 3);
    }
  nb.set_initial(0);
  nb.set_final(1);
  nb.set_final(2);
  Transducer interp(gamma, sigma, std::move(nb).build());
  return std::make_shared<const Framework>("xor", sigma, gamma, universal_nfa(gamma), interp);
}

FrameworkPtr views_framework(const AlphabetPtr& sigma, int k) {
  if (k < 0) throw UsageError("views: k must be non-negative");
  std::vector<Word> views{Word{}};
  for (std::size_t len = 1, start = 0; static_cast<int>(len) <= k; ++len) {
    std::size_t end = views.size();
    for (std::size_t i = start; i < end; ++i)
      for (Symbol s = 0; s < sigma->size(); ++s) {
        Word w = views[i];
        w.push_back(s);
        views.push_back(w);
      }
    start = end;
    if (views.size() > 16) break;
  }
  if (views.size() > 16) {
    throw UsageError("views=" + std::to_string(k) + ": more than 16 views over alphabet " + sigma->label());
  }
  std::vector<std::string> view_names;
  for (const Word& w : views) view_names.push_back(w.empty() ? "eps" : format_word(*sigma, w));
  AlphabetPtr view_alpha = make_alphabet("views", view_names);
  AlphabetPtr gamma = powerset_alphabet(view_alpha);
  AlphabetPtr pairs = pair_alphabet(gamma, sigma);
  const PairCodec c{gamma->size(), sigma->size()};
  const std::size_t nv = views.size();
  // Key: [mode, F, progress...]; mode 0 start, 1 running, 2 violated, 3 length mismatch.
  using Key = std::vector<int>;
  auto advance = [&](Key key, Symbol s) {
    for (std::size_t v = 0; v < nv; ++v) {
      int& m = key[2 + v];
      if (m >= 0 && m < static_cast<int>(views[v].size()) && views[v][m] == s) ++m;
    }
    return key;
  };
  auto violated = [&](const Key& key) {
    for (std::size_t v = 0; v < nv; ++v)
      if (key[2 + v] == static_cast<int>(views[v].size())) return true;
    return false;
  };
  Key start(2 + nv, -1);
  start[0] = 0;
  auto step = [&](const Key& key, Symbol p) -> Key {
    Symbol g = c.first(p), s = c.second(p);
    if (key[0] >= 2) return key;
    if (g == c.left_pad() || s == c.right_pad()) {
      Key k2(2 + nv, -1);
      k2[0] = 3;
      return k2;
    }
    Key k2 = key;
    if (key[0] == 0) {
      k2[0] = 1;
      k2[1] = static_cast<int>(g);
      for (std::size_t v = 0; v < nv; ++v) k2[2 + v] = ((g >> v) & 1u) ? 0 : -1;
    }
    k2 = advance(k2, s);
    if (violated(k2)) {
      Key dead(2 + nv, -1);
      dead[0] = 2;
      return dead;
    }
    return k2;
  };
  auto is_final = [&](const Key& key) {
    if (key[0] == 1) return !violated(key);
    return key[0] == 0 || key[0] == 3;
  };
  Dfa d = minimize(explore<Key, detail::VectorHash>(pairs, start, step, is_final));
  // Only constant words F^l are constraints; F containing eps is kept (empty at every length).
  NfaBuilder cb(gamma, 1 + gamma->size());
  cb.set_initial(0);
  cb.set_final(0);
  for (Symbol g = 0; g < gamma->size(); ++g) {
    cb.add_transition(0, g, 1 + g);
    cb.add_transition(1 + g, g, 1 + g);
    cb.set_final(1 + g);
  }
  return std::make_shared<const Framework>("views=" + std::to_string(k), sigma, gamma, std::move(cb).build(),
                                           Transducer(gamma, sigma, d.to_nfa()));
}

FrameworkPtr union_framework(const FrameworkPtr& f1, const FrameworkPtr& f2) {
  require_same_alphabet(f1->sigma(), f2->sigma(), "union framework");
  AlphabetPtr sigma = f1->sigma();
  AlphabetPtr gamma = tagged_union_alphabet(f1->gamma(), f2->gamma());
  AlphabetPtr pairs = pair_alphabet(gamma, sigma);
  const PairCodec c{gamma->size(), sigma->size()};
  const Dfa& d1 = f1->interp_dfa();
  const Dfa& d2 = f2->interp_dfa();
  const PairCodec c1 = f1->codec(), c2 = f2->codec();
  const std::size_t g1 = f1->gamma()->size();
  const State n1 = static_cast<State>(d1.num_states()), n2 = static_cast<State>(d2.num_states());
  // States: Q1, then Q2, then the fresh initial q0 and the dead state.
  const State q0 = n1 + n2, dead = n1 + n2 + 1;
  const bool eps1 = f1->in_constraints({});
  const bool eps2 = !eps1 && f2->in_constraints({});
  NfaBuilder nb(pairs, n1 + n2 + 2);
  auto side1 = [&](State q, Symbol g, Symbol s) {
    Symbol gg = g == c.left_pad() ? c1.left_pad() : g;
    Symbol ss = s == c.right_pad() ? c1.right_pad() : s;
    return d1.next(q, c1.pack(gg, ss));
  };
  auto side2 = [&](State q, Symbol g, Symbol s) {
    Symbol gg = g == c.left_pad() ? c2.left_pad() : g - static_cast<Symbol>(g1);
    Symbol ss = s == c.right_pad() ? c2.right_pad() : s;
    return n1 + d2.next(q, c2.pack(gg, ss));
  };
  for (Symbol g = 0; g <= c.left; ++g)
    for (Symbol s = 0; s <= c.right; ++s) {
      Symbol p = c.pack(g, s);
      const bool pad_g = g == c.left_pad();
      const bool from1 = !pad_g && g < g1;
      for (State q = 0; q < n1; ++q) nb.add_transition(q, p, pad_g || from1 ? side1(q, g, s) : dead);
      for (State q = 0; q < n2; ++q) nb.add_transition(n1 + q, p, pad_g || !from1 ? side2(q, g, s) : dead);
      State t = dead;
      if (from1) {
        t = side1(d1.initial(), g, s);
      } else if (!pad_g) {
        t = side2(d2.initial(), g, s);
      } else if (s != c.right_pad() && eps1) {
        t = side1(d1.initial(), g, s);
      } else if (s != c.right_pad() && eps2) {
        t = side2(d2.initial(), g, s);
      }
      nb.add_transition(q0, p, t);
      nb.add_transition(dead, p, dead);
    }
  for (State q = 0; q < n1; ++q) nb.set_final(q, d1.is_final(q));
  for (State q = 0; q < n2; ++q) nb.set_final(n1 + q, d2.is_final(q));
  nb.set_final(q0, (eps1 && d1.is_final(d1.initial())) || (eps2 && d2.is_final(d2.initial())));
  nb.set_initial(q0);
  // Constraint language: tagged copies.
  const Nfa& a1 = f1->constraints();
  const Nfa& a2 = f2->constraints();
  NfaBuilder cb(gamma, a1.num_states() + a2.num_states());
  const State off = static_cast<State>(a1.num_states());
  for (State q = 0; q < a1.num_states(); ++q) {
    for (const Edge& e : a1.edges(q)) cb.add_transition(q, e.symbol, e.target);
    for (State r : a1.epsilon(q)) cb.add_epsilon(q, r);
    if (a1.is_final(q)) cb.set_final(q);
  }
  for (State q = 0; q < a2.num_states(); ++q) {
    for (const Edge& e : a2.edges(q)) cb.add_transition(off + q, e.symbol + static_cast<Symbol>(g1), off + e.target);
    for (State r : a2.epsilon(q)) cb.add_epsilon(off + q, off + r);
    if (a2.is_final(q)) cb.set_final(off + q);
  }
  for (State q : a1.initial()) cb.set_initial(q);
  for (State q : a2.initial()) cb.set_initial(off + q);
  return std::make_shared<const Framework>("union(" + f1->name() + "," + f2->name() + ")", sigma, gamma,
                                           std::move(cb).build(), Transducer(gamma, sigma, std::move(nb).build()));
}

FrameworkPtr convolution_framework(const FrameworkPtr& f1, const FrameworkPtr& f2) {
  require_same_alphabet(f1->sigma(), f2->sigma(), "convolution framework");
  AlphabetPtr sigma = f1->sigma();
  AlphabetPtr gamma = product_alphabet(f1->gamma(), f2->gamma());
  AlphabetPtr pairs = pair_alphabet(gamma, sigma);
  const PairCodec c{gamma->size(), sigma->size()};
  const Dfa& d1 = f1->interp_dfa();
  const Dfa& d2 = f2->interp_dfa();
  const PairCodec c1 = f1->codec(), c2 = f2->codec();
  const std::size_t g2 = f2->gamma()->size();
  using Key = std::uint64_t;
  auto step = [&](Key key, Symbol p) -> Key {
    State q1 = static_cast<State>(key >> 32), q2 = static_cast<State>(key & 0xffffffffu);
    Symbol g = c.first(p), s = c.second(p);
    Symbol x1 = g == c.left_pad() ? c1.left_pad() : static_cast<Symbol>(g / g2);
    Symbol x2 = g == c.left_pad() ? c2.left_pad() : static_cast<Symbol>(g % g2);
    Symbol s1 = s == c.right_pad() ? c1.right_pad() : s;
    Symbol s2 = s == c.right_pad() ? c2.right_pad() : s;
    return (Key{d1.next(q1, c1.pack(x1, s1))} << 32) | d2.next(q2, c2.pack(x2, s2));
  };
  auto is_final = [&](Key key) {
    return d1.is_final(static_cast<State>(key >> 32)) && d2.is_final(static_cast<State>(key & 0xffffffffu));
  };
  Key init = (Key{d1.initial()} << 32) | d2.initial();
  Dfa d = explore<Key, std::hash<Key>>(pairs, init, step, is_final);
  // Constraints: equal-length pairs.
  const Nfa a1 = remove_epsilon(f1->constraints());
  const Nfa a2 = remove_epsilon(f2->constraints());
  NfaBuilder cb(gamma);
  detail::StateIndex<std::uint64_t> idx;
  std::vector<std::uint64_t> queue;
  auto get = [&](State p, State q) {
    std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto [id, fresh] = idx.insert(key);
    if (fresh) {
      cb.add_state();
      if (a1.is_final(p) && a2.is_final(q)) cb.set_final(id);
      queue.push_back(key);
    }
    return id;
  };
  for (State p : a1.initial())
    for (State q : a2.initial()) cb.set_initial(get(p, q));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::uint64_t key = queue[i];
    State p = static_cast<State>(key >> 32), q = static_cast<State>(key & 0xffffffffu);
    State from = idx.get(key);
    for (const Edge& e1 : a1.edges(p))
      for (const Edge& e2 : a2.edges(q))
        cb.add_transition(from, static_cast<Symbol>(e1.symbol * g2 + e2.symbol), get(e1.target, e2.target));
  }
  return std::make_shared<const Framework>("conv(" + f1->name() + "," + f2->name() + ")", sigma, gamma,
                                           trim(std::move(cb).build()), Transducer(gamma, sigma, d.to_nfa()));
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

int parse_int(const std::string& s, const std::string& spec) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("framework spec '" + spec + "': expected an integer, got '" + s + "'");
  }
}

}  // namespace

FrameworkPtr parse_framework_spec(const std::string& raw, const AlphabetPtr& sigma, const FrameworkLoader& loader) {
  const std::string spec = strip(raw);
  if (spec == "xor") return xor_framework(sigma);
  if (spec.rfind("disj=", 0) == 0) return disjunctive_framework(sigma, parse_int(spec.substr(5), spec));
  if (spec.rfind("views=", 0) == 0) return views_framework(sigma, parse_int(spec.substr(6), spec));
  if (spec.rfind("file=", 0) == 0) {
    if (!loader) throw UsageError("framework spec '" + spec + "': no file loader available");
    return loader(spec.substr(5), sigma);
  }
  for (const char* op : {"union", "conv"}) {
    const std::string head = std::string(op) + "(";
    if (spec.rfind(head, 0) != 0) continue;
    if (spec.back() != ')') throw UsageError("framework spec '" + spec + "': missing ')'");
    const std::string inner = spec.substr(head.size(), spec.size() - head.size() - 1);
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (depth < 0) throw UsageError("framework spec '" + spec + "': unbalanced parentheses");
      if (inner[i] == ',' && depth == 0) {
        if (split != std::string::npos) throw UsageError("framework spec '" + spec + "': expected two arguments");
        split = i;
      }
    }
    if (depth != 0 || split == std::string::npos) {
      throw UsageError("framework spec '" + spec + "': expected two arguments");
    }
    FrameworkPtr a = parse_framework_spec(inner.substr(0, split), sigma, loader);
    FrameworkPtr b = parse_framework_spec(inner.substr(split + 1), sigma, loader);
    return std::string(op) == "union" ? union_framework(a, b) : convolution_framework(a, b);
  }
  throw UsageError("unknown framework spec '" + spec + "'");
}

}  // namespace rmc
