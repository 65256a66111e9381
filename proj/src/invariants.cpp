#include "rmc/invariants.hpp"

#include <deque>
#include <unordered_set>

#include "state_index.hpp"

namespace rmc {

void validate(const SafetyInstance& inst) {
  if (!inst.framework) throw UsageError("instance " + inst.name + " has no framework");
  require_same_alphabet(inst.delta.left(), inst.sigma, "transition relation");
  require_same_alphabet(inst.delta.right(), inst.sigma, "transition relation");
  require_same_alphabet(inst.c_init.alphabet(), inst.sigma, "initial configurations");
  require_same_alphabet(inst.c_unsafe.alphabet(), inst.sigma, "unsafe configurations");
  require_same_alphabet(inst.framework->sigma(), inst.sigma, "framework");
}

namespace {

/**
 * Reads a constraint A while guessing a configuration c and a successor
 * c'. p runs V on (A, c), q runs delta on (c, c'), r runs V on (A, c').
 * Mode 0: all tracks may continue. Mode 1: A has ended, moves are silent.
 * Mode 2: c and c' have ended, delta stopped in a final state.
 */
class NonInductiveProduct {
 public:
  struct Key {
    State p, q, r;
    std::uint8_t mode;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.p;
      h = h * 1000003u ^ k.q;
      h = h * 1000003u ^ k.r;
      return h * 31u + k.mode;
    }
  };
  static constexpr Symbol kEps = UINT32_MAX;

  explicit NonInductiveProduct(const SafetyInstance& inst)
      : v_(inst.framework->interp_dfa()),
        vc_(inst.framework->codec()),
        delta_(remove_epsilon(normalize(inst.delta).automaton())),
        dc_(inst.delta.codec()),
        gamma_size_(inst.framework->gamma()->size()) {}

  std::vector<Key> initial() const {
    std::vector<Key> out;
    for (State q : delta_.initial()) out.push_back({v_.initial(), q, v_.initial(), 0});
    return out;
  }

  bool is_final(const Key& k) const {
    return v_.is_final(k.p) && !v_.is_final(k.r) && (k.mode == 2 || delta_.is_final(k.q));
  }

  /// Calls f(symbol or kEps, next). `only` restricts the constraint letter (kEps: any).
  template <class F>
  void successors(const Key& k, Symbol only, F&& f) const {
    const Symbol apad = vc_.left_pad();
    auto vstep = [&](State s, Symbol a, Symbol x) {
      if (a == apad && x == vc_.right_pad()) return s;
      return v_.next(s, vc_.pack(a, x));
    };
    auto letters = [&](auto&& g) {
      if (only != kEps) {
        g(only);
      } else {
        for (Symbol a = 0; a < gamma_size_; ++a) g(a);
      }
    };
    if (k.mode == 2) {
      letters([&](Symbol a) {
        f(a, Key{vstep(k.p, a, vc_.right_pad()), 0, vstep(k.r, a, vc_.right_pad()), 2});
      });
      return;
    }
    for (const Edge& e : delta_.edges(k.q)) {
      Symbol x = dc_.first(e.symbol), y = dc_.second(e.symbol);
      // Delta tracks use sigma ids with their own pad; map pads to V's sigma pad.
      Symbol xv = x == dc_.left_pad() ? vc_.right_pad() : x;
      Symbol yv = y == dc_.right_pad() ? vc_.right_pad() : y;
      // A has ended: silent move.
      f(kEps, Key{vstep(k.p, apad, xv), e.target, vstep(k.r, apad, yv), 1});
      if (k.mode == 1) continue;
      letters([&](Symbol a) { f(a, Key{vstep(k.p, a, xv), e.target, vstep(k.r, a, yv), 0}); });
    }
    if (k.mode == 0 && delta_.is_final(k.q)) {
      letters([&](Symbol a) {
        f(a, Key{vstep(k.p, a, vc_.right_pad()), 0, vstep(k.r, a, vc_.right_pad()), 2});
      });
    }
  }

 private:
  const Dfa& v_;
  PairCodec vc_;
  Nfa delta_;
  PairCodec dc_;
  std::size_t gamma_size_;
};

}  // namespace

Nfa non_inductive_nfa(const SafetyInstance& inst) {
  validate(inst);
  NonInductiveProduct prod(inst);
  using Key = NonInductiveProduct::Key;
  detail::StateIndex<Key, NonInductiveProduct::KeyHash> idx;
  NfaBuilder b(inst.framework->gamma());
  auto get = [&](const Key& k) {
    auto [id, fresh] = idx.insert(k);
    if (fresh) {
      b.add_state();
      if (prod.is_final(k)) b.set_final(id);
    }
    return id;
  };
  for (const Key& k : prod.initial()) b.set_initial(get(k));
  for (std::size_t cur = 0; cur < idx.size(); ++cur) {
    const Key k = idx.key(static_cast<State>(cur));
    prod.successors(k, NonInductiveProduct::kEps, [&](Symbol a, const Key& next) {
      State to = get(next);
      if (a == NonInductiveProduct::kEps) {
        b.add_epsilon(static_cast<State>(cur), to);
      } else {
        b.add_transition(static_cast<State>(cur), a, to);
      }
    });
  }
  return trim(remove_epsilon(std::move(b).build()));
}

Nfa non_inductive_nfa_by_composition(const SafetyInstance& inst) {
  validate(inst);
  const Transducer& v = inst.framework->interp();
  Transducer step = compose(v, inst.delta);
  step = compose(step, complement_relation(inverse(v)));
  step = intersect(step, identity_on(inst.framework->gamma()));
  return trim(project(step, 1));
}

namespace {
Dfa inductive_from(const SafetyInstance& inst, const Nfa& bad) {
  // Restricting to constraints first keeps the subset construction small.
  const Dfa& a = inst.framework->constraints_dfa();
  Dfa d = determinize(trim(intersect(bad, a.to_nfa())));
  return minimize(intersect(a, complement(d)));
}
}  // namespace

Dfa inductive_dfa(const SafetyInstance& inst) { return inductive_from(inst, non_inductive_nfa(inst)); }

bool is_inductive(const SafetyInstance& inst, const Word& a) {
  validate(inst);
  if (!inst.framework->in_constraints(a)) {
    throw UsageError("is_inductive: word '" + format_word(*inst.framework->gamma(), a) +
                     "' is not in the constraint language");
  }
  NonInductiveProduct prod(inst);
  using Key = NonInductiveProduct::Key;
  using Set = std::unordered_set<Key, NonInductiveProduct::KeyHash>;
  Set cur;
  for (const Key& k : prod.initial()) cur.insert(k);
  for (Symbol s : a) {
    Set next;
    for (const Key& k : cur) {
      prod.successors(k, s, [&](Symbol sym, const Key& n) {
        if (sym == s) next.insert(n);
      });
    }
    cur = std::move(next);
    if (cur.empty()) return true;
  }
  // Silent tail: configurations longer than the constraint.
  std::vector<Key> stack(cur.begin(), cur.end());
  while (!stack.empty()) {
    Key k = stack.back();
    stack.pop_back();
    if (prod.is_final(k)) return false;
    prod.successors(k, 0, [&](Symbol sym, const Key& n) {
      if (sym == NonInductiveProduct::kEps && cur.insert(n).second) stack.push_back(n);
    });
  }
  return true;
}

Transducer not_preach_transducer(const SafetyInstance& inst, const Nfa& ind_lang_raw) {
  validate(inst);
  require_same_alphabet(ind_lang_raw.alphabet(), inst.framework->gamma(), "not_preach_transducer");
  const Nfa h = remove_epsilon(ind_lang_raw);
  const Dfa& v = inst.framework->interp_dfa();
  const PairCodec vc = inst.framework->codec();
  const std::size_t ns = inst.sigma->size();
  const std::size_t ng = inst.framework->gamma()->size();
  const PairCodec oc{ns, ns};
  const Symbol spad = static_cast<Symbol>(ns), apad = static_cast<Symbol>(ng);
  struct Key {
    State p, h, r;
    std::uint8_t flags;  // 1: c ended, 2: c' ended, 4: A ended
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return ((std::size_t{k.p} * 1000003u ^ k.h) * 1000003u ^ k.r) * 8u + k.flags;
    }
  };
  detail::StateIndex<Key, KeyHash> idx;
  NfaBuilder b(pair_alphabet(inst.sigma, inst.sigma));
  auto get = [&](const Key& k) {
    auto [id, fresh] = idx.insert(k);
    if (fresh) {
      b.add_state();
      if (v.is_final(k.p) && !v.is_final(k.r) && h.is_final(k.h)) b.set_final(id);
    }
    return id;
  };
  auto vstep = [&](State s, Symbol a, Symbol x) {
    if (a == apad && x == spad) return s;
    return v.next(s, vc.pack(a, x));
  };
  for (State q : h.initial()) b.set_initial(get({v.initial(), q, v.initial(), 0}));
  for (std::size_t cur = 0; cur < idx.size(); ++cur) {
    const Key k = idx.key(static_cast<State>(cur));
    for (Symbol x = 0; x <= ns; ++x) {
      if ((k.flags & 1) && x != spad) continue;
      for (Symbol y = 0; y <= ns; ++y) {
        if ((k.flags & 2) && y != spad) continue;
        auto emit = [&](Symbol a, State h2) {
          std::uint8_t fl = k.flags | (x == spad ? 1 : 0) | (y == spad ? 2 : 0) | (a == apad ? 4 : 0);
          State to = get({vstep(k.p, a, x), h2, vstep(k.r, a, y), fl});
          if (x == spad && y == spad) {
            b.add_epsilon(static_cast<State>(cur), to);
          } else {
            b.add_transition(static_cast<State>(cur), oc.pack(x, y), to);
          }
        };
        if (!(x == spad && y == spad)) emit(apad, k.h);
        if (k.flags & 4) continue;
        for (const Edge& e : h.edges(k.h)) {
          if (e.symbol >= ng) continue;
          emit(e.symbol, e.target);
        }
      }
    }
  }
  return Transducer(inst.sigma, inst.sigma, trim(remove_epsilon(std::move(b).build())));
}

Transducer preach_transducer(const SafetyInstance& inst, const Nfa& ind_lang) {
  Transducer bad = not_preach_transducer(inst, ind_lang);
  Dfa good = minimize(intersect(complement(determinize(bad.automaton())),
                                determinize(valid_convolution_nfa(inst.sigma, inst.sigma))));
  return Transducer(inst.sigma, inst.sigma, trim(good.to_nfa()));
}

SafetyCheck check_with_constraints(const SafetyInstance& inst, const Nfa& ind_lang) {
  SafetyCheck res;
  Transducer preach = preach_transducer(inst, ind_lang);
  res.preach_sizes = minimal_sizes(preach.automaton());
  Nfa bad = intersect(image(inst.c_init, preach), inst.c_unsafe);
  auto w = shortest_accepted(bad);
  if (!w) {
    res.safe = true;
    return res;
  }
  res.unsafe = *w;
  Nfa sources = project(restrict(preach, inst.c_init, word_nfa(inst.sigma, *w)), 1);
  auto c = shortest_accepted(sources);
  if (!c) throw std::logic_error("check_with_constraints: witness without a source");
  res.initial = *c;
  return res;
}

Verdict abstract_safety_direct(const SafetyInstance& inst) {
  validate(inst);
  Verdict v;
  Nfa bad = non_inductive_nfa(inst);
  v.stats["nonind.states"] = bad.num_states();
  Dfa ind = inductive_from(inst, bad);
  DfaSizes is = minimal_sizes(ind);
  v.stats["ind.complete"] = is.complete;
  v.stats["ind.trim"] = is.trim;
  SafetyCheck chk = check_with_constraints(inst, ind.to_nfa());
  v.stats["preach.complete"] = chk.preach_sizes.complete;
  v.stats["preach.trim"] = chk.preach_sizes.trim;
  v.safe = chk.safe;
  if (chk.safe) {
    v.certificate = ind;
  } else {
    v.witness_initial = chk.initial;
    v.witness_unsafe = chk.unsafe;
  }
  return v;
}

}  // namespace rmc
