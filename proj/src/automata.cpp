#include "rmc/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace rmc {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<State>& v) const {
    std::size_t h = v.size();
    for (State x : v) h = h * 1000003u ^ (x + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- builder

NfaBuilder::NfaBuilder(AlphabetPtr alphabet, std::size_t states) : alphabet_(std::move(alphabet)) {
  add_states(states);
}

State NfaBuilder::add_state() {
  out_.emplace_back();
  eps_.emplace_back();
  initial_.push_back(0);
  final_.push_back(0);
  return static_cast<State>(out_.size() - 1);
}

void NfaBuilder::add_states(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_state();
}

void NfaBuilder::add_transition(State from, Symbol symbol, State to) {
  if (symbol >= alphabet_->size()) throw UsageError("symbol out of range for alphabet " + alphabet_->label());
  out_.at(from).push_back({symbol, to});
  (void)out_.at(to);
}

void NfaBuilder::add_epsilon(State from, State to) {
  eps_.at(from).push_back(to);
  (void)eps_.at(to);
}

void NfaBuilder::set_initial(State q, bool value) { initial_.at(q) = value; }
void NfaBuilder::set_final(State q, bool value) { final_.at(q) = value; }

Nfa NfaBuilder::build() && {
  Nfa a;
  a.alphabet_ = std::move(alphabet_);
  a.out_ = std::move(out_);
  a.eps_ = std::move(eps_);
  for (auto& e : a.out_) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  for (auto& e : a.eps_) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  for (State q = 0; q < initial_.size(); ++q)
    if (initial_[q]) a.initial_.push_back(q);
  a.final_ = std::move(final_);
  return a;
}

// ---------------------------------------------------------------- nfa

std::size_t Nfa::num_transitions() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  for (const auto& e : eps_) n += e.size();
  return n;
}

std::span<const Edge> Nfa::edges(State q, Symbol a) const {
  const auto& e = out_[q];
  auto lo = std::lower_bound(e.begin(), e.end(), Edge{a, 0});
  auto hi = lo;
  while (hi != e.end() && hi->symbol == a) ++hi;
  return {e.data() + (lo - e.begin()), static_cast<std::size_t>(hi - lo)};
}

bool Nfa::has_epsilon() const {
  for (const auto& e : eps_)
    if (!e.empty()) return true;
  return false;
}

bool Nfa::is_initial(State q) const {
  return std::binary_search(initial_.begin(), initial_.end(), q);
}

std::vector<State> Nfa::finals() const {
  std::vector<State> f;
  for (State q = 0; q < final_.size(); ++q)
    if (final_[q]) f.push_back(q);
  return f;
}

// ---------------------------------------------------------------- dfa

Dfa::Dfa(AlphabetPtr alphabet, std::size_t states, State initial)
    : alphabet_(std::move(alphabet)),
      k_(alphabet_->size()),
      initial_(initial),
      delta_(states * k_, 0),
      final_(states, 0) {}

State Dfa::run(const Word& w) const {
  State q = initial_;
  for (Symbol a : w) q = next(q, a);
  return q;
}

Nfa Dfa::to_nfa() const {
  NfaBuilder b(alphabet_, num_states());
  for (State q = 0; q < num_states(); ++q) {
    for (Symbol a = 0; a < k_; ++a) b.add_transition(q, a, next(q, a));
    if (is_final(q)) b.set_final(q);
  }
  if (num_states()) b.set_initial(initial_);
  return std::move(b).build();
}

// ---------------------------------------------------------------- constructors

Nfa empty_nfa(AlphabetPtr alphabet) {
  NfaBuilder b(std::move(alphabet), 1);
  b.set_initial(0);
  return std::move(b).build();
}

Nfa universal_nfa(AlphabetPtr alphabet) {
  NfaBuilder b(alphabet, 1);
  for (Symbol a = 0; a < alphabet->size(); ++a) b.add_transition(0, a, 0);
  b.set_initial(0);
  b.set_final(0);
  return std::move(b).build();
}

Nfa word_nfa(AlphabetPtr alphabet, const Word& w) {
  NfaBuilder b(std::move(alphabet), w.size() + 1);
  for (std::size_t i = 0; i < w.size(); ++i) b.add_transition(i, w[i], i + 1);
  b.set_initial(0);
  b.set_final(w.size());
  return std::move(b).build();
}

Nfa length_nfa(AlphabetPtr alphabet, std::size_t length) {
  NfaBuilder b(alphabet, length + 1);
  for (std::size_t i = 0; i < length; ++i)
    for (Symbol a = 0; a < alphabet->size(); ++a) b.add_transition(i, a, i + 1);
  b.set_initial(0);
  b.set_final(length);
  return std::move(b).build();
}

// ---------------------------------------------------------------- epsilon, trim

std::vector<State> epsilon_closure(const Nfa& a, std::vector<State> states) {
  std::vector<char> seen(a.num_states(), 0);
  std::vector<State> stack;
  for (State q : states)
    if (!seen[q]) {
      seen[q] = 1;
      stack.push_back(q);
    }
  std::vector<State> out;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    out.push_back(q);
    for (State r : a.epsilon(q))
      if (!seen[r]) {
        seen[r] = 1;
        stack.push_back(r);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Nfa remove_epsilon(const Nfa& a) {
  if (!a.has_epsilon()) return a;
  NfaBuilder b(a.alphabet(), a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    auto cl = epsilon_closure(a, {q});
    for (State r : cl) {
      if (a.is_final(r)) b.set_final(q);
      for (const Edge& e : a.edges(r)) b.add_transition(q, e.symbol, e.target);
    }
  }
  for (State q : a.initial()) b.set_initial(q);
  return std::move(b).build();
}

Nfa trim(const Nfa& a) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    for (const Edge& e : a.edges(q)) rev[e.target].push_back(q);
    for (State r : a.epsilon(q)) rev[r].push_back(q);
  }
  std::vector<char> co(n, 0);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (a.is_final(q)) {
      co[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q])
      if (!co[p]) {
        co[p] = 1;
        stack.push_back(p);
      }
  }
  // BFS from the initial states over useful states gives the new numbering.
  std::vector<State> id(n, UINT32_MAX);
  std::vector<State> order;
  std::deque<State> queue;
  for (State q : a.initial())
    if (co[q] && id[q] == UINT32_MAX) {
      id[q] = static_cast<State>(order.size());
      order.push_back(q);
      queue.push_back(q);
    }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    auto visit = [&](State r) {
      if (co[r] && id[r] == UINT32_MAX) {
        id[r] = static_cast<State>(order.size());
        order.push_back(r);
        queue.push_back(r);
      }
    };
    for (State r : a.epsilon(q)) visit(r);
    for (const Edge& e : a.edges(q)) visit(e.target);
  }
  NfaBuilder b(a.alphabet(), order.size());
  for (State q : order) {
    for (const Edge& e : a.edges(q))
      if (id[e.target] != UINT32_MAX) b.add_transition(id[q], e.symbol, id[e.target]);
    for (State r : a.epsilon(q))
      if (id[r] != UINT32_MAX) b.add_epsilon(id[q], id[r]);
    if (a.is_final(q)) b.set_final(id[q]);
    if (a.is_initial(q)) b.set_initial(id[q]);
  }
  return std::move(b).build();
}

// ---------------------------------------------------------------- boolean ops

Nfa intersect(const Nfa& x, const Nfa& y) {
  require_same_alphabet(x.alphabet(), y.alphabet(), "intersect");
  const Nfa a = remove_epsilon(x);
  const Nfa b = remove_epsilon(y);
  NfaBuilder out(a.alphabet());
  std::unordered_map<std::uint64_t, State> ids;
  std::deque<std::pair<State, State>> queue;
  auto get = [&](State p, State q) {
    std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    State s = out.add_state();
    ids.emplace(key, s);
    if (a.is_final(p) && b.is_final(q)) out.set_final(s);
    queue.emplace_back(p, q);
    return s;
  };
  for (State p : a.initial())
    for (State q : b.initial()) out.set_initial(get(p, q));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    State s = ids.at((std::uint64_t{p} << 32) | q);
    auto ea = a.edges(p);
    auto eb = b.edges(q);
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
      if (ea[i].symbol < eb[j].symbol) {
        ++i;
      } else if (ea[i].symbol > eb[j].symbol) {
        ++j;
      } else {
        Symbol sym = ea[i].symbol;
        std::size_t i2 = i, j2 = j;
        while (i2 < ea.size() && ea[i2].symbol == sym) ++i2;
        while (j2 < eb.size() && eb[j2].symbol == sym) ++j2;
        for (std::size_t u = i; u < i2; ++u)
          for (std::size_t v = j; v < j2; ++v) out.add_transition(s, sym, get(ea[u].target, eb[v].target));
        i = i2;
        j = j2;
      }
    }
  }
  return trim(std::move(out).build());
}

Nfa unite(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "unite");
  NfaBuilder out(a.alphabet(), a.num_states() + b.num_states());
  const State off = static_cast<State>(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) out.add_transition(q, e.symbol, e.target);
    for (State r : a.epsilon(q)) out.add_epsilon(q, r);
    if (a.is_final(q)) out.set_final(q);
  }
  for (State q = 0; q < b.num_states(); ++q) {
    for (const Edge& e : b.edges(q)) out.add_transition(off + q, e.symbol, off + e.target);
    for (State r : b.epsilon(q)) out.add_epsilon(off + q, off + r);
    if (b.is_final(q)) out.set_final(off + q);
  }
  for (State q : a.initial()) out.set_initial(q);
  for (State q : b.initial()) out.set_initial(off + q);
  return std::move(out).build();
}

Nfa concat(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "concat");
  NfaBuilder out(a.alphabet(), a.num_states() + b.num_states());
  const State off = static_cast<State>(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) out.add_transition(q, e.symbol, e.target);
    for (State r : a.epsilon(q)) out.add_epsilon(q, r);
    if (a.is_final(q))
      for (State r : b.initial()) out.add_epsilon(q, off + r);
  }
  for (State q = 0; q < b.num_states(); ++q) {
    for (const Edge& e : b.edges(q)) out.add_transition(off + q, e.symbol, off + e.target);
    for (State r : b.epsilon(q)) out.add_epsilon(off + q, off + r);
    if (b.is_final(q)) out.set_final(off + q);
  }
  for (State q : a.initial()) out.set_initial(q);
  return std::move(out).build();
}

Dfa determinize(const Nfa& x) {
  const Nfa a = remove_epsilon(x);
  const std::size_t k = a.alphabet()->size();
  std::unordered_map<std::vector<State>, State, VecHash> ids;
  std::vector<std::vector<State>> sets;
  std::vector<State> delta;
  auto get = [&](std::vector<State> s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    State id = static_cast<State>(sets.size());
    ids.emplace(s, id);
    sets.push_back(std::move(s));
    return id;
  };
  std::vector<State> init = a.initial();
  get(init);
  std::vector<std::vector<State>> buckets(k);
  for (std::size_t cur = 0; cur < sets.size(); ++cur) {
    for (auto& b : buckets) b.clear();
    for (State q : sets[cur])
      for (const Edge& e : a.edges(q)) buckets[e.symbol].push_back(e.target);
    for (Symbol s = 0; s < k; ++s) {
      auto& t = buckets[s];
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      delta.push_back(get(t));
    }
  }
  Dfa d(a.alphabet(), sets.size(), 0);
  for (State q = 0; q < sets.size(); ++q) {
    for (Symbol s = 0; s < k; ++s) d.set_next(q, s, delta[q * k + s]);
    for (State r : sets[q])
      if (a.is_final(r)) d.set_final(q);
  }
  return d;
}

Dfa complement(const Dfa& a) {
  Dfa d = a;
  for (State q = 0; q < d.num_states(); ++q) d.set_final(q, !a.is_final(q));
  return d;
}

Dfa complement(const Nfa& a) { return complement(determinize(a)); }

Dfa intersect(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "intersect");
  const std::size_t k = a.alphabet()->size();
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto get = [&](State p, State q) {
    std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    State s = static_cast<State>(pairs.size());
    ids.emplace(key, s);
    pairs.emplace_back(p, q);
    return s;
  };
  get(a.initial(), b.initial());
  std::vector<State> delta;
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    auto [p, q] = pairs[cur];
    for (Symbol s = 0; s < k; ++s) delta.push_back(get(a.next(p, s), b.next(q, s)));
  }
  Dfa d(a.alphabet(), pairs.size(), 0);
  for (State q = 0; q < pairs.size(); ++q) {
    for (Symbol s = 0; s < k; ++s) d.set_next(q, s, delta[q * k + s]);
    d.set_final(q, a.is_final(pairs[q].first) && b.is_final(pairs[q].second));
  }
  return d;
}

Dfa minimize(const Dfa& a) {
  const std::size_t k = a.alphabet()->size();
  // Reachable part first.
  std::vector<State> reach_id(a.num_states(), UINT32_MAX);
  std::vector<State> order;
  reach_id[a.initial()] = 0;
  order.push_back(a.initial());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol s = 0; s < k; ++s) {
      State t = a.next(order[i], s);
      if (reach_id[t] == UINT32_MAX) {
        reach_id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  const std::size_t n = order.size();
  // Moore refinement on signatures.
  std::vector<State> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = a.is_final(order[i]) ? 1 : 0;
  std::size_t num_classes = 0;
  {
    bool f = false, nf = false;
    for (std::size_t i = 0; i < n; ++i) (cls[i] ? f : nf) = true;
    num_classes = (f ? 1 : 0) + (nf ? 1 : 0);
  }
  while (true) {
    std::unordered_map<std::vector<State>, State, VecHash> sig_ids;
    std::vector<State> next_cls(n);
    std::vector<State> sig(k + 1);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (Symbol s = 0; s < k; ++s) sig[s + 1] = cls[reach_id[a.next(order[i], s)]];
      auto it = sig_ids.find(sig);
      if (it == sig_ids.end()) it = sig_ids.emplace(sig, static_cast<State>(sig_ids.size())).first;
      next_cls[i] = it->second;
    }
    const std::size_t nc = sig_ids.size();
    cls = std::move(next_cls);
    if (nc == num_classes) break;
    num_classes = nc;
  }
  // Renumber classes in BFS order from the initial class.
  std::vector<State> rep(num_classes, UINT32_MAX);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[cls[i]] == UINT32_MAX) rep[cls[i]] = static_cast<State>(i);
  std::vector<State> new_id(num_classes, UINT32_MAX);
  std::vector<State> bfs;
  new_id[cls[0]] = 0;
  bfs.push_back(cls[0]);
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    State r = rep[bfs[i]];
    for (Symbol s = 0; s < k; ++s) {
      State c = cls[reach_id[a.next(order[r], s)]];
      if (new_id[c] == UINT32_MAX) {
        new_id[c] = static_cast<State>(bfs.size());
        bfs.push_back(c);
      }
    }
  }
  Dfa d(a.alphabet(), bfs.size(), 0);
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    State r = rep[bfs[i]];
    for (Symbol s = 0; s < k; ++s) d.set_next(i, s, new_id[cls[reach_id[a.next(order[r], s)]]]);
    d.set_final(i, a.is_final(order[r]));
  }
  return d;
}

Dfa minimize(const Nfa& a) { return minimize(determinize(a)); }

DfaSizes minimal_sizes(const Dfa& x) {
  Dfa m = minimize(x);
  const std::size_t k = m.alphabet()->size();
  DfaSizes s;
  s.complete = m.num_states();
  std::size_t dead = 0;
  for (State q = 0; q < m.num_states(); ++q) {
    if (m.is_final(q)) continue;
    bool loop = true;
    for (Symbol a = 0; a < k; ++a)
      if (m.next(q, a) != q) loop = false;
    if (loop) ++dead;
  }
  s.trim = s.complete - dead;
  return s;
}

DfaSizes minimal_sizes(const Nfa& a) { return minimal_sizes(determinize(a)); }

// ---------------------------------------------------------------- queries

bool accepts(const Nfa& a, const Word& w) {
  std::vector<State> cur = epsilon_closure(a, a.initial());
  std::vector<State> next;
  for (Symbol s : w) {
    next.clear();
    for (State q : cur)
      for (const Edge& e : a.edges(q, s)) next.push_back(e.target);
    cur = epsilon_closure(a, next);
    if (cur.empty()) return false;
  }
  for (State q : cur)
    if (a.is_final(q)) return true;
  return false;
}

bool accepts(const Dfa& a, const Word& w) { return a.is_final(a.run(w)); }

std::optional<Word> shortest_accepted(const Nfa& x) {
  const Nfa a = remove_epsilon(x);
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q)
    for (const Edge& e : a.edges(q)) rev[e.target].push_back(q);
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<State> queue;
  for (State q = 0; q < n; ++q)
    if (a.is_final(q)) {
      dist[q] = 0;
      queue.push_back(q);
    }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (State p : rev[q])
      if (dist[p] == SIZE_MAX) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
  }
  std::size_t best = SIZE_MAX;
  for (State q : a.initial()) best = std::min(best, dist[q]);
  if (best == SIZE_MAX) return std::nullopt;
  std::vector<State> cur;
  for (State q : a.initial())
    if (dist[q] == best) cur.push_back(q);
  Word w;
  for (std::size_t d = best; d > 0; --d) {
    Symbol pick = UINT32_MAX;
    for (State q : cur)
      for (const Edge& e : a.edges(q))
        if (dist[e.target] == d - 1 && e.symbol < pick) pick = e.symbol;
    std::vector<State> next;
    for (State q : cur)
      for (const Edge& e : a.edges(q, pick))
        if (dist[e.target] == d - 1) next.push_back(e.target);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
    w.push_back(pick);
  }
  return w;
}

std::optional<Word> shortest_accepted(const Dfa& a) {
  const std::size_t k = a.alphabet()->size();
  std::vector<State> parent(a.num_states(), UINT32_MAX);
  std::vector<Symbol> via(a.num_states(), 0);
  std::vector<char> seen(a.num_states(), 0);
  std::deque<State> queue{a.initial()};
  seen[a.initial()] = 1;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (a.is_final(q)) {
      Word w;
      for (State c = q; parent[c] != UINT32_MAX; c = parent[c]) w.push_back(via[c]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol s = 0; s < k; ++s) {
      State t = a.next(q, s);
      if (!seen[t]) {
        seen[t] = 1;
        parent[t] = q;
        via[t] = s;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool is_empty(const Nfa& a) { return !shortest_accepted(a).has_value(); }

EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "equivalent");
  // Symmetric difference as a product DFA searched breadth first.
  const std::size_t k = a.alphabet()->size();
  std::unordered_map<std::uint64_t, std::size_t> ids;
  std::vector<std::pair<State, State>> pairs;
  std::vector<std::size_t> parent;
  std::vector<Symbol> via;
  auto key = [](State p, State q) { return (std::uint64_t{p} << 32) | q; };
  ids.emplace(key(a.initial(), b.initial()), 0);
  pairs.emplace_back(a.initial(), b.initial());
  parent.push_back(SIZE_MAX);
  via.push_back(0);
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    auto [p, q] = pairs[cur];
    if (a.is_final(p) != b.is_final(q)) {
      Word w;
      for (std::size_t c = cur; parent[c] != SIZE_MAX; c = parent[c]) w.push_back(via[c]);
      std::reverse(w.begin(), w.end());
      return {false, w};
    }
    for (Symbol s = 0; s < k; ++s) {
      State p2 = a.next(p, s), q2 = b.next(q, s);
      if (ids.emplace(key(p2, q2), pairs.size()).second) {
        pairs.emplace_back(p2, q2);
        parent.push_back(cur);
        via.push_back(s);
      }
    }
  }
  return {true, std::nullopt};
}

EquivalenceResult equivalent(const Nfa& a, const Nfa& b) {
  return equivalent(determinize(a), determinize(b));
}

std::vector<Word> enumerate_words(const Nfa& x, std::size_t max_len) {
  const Nfa a = remove_epsilon(x);
  const std::size_t k = a.alphabet()->size();
  std::vector<Word> out;
  std::vector<std::pair<Word, std::vector<State>>> layer;
  std::vector<State> init = a.initial();
  layer.emplace_back(Word{}, init);
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::pair<Word, std::vector<State>>> next;
    for (auto& [w, set] : layer) {
      for (State q : set)
        if (a.is_final(q)) {
          out.push_back(w);
          break;
        }
      if (len == max_len) continue;
      for (Symbol s = 0; s < k; ++s) {
        std::vector<State> t;
        for (State q : set)
          for (const Edge& e : a.edges(q, s)) t.push_back(e.target);
        if (t.empty()) continue;
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        Word w2 = w;
        w2.push_back(s);
        next.emplace_back(std::move(w2), std::move(t));
      }
    }
    layer = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------- dot

std::string to_dot(const Nfa& a, const std::string& name) {
  std::ostringstream o;
  o << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (State q = 0; q < a.num_states(); ++q) {
    o << "  " << q << " [label=\"" << q << "\"" << (a.is_final(q) ? ", shape=doublecircle" : "") << "];\n";
  }
  for (State q : a.initial()) o << "  init" << q << " [shape=point];\n  init" << q << " -> " << q << ";\n";
  for (State q = 0; q < a.num_states(); ++q) {
    std::map<State, std::vector<std::string>> labels;
    for (const Edge& e : a.edges(q)) labels[e.target].push_back(a.alphabet()->name(e.symbol));
    for (State r : a.epsilon(q)) labels[r].push_back("eps");
    for (auto& [t, ls] : labels) {
      std::string lab;
      for (std::size_t i = 0; i < ls.size(); ++i) lab += (i ? ", " : "") + ls[i];
      o << "  " << q << " -> " << t << " [label=\"" << dot_escape(lab) << "\"];\n";
    }
  }
  o << "}\n";
  return o.str();
}

std::string to_dot(const Dfa& a, const std::string& name) { return to_dot(a.to_nfa(), name); }

}  // namespace rmc
