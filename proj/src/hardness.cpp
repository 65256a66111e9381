#include "rmc/hardness.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "state_index.hpp"

namespace rmc {

namespace {

using Key = std::vector<int>;
using Index = detail::StateIndex<Key, detail::VectorHash>;

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || s == "#" || s == "." || s == std::string(kPadName)) return false;
  return s.find_first_of(":/ \t") == std::string::npos;
}

/// Nondeterministic transducer explored from `inits`; `step` calls emit(out, next).
Transducer explore_transducer(const AlphabetPtr& sigma, const std::vector<Key>& inits,
                              const std::function<void(const Key&, Symbol, const std::function<void(Symbol, Key)>&)>& step,
                              const std::function<bool(const Key&)>& is_final) {
  AlphabetPtr pairs = pair_alphabet(sigma, sigma);
  PairCodec codec{sigma->size(), sigma->size()};
  Index idx;
  for (const Key& k : inits) idx.insert(k);
  std::vector<std::tuple<State, Symbol, State>> edges;
  for (std::size_t cur = 0; cur < idx.size(); ++cur) {
    const Key key = idx.key(static_cast<State>(cur));
    for (Symbol a = 0; a < sigma->size(); ++a) {
      step(key, a, [&](Symbol out, Key next) {
        edges.emplace_back(static_cast<State>(cur), codec.pack(a, out), idx.get(std::move(next)));
      });
    }
  }
  NfaBuilder b(pairs, idx.size());
  for (const Key& k : inits) b.set_initial(idx.get(k));
  for (State q = 0; q < idx.size(); ++q) b.set_final(q, is_final(idx.key(q)));
  for (auto [p, a, q] : edges) b.add_transition(p, a, q);
  return Transducer(sigma, sigma, trim(std::move(b).build()));
}

/// Complete deterministic automaton over `pairs` explored from `init`.
Nfa explore_dfa(const AlphabetPtr& pairs, const Key& init, const std::function<Key(const Key&, Symbol)>& step,
                const std::function<bool(const Key&)>& is_final) {
  Index idx;
  idx.insert(init);
  std::vector<State> delta;
  for (std::size_t cur = 0; cur < idx.size(); ++cur) {
    const Key key = idx.key(static_cast<State>(cur));
    for (Symbol a = 0; a < pairs->size(); ++a) delta.push_back(idx.get(step(key, a)));
  }
  Dfa d(pairs, idx.size(), 0);
  for (State q = 0; q < idx.size(); ++q) {
    for (Symbol a = 0; a < pairs->size(); ++a) d.set_next(q, a, delta[q * pairs->size() + a]);
    d.set_final(q, is_final(idx.key(q)));
  }
  return minimize(d).to_nfa();
}

}  // namespace

TuringMachine parse_tm(const std::string& text) {
  TuringMachine tm;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw UsageError("line " + std::to_string(lineno) + ": " + msg); };
  auto known_state = [&](const std::string& q) {
    return std::find(tm.states.begin(), tm.states.end(), q) != tm.states.end();
  };
  auto known_symbol = [&](const std::string& a) { return std::find(tm.tape.begin(), tm.tape.end(), a) != tm.tape.end(); };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    auto w = split(line);
    if (w.empty()) continue;
    if (w[0] == "state") {
      if (w.size() < 2 || w.size() > 3) fail("expected: state <name> [initial|final]");
      if (!valid_name(w[1])) fail("invalid state name '" + w[1] + "'");
      if (known_state(w[1])) fail("duplicate state '" + w[1] + "'");
      tm.states.push_back(w[1]);
      if (w.size() == 3) {
        if (w[2] == "initial") {
          if (!tm.initial.empty()) fail("second initial state");
          tm.initial = w[1];
        } else if (w[2] == "final") {
          if (!tm.final_state.empty()) fail("second final state");
          tm.final_state = w[1];
        } else {
          fail("unknown state flag '" + w[2] + "'");
        }
      }
    } else if (w[0] == "tape") {
      if (w.size() < 2) fail("expected: tape <blank> <symbol>...");
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (!valid_name(w[i])) fail("invalid tape symbol '" + w[i] + "'");
        if (known_symbol(w[i])) fail("duplicate tape symbol '" + w[i] + "'");
        tm.tape.push_back(w[i]);
      }
    } else if (w[0] == "trans") {
      if (w.size() != 7 || w[3] != "->") fail("expected: trans <state> <symbol> -> <state> <symbol> L|R|N");
      if (!known_state(w[1]) || !known_state(w[4])) fail("unknown state in transition");
      if (!known_symbol(w[2]) || !known_symbol(w[5])) fail("unknown tape symbol in transition");
      Move mv;
      if (w[6] == "L") {
        mv = Move::Left;
      } else if (w[6] == "R") {
        mv = Move::Right;
      } else if (w[6] == "N") {
        mv = Move::Stay;
      } else {
        fail("unknown move '" + w[6] + "'");
      }
      if (!tm.transitions.emplace(std::make_pair(w[1], w[2]), TmTransition{w[4], w[5], mv}).second) {
        fail("machine is not deterministic: second transition for (" + w[1] + ", " + w[2] + ")");
      }
    } else if (w[0] == "size") {
      if (w.size() != 2) fail("expected: size <n>");
      try {
        tm.size = std::stoi(w[1]);
      } catch (const std::exception&) {
        fail("invalid size '" + w[1] + "'");
      }
    } else {
      fail("unknown directive '" + w[0] + "'");
    }
  }
  if (tm.initial.empty()) throw UsageError("machine has no initial state");
  if (tm.final_state.empty()) throw UsageError("machine has no final state");
  if (tm.tape.empty()) throw UsageError("machine has no tape symbols");
  for (const auto& [k, t] : tm.transitions)
    if (k.first == tm.final_state) throw UsageError("final state " + tm.final_state + " must not have transitions");
  return tm;
}

HardnessGadget::HardnessGadget(TuringMachine tm) : tm_(std::move(tm)) {
  if (tm_.size < 1) throw UsageError("hardness gadget needs size >= 1");
  if (tm_.size > 2) throw UnsupportedInstance("hardness gadget is limited to size <= 2");
  for (const auto& q : tm_.states)
    if (std::find(tm_.tape.begin(), tm_.tape.end(), q) != tm_.tape.end())
      throw UsageError("name '" + q + "' is both a state and a tape symbol");
  const int all_primes[] = {2, 3};
  for (int j = 0; j < tm_.size; ++j) {
    offsets_.push_back(s_);
    primes_.push_back(all_primes[j]);
    for (int r = 0; r < all_primes[j]; ++r) block_of_.push_back(j + 1);
    s_ += all_primes[j];
    m_ *= all_primes[j];
  }
  std::vector<std::string> cells{"."};
  for (const auto& q : tm_.states) cells.push_back(q);
  for (const auto& a : tm_.tape) cells.push_back(a);
  cells.push_back("#");
  cells_ = make_alphabet("cells", cells);
  hash_ = cells_->id("#");
  blank_tape_ = cells_->id(tm_.tape[0]);
  q0_ = cells_->id(tm_.initial);
  qf_ = cells_->id(tm_.final_state);
  std::vector<std::string> sig{"0", "1"};
  for (int b = 0; b < 2; ++b)
    for (const auto& c : cells) sig.push_back(std::to_string(b) + ":" + c);
  sigma_ = make_alphabet("gadget", sig);
  std::vector<std::string> lv;
  for (int j = 0; j <= n(); ++j) lv.push_back(std::to_string(j));
  levels_ = make_alphabet("levels", lv);
}

Symbol HardnessGadget::letter(int mark, Symbol cell) const {
  return static_cast<Symbol>(2 + static_cast<std::size_t>(mark) * num_cells() + cell);
}

int HardnessGadget::mark_of(Symbol a) const { return static_cast<int>((a - 2) / num_cells()); }

Symbol HardnessGadget::cell_of(Symbol a) const { return static_cast<Symbol>((a - 2) % num_cells()); }

Symbol HardnessGadget::delta(Symbol x1, Symbol x2, Symbol x3, Symbol x4) const {
  if (x1 == 0 || x2 == 0 || x3 == 0 || x4 == 0) return 0;
  if (x2 == hash_) return hash_;
  auto lookup = [&](Symbol q, Symbol a) -> const TmTransition* {
    if (q == qf_) return nullptr;
    auto it = tm_.transitions.find({cells_->name(q), cells_->name(a)});
    return it == tm_.transitions.end() ? nullptr : &it->second;
  };
  if (is_state_cell(x2)) {
    const TmTransition* t = lookup(x2, x3);
    if (!t) return x2;
    if (t->move == Move::Right) return cells_->id(t->write);
    if (t->move == Move::Left && x1 != hash_) return x1;
    return cells_->id(t->next);
  }
  if (is_state_cell(x1)) {
    const TmTransition* t = lookup(x1, x2);
    if (!t) return x2;
    return cells_->id(t->move == Move::Right ? t->next : t->write);
  }
  if (is_state_cell(x3)) {
    const TmTransition* t = lookup(x3, x4);
    if (t && t->move == Move::Left) return cells_->id(t->next);
  }
  return x2;
}

Transducer HardnessGadget::mark_transducer() const {
  std::vector<Key> inits;
  for (int j = 1; j <= n(); ++j)
    for (int r = 0; r < primes_[j - 1]; ++r) inits.push_back({0, j, r, 0, 0});
  auto step = [&](const Key& k, Symbol a, const std::function<void(Symbol, Key)>& emit) {
    const int j = k[1], r = k[2];
    if (k[0] == 0) {
      if (is_cell_letter(a)) return;
      const int pos = k[3];
      const int b = block_of_[pos];
      const int off = pos - offsets_[b - 1];
      int sel = k[4];
      Symbol out = a;
      if (b == j - 1) {
        sel |= static_cast<int>(a);
      } else if (b >= j) {
        if (a != 0) return;
        out = (b == j && off == r) ? 1 : 0;
      }
      const bool block_end = pos + 1 == s_ || block_of_[pos + 1] != b;
      if (block_end && b == j - 1) {
        if (!sel) return;
        sel = 0;
      }
      if (pos + 1 == s_) {
        emit(out, {1, j, r, 0});
      } else {
        emit(out, {0, j, r, pos + 1, sel});
      }
      return;
    }
    if (!is_cell_letter(a)) return;
    const int t = k[3];
    const int mark = t == r ? mark_of(a) : 1;
    emit(letter(mark, cell_of(a)), {1, j, r, (t + 1) % primes_[j - 1]});
  };
  return explore_transducer(sigma_, inits, step, [](const Key& k) { return k[0] == 1; });
}

namespace {
enum WritePhase { kPrime = 0, kBefore = 1, kW1 = 2, kW2 = 3, kW3Guess = 4, kW3Done = 5, kW3 = 6, kAfter = 7, kSeek = 8,
                  kInit0 = 10, kInitSeek = 11 };
}

Transducer HardnessGadget::write_transducer() const {
  const int nc = static_cast<int>(num_cells());
  auto step = [&, nc](const Key& k, Symbol a, const std::function<void(Symbol, Key)>& emit) {
    if (k[0] == kPrime) {
      if (is_cell_letter(a)) return;
      const int pos = k[1];
      const int ones = k[2] + static_cast<int>(a);
      const bool block_end = pos + 1 == s_ || block_of_[pos + 1] != block_of_[pos];
      if (block_end && ones != 1) return;
      if (pos + 1 == s_) {
        emit(0, {kBefore});
      } else {
        emit(0, {kPrime, pos + 1, block_end ? 0 : ones});
      }
      return;
    }
    if (!is_cell_letter(a)) return;
    const Symbol x = cell_of(a);
    const bool marked = mark_of(a) == 0;
    const Symbol copy = letter(0, x);
    switch (k[0]) {
      case kBefore:
        emit(copy, {kBefore});
        emit(copy, {kW1, static_cast<int>(x)});
        return;
      case kW1: {
        if (!marked) return;
        Key next{kW2};
        for (int x3 = 0; x3 < nc; ++x3)
          for (int x4 = 0; x4 < nc; ++x4)
            next.push_back(static_cast<int>(delta(static_cast<Symbol>(k[1]), x, static_cast<Symbol>(x3),
                                                  static_cast<Symbol>(x4))));
        emit(copy, next);
        return;
      }
      case kW2: {
        const auto row = k.begin() + 1 + static_cast<long>(x) * nc;
        if (marked) {
          if (x != 0) {
            emit(copy, {kW3Done});
            return;
          }
          for (int y = 0; y < nc; ++y) {
            int mask = 0;
            for (int x4 = 0; x4 < nc; ++x4)
              if (row[x4] == y) mask |= 1 << x4;
            if (mask) emit(letter(0, static_cast<Symbol>(y)), {kW3Guess, mask});
          }
          return;
        }
        Key next{kW3};
        next.insert(next.end(), row, row + nc);
        emit(copy, next);
        return;
      }
      case kW3Guess:
        if (k[1] >> x & 1) emit(copy, {kAfter});
        return;
      case kW3Done:
        emit(copy, {kAfter});
        return;
      case kW3: {
        const int d = k[1 + x];
        if (marked) {
          emit(letter(0, x == 0 ? static_cast<Symbol>(d) : x), {kAfter});
        } else {
          emit(copy, {kSeek, d});
        }
        return;
      }
      case kSeek:
        if (marked) {
          emit(letter(0, x == 0 ? static_cast<Symbol>(k[1]) : x), {kAfter});
        } else {
          emit(copy, k);
        }
        return;
      case kAfter:
        emit(copy, {kAfter});
        return;
      default:
        return;
    }
  };
  return explore_transducer(sigma_, {{kPrime, 0, 0}}, step, [](const Key& k) { return k[0] == kAfter; });
}

Transducer HardnessGadget::init_transducer() const {
  auto step = [&](const Key& k, Symbol a, const std::function<void(Symbol, Key)>& emit) {
    if (k[0] == kPrime) {
      if (is_cell_letter(a)) return;
      const int pos = k[1];
      const int ones = k[2] + static_cast<int>(a);
      const bool block_end = pos + 1 == s_ || block_of_[pos + 1] != block_of_[pos];
      if (block_end && ones != 1) return;
      if (pos + 1 == s_) {
        emit(0, {kInit0});
      } else {
        emit(0, {kPrime, pos + 1, block_end ? 0 : ones});
      }
      return;
    }
    if (!is_cell_letter(a)) return;
    const Symbol x = cell_of(a);
    const bool marked = mark_of(a) == 0;
    const Symbol copy = letter(0, x);
    switch (k[0]) {
      case kInit0:
        emit(copy, {kInitSeek, static_cast<int>(marked ? hash_ : blank_tape_)});
        return;
      case kInitSeek:
        if (marked) {
          emit(letter(0, x == 0 ? static_cast<Symbol>(k[1]) : x), {kAfter});
        } else {
          emit(copy, k);
        }
        return;
      case kAfter:
        emit(copy, {kAfter});
        return;
      default:
        return;
    }
  };
  return explore_transducer(sigma_, {{kPrime, 0, 0}}, step, [](const Key& k) { return k[0] == kAfter; });
}

Transducer HardnessGadget::transition_relation() const {
  return unite(unite(mark_transducer(), write_transducer()), init_transducer());
}

FrameworkPtr HardnessGadget::framework_v1() const {
  AlphabetPtr pairs = pair_alphabet(cells_, sigma_);
  const PairCodec codec{cells_->size(), sigma_->size()};
  enum { kWait, kOne, kTwo, kThree, kWaitY, kOk, kRej };
  // Window status: 0 equal so far, 1 differs on a run symbol, 2 has a blank cell or a bit.
  auto update = [](int st, int a, int sc) {
    if (sc <= 0 || st == 2) return 2;
    return sc != a ? 1 : st;
  };
  auto step = [&, update](const Key& k, Symbol p) -> Key {
    if (codec.first_is_pad(p) || codec.second_is_pad(p)) return {kRej};
    const int a = static_cast<int>(codec.first(p));
    const Symbol c = codec.second(p);
    const int sc = is_cell_letter(c) ? static_cast<int>(cell_of(c)) : -1;
    switch (k[0]) {
      case kWait:
        if (a == 0) return k;
        return {kOne, sc == a || sc == 0, update(0, a, sc)};
      case kOne:
        if (a == 0) return {k[1] ? kOk : kRej};
        return {kTwo, update(k[2], a, sc)};
      case kTwo:
        if (a == 0) return {kOk};
        return {kThree, update(k[1], a, sc)};
      case kThree: {
        if (a == 0) return {kOk};
        return {update(k[1], a, sc) == 1 ? kOk : kWaitY};
      }
      case kWaitY:
        if (a == 0) return k;
        return {sc == a || sc == 0 ? kOk : kRej};
      default:
        return k;
    }
  };
  auto fin = [](const Key& k) { return k[0] == kOne ? k[1] != 0 : k[0] != kRej; };
  Nfa v = explore_dfa(pairs, {kWait}, step, fin);

  const Symbol box = 0;
  NfaBuilder b(cells_);
  for (int i = 0; i <= s_; ++i) b.add_state();
  const State pre = static_cast<State>(s_);
  const State w1 = b.add_state(), w2 = b.add_state(), w3 = b.add_state(), gap = b.add_state(), tail = b.add_state();
  for (State i = 0; i < pre; ++i) b.add_transition(i, box, i + 1);
  b.add_transition(pre, box, pre);
  b.add_transition(gap, box, gap);
  b.add_transition(tail, box, tail);
  for (Symbol x = 1; x < cells_->size(); ++x) {
    b.add_transition(pre, x, w1);
    b.add_transition(w1, x, w2);
    b.add_transition(w2, x, w3);
    b.add_transition(w3, x, gap);
    b.add_transition(gap, x, tail);
    b.add_transition(pre, x, tail);
  }
  b.set_initial(0);
  b.set_final(tail);
  return std::make_shared<Framework>("cells", sigma_, cells_, std::move(b).build(),
                                     Transducer(cells_, sigma_, std::move(v)));
}

FrameworkPtr HardnessGadget::framework_v2() const {
  AlphabetPtr pairs = pair_alphabet(levels_, sigma_);
  const PairCodec codec{levels_->size(), sigma_->size()};
  enum { kPrimePos, kMismatch, kExact, kRej };
  const int top = n();
  auto step = [&, top](const Key& k, Symbol p) -> Key {
    if (k[0] == kRej || codec.first_is_pad(p) || codec.second_is_pad(p)) return {kRej};
    const int a = static_cast<int>(codec.first(p));
    const Symbol c = codec.second(p);
    if (k[0] == kPrimePos) {
      // {phase, pos, J, mismatch up to J, pending mismatch, block selected, block mismatch}
      if (is_cell_letter(c)) return {kRej};
      const int pos = k[1];
      int sel = k[5] | static_cast<int>(c);
      int mis = k[6] | (a != static_cast<int>(c));
      int j = k[2], mm = k[3], pend = k[4];
      const bool block_end = pos + 1 == s_ || block_of_[pos + 1] != block_of_[pos];
      if (block_end) {
        if (sel) {
          j = block_of_[pos];
          mm |= pend | mis;
          pend = 0;
        } else {
          pend |= mis;
        }
        sel = mis = 0;
      }
      if (pos + 1 == s_) return mm ? Key{kMismatch} : Key{kExact, j};
      return {kPrimePos, pos + 1, j, mm, pend, sel, mis};
    }
    if (!is_cell_letter(c)) return {kRej};
    const bool marked = mark_of(c) == 0;
    if (k[0] == kMismatch) return a == top && marked ? Key{kRej} : k;
    return (a >= k[1]) != marked ? Key{kRej} : k;
  };
  auto fin = [](const Key& k) { return k[0] == kMismatch || k[0] == kExact; };
  Nfa v = explore_dfa(pairs, {kPrimePos, 0, 0, 0, 0, 0, 0}, step, fin);

  NfaBuilder b(levels_, static_cast<std::size_t>(s_) + 1);
  for (State i = 0; i < static_cast<State>(s_); ++i) {
    b.add_transition(i, 0, i + 1);
    b.add_transition(i, 1, i + 1);
  }
  for (Symbol l = 0; l < levels_->size(); ++l) b.add_transition(static_cast<State>(s_), l, static_cast<State>(s_));
  b.set_initial(0);
  b.set_final(static_cast<State>(s_));
  return std::make_shared<Framework>("levels", sigma_, levels_, std::move(b).build(),
                                     Transducer(levels_, sigma_, std::move(v)));
}

FrameworkPtr HardnessGadget::framework() const { return convolution_framework(framework_v1(), framework_v2()); }

Nfa HardnessGadget::initial_configurations() const {
  NfaBuilder b(sigma_, static_cast<std::size_t>(s_) + 3);
  State q = 0;
  for (; q < static_cast<State>(s_); ++q) b.add_transition(q, 0, q + 1);
  b.add_transition(q, letter(0, hash_), q + 1);
  b.add_transition(q + 1, letter(0, q0_), q + 2);
  b.add_transition(q + 2, letter(0, 0), q + 2);
  b.set_initial(0);
  b.set_final(q + 2);
  return std::move(b).build();
}

Nfa HardnessGadget::unsafe_configurations() const {
  NfaBuilder b(sigma_, static_cast<std::size_t>(s_) + 2);
  State q = 0;
  for (; q < static_cast<State>(s_); ++q) b.add_transition(q, 0, q + 1);
  for (Symbol x = 1; x < num_cells(); ++x) {
    b.add_transition(q, letter(0, x), q);
    b.add_transition(q + 1, letter(0, x), q + 1);
  }
  b.add_transition(q, letter(0, qf_), q + 1);
  b.set_initial(0);
  b.set_final(q + 1);
  return std::move(b).build();
}

SafetyInstance HardnessGadget::instance() const {
  return {"hardness", sigma_, transition_relation(), initial_configurations(), unsafe_configurations(), framework()};
}

SafetyInstance HardnessGadget::instance_v2() const {
  return {"hardness_levels", sigma_, transition_relation(), initial_configurations(), unsafe_configurations(),
          framework_v2()};
}

int HardnessGadget::selected(const Word& u) const {
  int j = 0;
  for (int pos = 0; pos < s_ && pos < static_cast<int>(u.size()); ++pos)
    if (u[static_cast<std::size_t>(pos)] == 1) j = std::max(j, block_of_[pos]);
  return j;
}

bool HardnessGadget::good(const Word& u) const {
  if (u.size() < static_cast<std::size_t>(s_)) return false;
  std::vector<int> ones(primes_.size(), 0);
  for (int pos = 0; pos < s_; ++pos) ones[block_of_[pos] - 1] += static_cast<int>(u[static_cast<std::size_t>(pos)]);
  return std::all_of(ones.begin(), ones.end(), [](int c) { return c == 1; });
}

std::optional<Word> HardnessGadget::oracle_step(const Word& u, const StepChoice& c) const {
  const std::size_t s = static_cast<std::size_t>(s_);
  if (u.size() < s) return std::nullopt;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (is_cell_letter(u[i]) != (i >= s)) return std::nullopt;
  const int len = static_cast<int>(u.size() - s);
  auto cell = [&](int t) { return cell_of(u[s + static_cast<std::size_t>(t)]); };
  auto marked = [&](int t) { return mark_of(u[s + static_cast<std::size_t>(t)]) == 0; };
  Word v = u;
  if (c.kind == StepKind::Mark) {
    const int j = selected(u) + 1;
    if (j > n() || c.residue < 0 || c.residue >= primes_[j - 1]) return std::nullopt;
    v[static_cast<std::size_t>(offsets_[j - 1] + c.residue)] = 1;
    for (int t = 0; t < len; ++t)
      if (t % primes_[j - 1] != c.residue) v[s + static_cast<std::size_t>(t)] = letter(1, cell(t));
    return v;
  }
  if (!good(u)) return std::nullopt;
  Symbol x;
  int from;
  if (c.kind == StepKind::Write) {
    const int i = c.position;
    if (i < 1 || i + 2 >= len || !marked(i)) return std::nullopt;
    x = delta(cell(i - 1), cell(i), cell(i + 1), cell(i + 2));
    from = i + 1;
  } else {
    if (len == 0) return std::nullopt;
    x = marked(0) ? hash_ : blank_tape_;
    from = 1;
  }
  int target = from;
  while (target < len && !marked(target)) ++target;
  if (target >= len) return std::nullopt;
  std::fill(v.begin(), v.begin() + s_, 0);
  for (int t = 0; t < len; ++t) v[s + static_cast<std::size_t>(t)] = letter(0, cell(t));
  if (cell(target) == 0) v[s + static_cast<std::size_t>(target)] = letter(0, x);
  return v;
}

std::set<Word> HardnessGadget::oracle_successors(const Word& u) const {
  std::set<Word> out;
  auto add = [&](const StepChoice& c) {
    if (auto v = oracle_step(u, c)) out.insert(*v);
  };
  for (int r = 0; r < primes_.back(); ++r) add({StepKind::Mark, r, 0});
  for (int i = 0; i < static_cast<int>(u.size()); ++i) add({StepKind::Write, 0, i});
  add({StepKind::Init, 0, 0});
  return out;
}

Word HardnessGadget::constraint_a2(int i, int l) const {
  Word w(static_cast<std::size_t>(s_), 0);
  for (int j = 0; j < n(); ++j) w[static_cast<std::size_t>(offsets_[j] + i % primes_[j])] = 1;
  for (int t = 0; t < l; ++t) {
    int y = n();
    for (int j = 0; j < n(); ++j)
      if (t % primes_[j] != i % primes_[j]) {
        y = j;
        break;
      }
    w.push_back(static_cast<Symbol>(y));
  }
  return w;
}

std::vector<Symbol> HardnessGadget::run_prefix(std::size_t length) const {
  std::vector<Symbol> alpha;
  const std::size_t m = static_cast<std::size_t>(m_);
  for (std::size_t k = 0; k < length; ++k) {
    if (k < m) {
      alpha.push_back(k == 0 ? hash_ : k == 1 ? q0_ : blank_tape_);
      continue;
    }
    const std::size_t i = k - m;
    alpha.push_back(delta(i == 0 ? hash_ : alpha[i - 1], alpha[i], alpha[i + 1], alpha[i + 2]));
  }
  return alpha;
}

std::optional<std::pair<Word, Word>> HardnessGadget::separator_candidate(const Word& u, const Word& v) const {
  if (!accepts(initial_configurations(), u) || !accepts(unsafe_configurations(), v)) {
    throw UsageError("separator_candidate: expects an initial and an unsafe configuration");
  }
  if (u.size() != v.size()) return std::nullopt;
  const std::size_t s = static_cast<std::size_t>(s_);
  const int len = static_cast<int>(v.size() - s);
  std::vector<Symbol> c;
  for (std::size_t i = s; i < v.size(); ++i) c.push_back(cell_of(v[i]));
  const auto alpha = run_prefix(static_cast<std::size_t>(len));
  Word a1(v.size(), 0);
  int target = -1;
  for (int t = 0; t < len && t <= m_; ++t)
    if (c[static_cast<std::size_t>(t)] != alpha[static_cast<std::size_t>(t)]) {
      a1[s + static_cast<std::size_t>(t)] = alpha[static_cast<std::size_t>(t)];
      target = t;
      break;
    }
  if (target < 0) {
    for (int t = m_ + 1; t < len; ++t) {
      const std::size_t w = static_cast<std::size_t>(t - m_ - 1);
      const Symbol y = delta(c[w], c[w + 1], c[w + 2], c[w + 3]);
      if (c[static_cast<std::size_t>(t)] == y) continue;
      for (std::size_t d = 0; d < 4; ++d) a1[s + w + d] = c[w + d];
      a1[s + static_cast<std::size_t>(t)] = y;
      target = t;
      break;
    }
  }
  if (target < 0) return std::nullopt;
  return std::make_pair(a1, constraint_a2(target, len));
}

Word HardnessGadget::combine(const Word& a1, const Word& a2) const {
  if (a1.size() != a2.size()) throw UsageError("combine: constraint parts differ in length");
  Word a;
  for (std::size_t i = 0; i < a1.size(); ++i) a.push_back(static_cast<Symbol>(a1[i] * levels_->size() + a2[i]));
  return a;
}

Word HardnessGadget::config(const std::string& prime, const std::vector<std::pair<int, std::string>>& cells) const {
  if (prime.size() != static_cast<std::size_t>(s_)) throw UsageError("config: prime part must have length s");
  Word w;
  for (char ch : prime) w.push_back(ch == '1' ? 1 : 0);
  for (const auto& [mk, name] : cells) w.push_back(letter(mk, cells_->id(name)));
  return w;
}

}  // namespace rmc
