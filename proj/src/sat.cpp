#include "rmc/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "rmc/alphabet.hpp"

namespace rmc {

std::string Cnf::to_dimacs() const {
  std::ostringstream o;
  o << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (Lit l : c) o << l << " ";
    o << "0\n";
  }
  return o.str();
}

Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  std::vector<Lit> cur;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      std::size_t nc = 0;
      ls >> p >> fmt >> cnf.num_vars >> nc;
      if (fmt != "cnf") throw UsageError("dimacs: expected 'p cnf'");
      header = true;
      continue;
    }
    Lit l;
    while (ls >> l) {
      if (l == 0) {
        cnf.add(cur);
        cur.clear();
      } else {
        if (std::abs(l) > cnf.num_vars) cnf.num_vars = std::abs(l);
        cur.push_back(l);
      }
    }
  }
  if (!header) throw UsageError("dimacs: missing header");
  if (!cur.empty()) cnf.add(cur);
  return cnf;
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& model) {
  for (const auto& c : cnf.clauses) {
    bool ok = false;
    for (Lit l : c) {
      int v = std::abs(l);
      if (v < static_cast<int>(model.size()) && model[v] == (l > 0)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

namespace {

class Solver {
 public:
  explicit Solver(const Cnf& cnf) : n_(cnf.num_vars), value_(n_, -1), level_(n_, 0), reason_(n_, -1), seen_(n_, 0) {
    watches_.resize(2 * static_cast<std::size_t>(n_));
    for (const auto& c : cnf.clauses) {
      std::vector<int> lits;
      for (Lit l : c) lits.push_back(encode(l));
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      bool taut = false;
      for (std::size_t i = 0; i + 1 < lits.size(); ++i)
        if ((lits[i] ^ 1) == lits[i + 1]) taut = true;
      if (taut) continue;
      if (lits.empty()) {
        trivially_unsat_ = true;
        continue;
      }
      if (lits.size() == 1) {
        units_.push_back(lits[0]);
        continue;
      }
      add_clause(std::move(lits));
    }
  }

  SatResult run() {
    SatResult res;
    if (trivially_unsat_) return res;
    for (int l : units_) {
      if (lit_value(l) == 0) return res;
      if (lit_value(l) == -1) assign(l, -1);
    }
    if (propagate() != -1) return res;
    while (true) {
      int v = pick();
      if (v < 0) break;
      ++res.decisions;
      trail_lim_.push_back(trail_.size());
      assign(2 * v, -1);
      while (true) {
        int confl = propagate();
        if (confl == -1) break;
        ++res.conflicts;
        if (trail_lim_.empty()) return res;
        auto [learnt, back] = analyze(confl);
        backtrack(back);
        if (learnt.size() == 1) {
          assign(learnt[0], -1);
        } else {
          int ci = add_clause(learnt);
          assign(learnt[0], ci);
        }
      }
    }
    res.sat = true;
    res.model.assign(static_cast<std::size_t>(n_) + 1, false);
    for (int v = 0; v < n_; ++v) res.model[v + 1] = value_[v] == 1;
    return res;
  }

 private:
  static int encode(Lit l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }
  static int var(int l) { return l >> 1; }

  int lit_value(int l) const {
    int v = value_[var(l)];
    if (v < 0) return -1;
    return (l & 1) ? 1 - v : v;
  }

  int add_clause(std::vector<int> lits) {
    int ci = static_cast<int>(clauses_.size());
    watches_[lits[0]].push_back(ci);
    watches_[lits[1]].push_back(ci);
    clauses_.push_back(std::move(lits));
    return ci;
  }

  void assign(int l, int reason) {
    int v = var(l);
    value_[v] = (l & 1) ? 0 : 1;
    level_[v] = static_cast<int>(trail_lim_.size());
    reason_[v] = reason;
    trail_.push_back(l);
  }

  /// Returns a conflicting clause index or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int falsified = trail_[qhead_++] ^ 1;
      auto& ws = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        int ci = ws[i];
        auto& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == 1) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t j = 2; j < c.size(); ++j) {
          if (lit_value(c[j]) != 0) {
            std::swap(c[1], c[j]);
            watches_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (lit_value(c[0]) == 0) {
          for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
          ws.resize(keep);
          qhead_ = trail_.size();
          return ci;
        }
        assign(c[0], ci);
      }
      ws.resize(keep);
    }
    return -1;
  }

  std::pair<std::vector<int>, std::size_t> analyze(int confl) {
    std::vector<int> learnt{-1};
    const int cur = static_cast<int>(trail_lim_.size());
    int pending = 0;
    int p = -1;
    std::size_t idx = trail_.size();
    std::vector<int> touched;
    while (true) {
      const auto& c = clauses_[confl];
      for (int q : c) {
        if (p != -1 && q == p) continue;
        int v = var(q);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        touched.push_back(v);
        if (level_[v] == cur) {
          ++pending;
        } else {
          learnt.push_back(q);
        }
      }
      do {
        --idx;
      } while (!seen_[var(trail_[idx])]);
      p = trail_[idx];
      confl = reason_[var(p)];
      seen_[var(p)] = 0;
      if (--pending == 0) break;
    }
    learnt[0] = p ^ 1;
    for (int v : touched) seen_[v] = 0;
    std::size_t back = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[var(learnt[i])] > level_[var(learnt[best])]) best = i;
      std::swap(learnt[1], learnt[best]);
      back = static_cast<std::size_t>(level_[var(learnt[1])]);
    }
    return {learnt, back};
  }

  void backtrack(std::size_t lvl) {
    if (trail_lim_.size() <= lvl) return;
    std::size_t stop = trail_lim_[lvl];
    for (std::size_t i = trail_.size(); i > stop; --i) {
      int v = var(trail_[i - 1]);
      value_[v] = -1;
      reason_[v] = -1;
      if (v < next_) next_ = v;
    }
    trail_.resize(stop);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  int pick() {
    while (next_ < n_ && value_[next_] != -1) ++next_;
    return next_ < n_ ? next_ : -1;
  }

  int n_;
  std::vector<int> value_, level_, reason_;
  std::vector<char> seen_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> units_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  int next_ = 0;
  bool trivially_unsat_ = false;
};

}  // namespace

SatResult sat_solve(const Cnf& cnf) {
  Solver s(cnf);
  SatResult r = s.run();
  if (r.sat && !satisfies(cnf, r.model)) throw std::logic_error("sat_solve: model check failed");
  return r;
}

}  // namespace rmc
