#include "rmc/learner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include "rmc/separability.hpp"

namespace rmc {

namespace {

bool shorter(const Word& a, const Word& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

class ObservationTable {
 public:
  ObservationTable(const SafetyInstance& inst, std::ostream* trace)
      : inst_(inst), k_(inst.framework->gamma()->size()), trace_(trace) {
    s_.push_back({});
    e_.push_back({});
  }

  std::size_t queries() const { return cache_.size(); }

  bool member(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    bool v = inst_.framework->in_constraints(w) && is_inductive(inst_, w);
    cache_.emplace(w, v);
    if (trace_) *trace_ << "mq " << format_word(*inst_.framework->gamma(), w) << " = " << v << "\n";
    return v;
  }

  std::vector<bool> row(const Word& s) {
    std::vector<bool> r;
    r.reserve(e_.size());
    for (const Word& e : e_) {
      Word w = s;
      w.insert(w.end(), e.begin(), e.end());
      r.push_back(member(w));
    }
    return r;
  }

  void add_prefixes(const Word& w) {
    for (std::size_t i = 1; i <= w.size(); ++i) {
      Word p(w.begin(), w.begin() + static_cast<long>(i));
      if (std::find(s_.begin(), s_.end(), p) == s_.end()) s_.push_back(p);
    }
  }

  /// Closes and makes consistent, then builds the hypothesis.
  Dfa hypothesis() {
    while (true) {
      if (close()) continue;
      if (make_consistent()) continue;
      break;
    }
    std::map<std::vector<bool>, State> ids;
    std::vector<Word> reps;
    for (const Word& s : s_) {
      auto r = row(s);
      if (ids.emplace(r, static_cast<State>(reps.size())).second) reps.push_back(s);
    }
    Dfa d(inst_.framework->gamma(), reps.size(), ids.at(row({})));
    for (State q = 0; q < reps.size(); ++q) {
      d.set_final(q, member(reps[q]));
      for (Symbol a = 0; a < k_; ++a) {
        Word w = reps[q];
        w.push_back(a);
        d.set_next(q, a, ids.at(row(w)));
      }
    }
    return d;
  }

 private:
  bool close() {
    std::map<std::vector<bool>, bool> rows;
    for (const Word& s : s_) rows[row(s)] = true;
    for (std::size_t i = 0; i < s_.size(); ++i)
      for (Symbol a = 0; a < k_; ++a) {
        Word w = s_[i];
        w.push_back(a);
        if (!rows.count(row(w))) {
          s_.push_back(w);
          return true;
        }
      }
    return false;
  }

  bool make_consistent() {
    for (std::size_t i = 0; i < s_.size(); ++i)
      for (std::size_t j = i + 1; j < s_.size(); ++j) {
        if (row(s_[i]) != row(s_[j])) continue;
        for (Symbol a = 0; a < k_; ++a)
          for (const Word& e : e_) {
            Word x = s_[i], y = s_[j];
            x.push_back(a);
            y.push_back(a);
            x.insert(x.end(), e.begin(), e.end());
            y.insert(y.end(), e.begin(), e.end());
            if (member(x) != member(y)) {
              Word ne{a};
              ne.insert(ne.end(), e.begin(), e.end());
              e_.push_back(ne);
              return true;
            }
          }
      }
    return false;
  }

  const SafetyInstance& inst_;
  std::size_t k_;
  std::ostream* trace_;
  std::vector<Word> s_;
  std::vector<Word> e_;
  std::map<Word, bool> cache_;
};

}  // namespace

LearnResult learn_and_check(const SafetyInstance& inst, const LearnerOptions& opts) {
  validate(inst);
  const Framework& f = *inst.framework;
  LearnResult res;
  ObservationTable table(inst, opts.trace);
  std::optional<SeparationContext> ctx;
  std::optional<Dfa> target;
  std::optional<Nfa> bad;
  std::optional<Dfa> outside;
  if (opts.exact) {
    target = inductive_dfa(inst);
  } else {
    ctx.emplace(inst);
    bad = ctx->non_inductive();
    outside = complement(f.constraints_dfa());
  }
  const AlphabetPtr& gamma = f.gamma();
  while (true) {
    Dfa h = table.hypothesis();
    if (res.equivalence_queries >= opts.max_equivalence_queries) {
      throw DiagnosticFailure("learner: equivalence query cap of " + std::to_string(opts.max_equivalence_queries) +
                              " reached");
    }
    ++res.equivalence_queries;
    if (opts.trace) *opts.trace << "eq " << res.equivalence_queries << " states=" << h.num_states() << "\n";
    std::optional<Word> cex;
    if (opts.exact) {
      auto eq = equivalent(h, *target);
      if (!eq.equal) cex = eq.witness;
    } else {
      // Negative counterexamples: accepted constraints that are not inductive.
      auto w1 = shortest_accepted(intersect(h.to_nfa(), *bad));
      auto w2 = shortest_accepted(intersect(h, *outside));
      if (w1 && (!w2 || shorter(*w1, *w2))) {
        cex = w1;
      } else {
        cex = w2;
      }
      if (cex && opts.trace) *opts.trace << "  negative " << format_word(*gamma, *cex) << "\n";
      if (!cex) {
        SafetyCheck chk = check_with_constraints(inst, h.to_nfa());
        res.verdict.stats["preach_h.complete"] = chk.preach_sizes.complete;
        res.verdict.stats["preach_h.trim"] = chk.preach_sizes.trim;
        if (chk.safe) {
          res.outcome = LearnOutcome::EarlySafe;
          res.verdict.safe = true;
          res.verdict.certificate = h;
          res.hypothesis = h;
          break;
        }
        std::string dimacs;
        auto sep = ctx->separate(chk.initial, chk.unsafe, opts.dimacs_dir.empty() ? nullptr : &dimacs);
        if (!opts.dimacs_dir.empty()) {
          std::ofstream(opts.dimacs_dir + "/sep_" + std::to_string(res.equivalence_queries) + ".cnf") << dimacs;
        }
        if (!sep) {
          res.outcome = LearnOutcome::AbstractionInsufficient;
          res.verdict.safe = false;
          res.verdict.witness_initial = chk.initial;
          res.verdict.witness_unsafe = chk.unsafe;
          res.hypothesis = h;
          if (opts.trace) {
            *opts.trace << "  unseparable " << format_word(*inst.sigma, chk.initial) << " -> "
                        << format_word(*inst.sigma, chk.unsafe) << "\n";
          }
          break;
        }
        if (accepts(h, *sep)) throw std::logic_error("learner: separator already accepted by the hypothesis");
        cex = sep;
        if (opts.trace) *opts.trace << "  positive " << format_word(*gamma, *cex) << "\n";
      }
    }
    if (!cex) {
      res.outcome = LearnOutcome::Learned;
      res.hypothesis = h;
      SafetyCheck chk = check_with_constraints(inst, h.to_nfa());
      res.verdict.stats["preach_h.complete"] = chk.preach_sizes.complete;
      res.verdict.stats["preach_h.trim"] = chk.preach_sizes.trim;
      res.verdict.safe = chk.safe;
      if (chk.safe) {
        res.verdict.certificate = h;
      } else {
        res.verdict.witness_initial = chk.initial;
        res.verdict.witness_unsafe = chk.unsafe;
      }
      break;
    }
    table.add_prefixes(*cex);
  }
  DfaSizes hs = minimal_sizes(res.hypothesis);
  res.membership_queries = table.queries();
  res.verdict.stats["hyp.complete"] = hs.complete;
  res.verdict.stats["hyp.trim"] = hs.trim;
  res.verdict.stats["queries.membership"] = res.membership_queries;
  res.verdict.stats["queries.equivalence"] = res.equivalence_queries;
  return res;
}

}  // namespace rmc
