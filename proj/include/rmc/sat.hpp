#pragma once

#include <string>
#include <vector>

namespace rmc {

/// DIMACS literal: +v or -v for variable v >= 1.
using Lit = int;

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;

  int new_var() { return ++num_vars; }
  void add(std::vector<Lit> clause) { clauses.push_back(std::move(clause)); }
  std::string to_dimacs() const;
};

struct SatResult {
  bool sat = false;
  std::vector<bool> model;  // model[v] for v in 1..num_vars; index 0 unused
  std::size_t decisions = 0;
  std::size_t conflicts = 0;
};

/**
 * CDCL with two watched literals and first-UIP learning. Decisions take the
 * lowest unassigned variable, positive phase first; no restarts, so runs are
 * reproducible.
 */
SatResult sat_solve(const Cnf& cnf);
bool satisfies(const Cnf& cnf, const std::vector<bool>& model);
Cnf parse_dimacs(const std::string& text);

}  // namespace rmc
