#pragma once

#include <map>
#include <string>
#include <vector>

#include "rmc/invariants.hpp"

namespace rmc {

enum class Move { Left, Right, Stay };

struct TmTransition {
  std::string next;
  std::string write;
  Move move = Move::Stay;
};

/// Deterministic Turing machine; tape[0] is the blank.
struct TuringMachine {
  std::vector<std::string> states;
  std::string initial;
  std::string final_state;
  std::vector<std::string> tape;
  std::map<std::pair<std::string, std::string>, TmTransition> transitions;
  int size = 2;  // number of primes used by the gadget
};

/// Reads the TM text format; throws UsageError with line numbers.
TuringMachine parse_tm(const std::string& text);

enum class StepKind { Mark, Write, Init };

/// Choices for one oracle step. Mark uses `residue`; write uses `position`.
struct StepChoice {
  StepKind kind = StepKind::Mark;
  int residue = 0;
  int position = 0;  // TM index of the marked cell i
};

/**
 * The prime-marking system for a machine: the prime part is a bit word of
 * length s, followed by cells (mark bit, symbol). Cell symbol 0 is the blank
 * cell, then the machine states, tape symbols and "#".
 */
class HardnessGadget {
 public:
  explicit HardnessGadget(TuringMachine tm);

  const TuringMachine& tm() const { return tm_; }
  int n() const { return static_cast<int>(primes_.size()); }
  const std::vector<int>& primes() const { return primes_; }
  int s() const { return s_; }
  int m() const { return m_; }
  /// Offset of prime block j (0-based) in the prime part.
  int block_offset(int j) const { return offsets_[static_cast<std::size_t>(j)]; }

  const AlphabetPtr& sigma() const { return sigma_; }
  /// Cell alphabet: "." for the blank cell, then the symbols of the run.
  const AlphabetPtr& cells() const { return cells_; }
  const AlphabetPtr& levels() const { return levels_; }
  std::size_t num_cells() const { return cells_->size(); }
  Symbol cell_symbol(const std::string& name) const { return cells_->id(name); }
  Symbol hash_cell() const { return hash_; }
  bool is_state_cell(Symbol x) const { return x >= 1 && x <= tm_.states.size(); }

  Symbol bit(int b) const { return static_cast<Symbol>(b); }
  Symbol letter(int mark, Symbol cell) const;
  bool is_cell_letter(Symbol a) const { return a >= 2; }
  int mark_of(Symbol a) const;
  Symbol cell_of(Symbol a) const;

  /// Symbol written m cells after the window x1..x4; blank cell when any is blank.
  Symbol delta(Symbol x1, Symbol x2, Symbol x3, Symbol x4) const;

  Transducer mark_transducer() const;
  Transducer write_transducer() const;
  Transducer init_transducer() const;
  Transducer transition_relation() const;

  FrameworkPtr framework_v1() const;
  FrameworkPtr framework_v2() const;
  /// Convolution of the two parts.
  FrameworkPtr framework() const;

  Nfa initial_configurations() const;
  Nfa unsafe_configurations() const;

  SafetyInstance instance() const;
  /// Same system checked only against the inductiveness part.
  SafetyInstance instance_v2() const;

  /// Largest selected prime (1-based), 0 when none.
  int selected(const Word& u) const;
  bool good(const Word& u) const;
  /// Direct execution of one step; nullopt when the choice does not apply.
  std::optional<Word> oracle_step(const Word& u, const StepChoice& c) const;
  /// All oracle successors of u.
  std::set<Word> oracle_successors(const Word& u) const;

  /// x y over the level alphabet with TM-part length l and 0-based TM index i.
  Word constraint_a2(int i, int l) const;
  /**
   * Separator candidate for (u, v) in C_I x C_U: the positional constraint over
   * cells, paired with A2 for its last letter. nullopt when v is consistent
   * with the run of the machine.
   */
  std::optional<std::pair<Word, Word>> separator_candidate(const Word& u, const Word& v) const;
  /// Letter-wise pairing of a cell constraint and a level constraint.
  Word combine(const Word& a1, const Word& a2) const;

  /// Configuration from a prime-part bit string and (mark, cell name) pairs.
  Word config(const std::string& prime, const std::vector<std::pair<int, std::string>>& cells) const;
  /// First `length` symbols of the machine run, starting with the initial configuration.
  std::vector<Symbol> run_prefix(std::size_t length) const;

 private:
  TuringMachine tm_;
  std::vector<int> primes_;
  std::vector<int> offsets_;
  int s_ = 0;
  int m_ = 1;
  AlphabetPtr sigma_;
  AlphabetPtr cells_;
  AlphabetPtr levels_;
  Symbol hash_ = 0;
  Symbol blank_tape_ = 0;
  Symbol q0_ = 0;
  Symbol qf_ = 0;
  std::vector<int> block_of_;
};

}  // namespace rmc
