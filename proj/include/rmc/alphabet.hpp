#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rmc {

using Symbol = std::uint32_t;
using State = std::uint32_t;
using Word = std::vector<Symbol>;

/// Invalid arguments, mismatched alphabets, malformed specs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is well formed but outside what a procedure supports.
class UnsupportedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A procedure gave up (iteration cap, enumeration guard).
class DiagnosticFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Name used for the padding letter when rendering pair labels.
inline constexpr std::string_view kPadName = "_";

/**
 * Finite ordered set of named symbols. Symbol ids are dense indices.
 * Equality compares the symbol lists; the label is only used in messages.
 */
class Alphabet {
 public:
  /// With `check_names`, names must be non-empty and free of blanks, '/' and the pad name.
  Alphabet(std::string label, std::vector<std::string> names, bool check_names = true);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& label() const { return label_; }

  std::optional<Symbol> find(std::string_view name) const;
  /// Throws UsageError for unknown names.
  Symbol id(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::string label, std::vector<std::string> names);

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);
/// Throws UsageError naming both alphabets when they differ.
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view what);

/// Subsets of `base`, symbol id = bit mask over base ids, rendered "{a,b}".
AlphabetPtr powerset_alphabet(const AlphabetPtr& base);
/// Pairs of `a` and `b`, id = i * |b| + j, rendered "[x;y]".
AlphabetPtr product_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);
/// Disjoint union with "1:" / "2:" prefixes; ids of `b` are shifted by |a|.
AlphabetPtr tagged_union_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

/**
 * Words are written either as space separated symbol names or, when every
 * symbol name is a single character, as a plain string ("tnt").
 */
Word parse_word(const Alphabet& alphabet, std::string_view text);
std::string format_word(const Alphabet& alphabet, const Word& word);

}  // namespace rmc
