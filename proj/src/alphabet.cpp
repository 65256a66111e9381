#include "rmc/alphabet.hpp"

#include <sstream>

namespace rmc {

Alphabet::Alphabet(std::string label, std::vector<std::string> names, bool check_names)
    : label_(std::move(label)), names_(std::move(names)) {
  for (Symbol i = 0; i < names_.size(); ++i) {
    const std::string& n = names_[i];
    if (check_names && (n.empty() || n == kPadName)) {
      throw UsageError("alphabet " + label_ + ": invalid symbol name '" + n + "'");
    }
    for (char ch : n) {
      if (check_names && (ch == ' ' || ch == '\t' || ch == '\n' || ch == '/')) {
        throw UsageError("alphabet " + label_ + ": symbol '" + n + "' contains a reserved character");
      }
    }
    if (!index_.emplace(n, i).second) {
      throw UsageError("alphabet " + label_ + ": duplicate symbol '" + n + "'");
    }
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::id(std::string_view name) const {
  auto s = find(name);
  if (!s) throw UsageError("unknown symbol '" + std::string(name) + "' in alphabet " + label_);
  return *s;
}

AlphabetPtr make_alphabet(std::string label, std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(label), std::move(names));
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view what) {
  if (!same_alphabet(a, b)) {
    throw UsageError(std::string(what) + ": alphabet mismatch between " + a->label() + " and " +
                     b->label());
  }
}

AlphabetPtr powerset_alphabet(const AlphabetPtr& base) {
  if (base->size() > 16) throw UsageError("powerset of alphabet " + base->label() + " is too large");
  std::vector<std::string> names;
  const std::size_t n = std::size_t{1} << base->size();
  names.reserve(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (Symbol i = 0; i < base->size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        if (!first) s += ",";
        s += base->name(i);
        first = false;
      }
    }
    s += "}";
    names.push_back(std::move(s));
  }
  return make_alphabet("2^" + base->label(), std::move(names));
}

AlphabetPtr product_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  std::vector<std::string> names;
  names.reserve(a->size() * b->size());
  for (const auto& x : a->names())
    for (const auto& y : b->names()) names.push_back("[" + x + ";" + y + "]");
  return make_alphabet(a->label() + "x" + b->label(), std::move(names));
}

AlphabetPtr tagged_union_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  std::vector<std::string> names;
  names.reserve(a->size() + b->size());
  for (const auto& x : a->names()) names.push_back("1:" + x);
  for (const auto& y : b->names()) names.push_back("2:" + y);
  return make_alphabet(a->label() + "+" + b->label(), std::move(names));
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  if (text.find(' ') != std::string_view::npos) {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) w.push_back(alphabet.id(tok));
    return w;
  }
  if (text.empty() || text == "eps") return w;
  if (auto s = alphabet.find(text)) {
    w.push_back(*s);
    return w;
  }
  for (char ch : text) w.push_back(alphabet.id(std::string(1, ch)));
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  bool single = true;
  for (const auto& n : alphabet.names())
    if (n.size() != 1) single = false;
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

}  // namespace rmc
