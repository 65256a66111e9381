#pragma once

#include <unordered_map>
#include <vector>

#include "rmc/alphabet.hpp"

namespace rmc::detail {

/// Dense numbering of explored keys in discovery order.
template <class Key, class Hash = std::hash<Key>>
class StateIndex {
 public:
  /// Returns the id and whether the key is new.
  std::pair<State, bool> insert(const Key& k) {
    auto [it, fresh] = ids_.emplace(k, static_cast<State>(keys_.size()));
    if (fresh) keys_.push_back(k);
    return {it->second, fresh};
  }
  State get(const Key& k) { return insert(k).first; }
  const Key& key(State s) const { return keys_[s]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::unordered_map<Key, State, Hash> ids_;
  std::vector<Key> keys_;
};

struct VectorHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 1000003u ^ (static_cast<std::size_t>(x) + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }
};

}  // namespace rmc::detail
