#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rmc/invariants.hpp"

namespace rmc {

/// Contents of an instance file. The framework is optional.
struct InstanceFile {
  std::string name;
  AlphabetPtr sigma;
  Transducer delta;
  Nfa init;
  std::vector<std::pair<std::string, Nfa>> unsafe;
  FrameworkPtr framework;

  /// Instance for the unsafe set at `property`, checked under `f`.
  SafetyInstance instance(std::size_t property, FrameworkPtr f) const;
  std::size_t property_index(const std::string& name) const;
};

/// Throws UsageError with "<source>:<line>:" prefixed diagnostics.
InstanceFile parse_instance(const std::string& text, const std::string& source = "<input>");
InstanceFile load_instance(const std::string& path);
std::string write_instance(const InstanceFile& file);
void save_instance(const InstanceFile& file, const std::string& path);

/// Writes one automaton body (states, initial, final, trans lines).
std::string write_automaton(const Nfa& a, const std::string& indent = "  ");

}  // namespace rmc
