#include "rmc/instance_io.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace rmc {

namespace {

struct Body {
  int line = 0;  // header line
  std::optional<std::size_t> states;
  std::vector<std::pair<State, int>> initial, final;
  struct Trans {
    State from;
    std::string label;
    State to;
    int line;
  };
  std::vector<Trans> trans;
  std::vector<Trans> eps;
};

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw UsageError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  State parse_state(const std::string& s, int line) const {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s, &used);
      if (used == s.size()) return static_cast<State>(v);
    } catch (const std::exception&) {
    }
    fail(line, "expected a state index, got '" + s + "'");
  }

  void body_line(Body& b, const std::vector<std::string>& w, int line) const {
    if (w[0] == "states") {
      if (w.size() != 2) fail(line, "expected: states <count>");
      b.states = parse_state(w[1], line);
    } else if (w[0] == "initial" || w[0] == "final") {
      auto& dst = w[0] == "initial" ? b.initial : b.final;
      for (std::size_t i = 1; i < w.size(); ++i) dst.emplace_back(parse_state(w[i], line), line);
    } else if (w[0] == "trans") {
      if (w.size() != 4) fail(line, "expected: trans <from> <label> <to>");
      b.trans.push_back({parse_state(w[1], line), w[2], parse_state(w[3], line), line});
    } else if (w[0] == "eps") {
      if (w.size() != 3) fail(line, "expected: eps <from> <to>");
      b.eps.push_back({parse_state(w[1], line), "", parse_state(w[2], line), line});
    } else {
      fail(line, "unknown automaton directive '" + w[0] + "'");
    }
  }

  /// `label` maps a label to a symbol or fails.
  template <class Label>
  Nfa build(const Body& b, const AlphabetPtr& alphabet, Label label) const {
    if (!b.states) fail(b.line, "automaton has no 'states' line");
    const std::size_t n = *b.states;
    auto check = [&](State q, int line) {
      if (q >= n) fail(line, "state " + std::to_string(q) + " out of range (states " + std::to_string(n) + ")");
    };
    NfaBuilder nb(alphabet, n);
    for (auto [q, line] : b.initial) {
      check(q, line);
      nb.set_initial(q);
    }
    for (auto [q, line] : b.final) {
      check(q, line);
      nb.set_final(q);
    }
    for (const auto& t : b.trans) {
      check(t.from, t.line);
      check(t.to, t.line);
      nb.add_transition(t.from, label(t.label, t.line), t.to);
    }
    for (const auto& t : b.eps) {
      check(t.from, t.line);
      check(t.to, t.line);
      nb.add_epsilon(t.from, t.to);
    }
    return std::move(nb).build();
  }

  Symbol symbol(const Alphabet& a, const std::string& name, int line) const {
    auto s = a.find(name);
    if (!s) fail(line, "unknown symbol '" + name + "' in alphabet " + a.label());
    return *s;
  }

  Nfa build_nfa(const Body& b, const AlphabetPtr& a) const {
    return build(b, a, [&](const std::string& l, int line) { return symbol(*a, l, line); });
  }

  Transducer build_transducer(const Body& b, const AlphabetPtr& left, const AlphabetPtr& right) const {
    const PairCodec c{left->size(), right->size()};
    auto side = [&](const Alphabet& a, const std::string& name, Symbol pad, int line) {
      return name == kPadName ? pad : symbol(a, name, line);
    };
    Nfa n = build(b, pair_alphabet(left, right), [&](const std::string& l, int line) {
      auto slash = l.find('/');
      if (slash == std::string::npos) fail(line, "pair label '" + l + "' must have the form a/b");
      return c.pack(side(*left, l.substr(0, slash), c.left_pad(), line),
                    side(*right, l.substr(slash + 1), c.right_pad(), line));
    });
    return Transducer(left, right, std::move(n));
  }

 private:
  std::string source_;
};

std::string join_names(const Alphabet& a) {
  std::string s;
  for (const auto& n : a.names()) s += " " + n;
  return s;
}

}  // namespace

SafetyInstance InstanceFile::instance(std::size_t property, FrameworkPtr f) const {
  if (property >= unsafe.size()) throw UsageError("instance " + name + " has no property #" + std::to_string(property));
  if (!f) f = framework;
  if (!f) throw UsageError("instance " + name + " has no framework; pass one explicitly");
  return {name, sigma, delta, init, unsafe[property].second, std::move(f)};
}

std::size_t InstanceFile::property_index(const std::string& prop) const {
  for (std::size_t i = 0; i < unsafe.size(); ++i)
    if (unsafe[i].first == prop) return i;
  throw UsageError("instance " + name + " has no property '" + prop + "'");
}

InstanceFile parse_instance(const std::string& text, const std::string& source) {
  Parser p(source);
  std::istringstream in(text);
  std::string name = "instance";
  AlphabetPtr sigma;
  std::optional<Body> delta, init;
  std::vector<std::pair<std::string, Body>> unsafe;
  bool has_framework = false;
  std::string fw_name;
  int fw_line = 0;
  AlphabetPtr gamma;
  std::optional<Body> fw_constraints, fw_interp;
  Body* current = nullptr;
  bool in_framework = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (first == 0) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) p.fail(lineno, "expected a section header ending in ':'");
      auto head = split(line.substr(0, colon));
      auto rest = split(line.substr(colon + 1));
      if (head.empty()) p.fail(lineno, "empty section header");
      current = nullptr;
      in_framework = false;
      if (head[0] == "name" && head.size() == 1) {
        if (rest.size() != 1) p.fail(lineno, "expected: name: <identifier>");
        name = rest[0];
      } else if (head[0] == "alphabet" && head.size() == 1) {
        if (sigma) p.fail(lineno, "second alphabet section");
        if (rest.empty()) p.fail(lineno, "empty alphabet");
        try {
          sigma = make_alphabet("sigma", rest);
        } catch (const UsageError& e) {
          p.fail(lineno, e.what());
        }
      } else if (head[0] == "transducer" && head.size() == 2 && head[1] == "delta") {
        if (delta) p.fail(lineno, "second transducer delta section");
        delta.emplace().line = lineno;
        current = &*delta;
      } else if (head[0] == "nfa" && head.size() == 2 && head[1] == "init") {
        if (init) p.fail(lineno, "second nfa init section");
        init.emplace().line = lineno;
        current = &*init;
      } else if (head[0] == "nfa" && head.size() >= 2 && head.size() <= 3 && head[1] == "unsafe") {
        std::string prop = head.size() == 3 ? head[2] : "unsafe";
        for (const auto& [n, b] : unsafe)
          if (n == prop) p.fail(lineno, "duplicate property '" + prop + "'");
        unsafe.emplace_back(prop, Body{});
        unsafe.back().second.line = lineno;
        current = &unsafe.back().second;
      } else if (head[0] == "framework" && head.size() <= 2) {
        if (has_framework) p.fail(lineno, "second framework section");
        has_framework = true;
        in_framework = true;
        fw_line = lineno;
        fw_name = head.size() == 2 ? head[1] : "file";
      } else {
        p.fail(lineno, "unknown section '" + line.substr(0, colon) + "'");
      }
      if (!rest.empty() && head[0] != "name" && head[0] != "alphabet") p.fail(lineno, "unexpected text after ':'");
      continue;
    }
    auto w = split(line);
    if (in_framework && (w[0] == "gamma" || w[0] == "constraints" || w[0] == "interp")) {
      if (w[0] == "gamma") {
        if (w.size() < 2) p.fail(lineno, "empty gamma alphabet");
        try {
          gamma = std::make_shared<const Alphabet>("gamma", std::vector<std::string>(w.begin() + 1, w.end()));
        } catch (const UsageError& e) {
          p.fail(lineno, e.what());
        }
      } else if (w.size() != 1) {
        p.fail(lineno, "unexpected text after '" + w[0] + "'");
      } else {
        auto& slot = w[0] == "constraints" ? fw_constraints : fw_interp;
        if (slot) p.fail(lineno, "second '" + w[0] + "' block");
        slot.emplace().line = lineno;
        current = &*slot;
      }
      continue;
    }
    if (!current) p.fail(lineno, "automaton line outside of an automaton section");
    p.body_line(*current, w, lineno);
  }
  if (!sigma) p.fail(lineno, "missing alphabet section");
  if (!delta) p.fail(lineno, "missing transducer delta section");
  if (!init) p.fail(lineno, "missing nfa init section");
  if (unsafe.empty()) p.fail(lineno, "missing nfa unsafe section");
  std::vector<std::pair<std::string, Nfa>> us;
  for (const auto& [n, b] : unsafe) us.emplace_back(n, p.build_nfa(b, sigma));
  FrameworkPtr fw;
  if (has_framework) {
    if (!gamma) p.fail(fw_line, "framework without gamma line");
    if (!fw_constraints) p.fail(fw_line, "framework without constraints block");
    if (!fw_interp) p.fail(fw_line, "framework without interp block");
    Nfa c = p.build_nfa(*fw_constraints, gamma);
    Transducer v = p.build_transducer(*fw_interp, gamma, sigma);
    try {
      fw = std::make_shared<Framework>(fw_name, sigma, gamma, std::move(c), std::move(v));
    } catch (const UsageError& e) {
      p.fail(fw_interp->line, e.what());
    }
  }
  return InstanceFile{name, sigma, p.build_transducer(*delta, sigma, sigma), p.build_nfa(*init, sigma),
                      std::move(us), fw};
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), path);
}

std::string write_automaton(const Nfa& a, const std::string& indent, const std::function<std::string(Symbol)>& label) {
  std::ostringstream out;
  out << indent << "states " << a.num_states() << "\n";
  out << indent << "initial";
  for (State q : a.initial()) out << " " << q;
  out << "\n" << indent << "final";
  for (State q : a.finals()) out << " " << q;
  out << "\n";
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) out << indent << "trans " << q << " " << label(e.symbol) << " " << e.target << "\n";
    for (State t : a.epsilon(q)) out << indent << "eps " << q << " " << t << "\n";
  }
  return out.str();
}

std::string write_automaton(const Nfa& a, const std::string& indent) {
  return write_automaton(a, indent, [&](Symbol s) { return a.alphabet()->name(s); });
}

namespace {
std::string write_transducer(const Transducer& t, const std::string& indent) {
  const PairCodec& c = t.codec();
  return write_automaton(t.automaton(), indent, [&](Symbol s) {
    const std::string l = c.first_is_pad(s) ? std::string(kPadName) : t.left()->name(c.first(s));
    const std::string r = c.second_is_pad(s) ? std::string(kPadName) : t.right()->name(c.second(s));
    return l + "/" + r;
  });
}
}  // namespace

std::string write_instance(const InstanceFile& f) {
  std::ostringstream out;
  out << "name: " << f.name << "\n";
  out << "alphabet:" << join_names(*f.sigma) << "\n\n";
  out << "transducer delta:\n" << write_transducer(f.delta, "  ") << "\n";
  out << "nfa init:\n" << write_automaton(f.init, "  ") << "\n";
  for (const auto& [n, a] : f.unsafe) out << "nfa unsafe " << n << ":\n" << write_automaton(a, "  ") << "\n";
  if (f.framework) {
    out << "framework " << f.framework->name() << ":\n";
    out << "  gamma" << join_names(*f.framework->gamma()) << "\n";
    out << "  constraints\n" << write_automaton(f.framework->constraints(), "    ");
    out << "  interp\n" << write_transducer(f.framework->interp(), "    ");
  }
  return out.str();
}

void save_instance(const InstanceFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << write_instance(f);
}

}  // namespace rmc
