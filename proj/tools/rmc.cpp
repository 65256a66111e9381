// Command-line driver: safety checks on instance files and hardness instance generation.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rmc/hardness.hpp"
#include "rmc/instance_io.hpp"
#include "rmc/learner.hpp"
#include "rmc/separability.hpp"

namespace fs = std::filesystem;
using namespace rmc;

namespace {

struct CheckOptions {
  std::string file;
  std::string framework;
  std::string mode = "direct";
  std::string property;
  bool exact = false;
  std::string dot_dir;
  std::string dimacs_dir;
  std::size_t max_eq = 10000;
  bool kv_only = false;
  bool verbose = false;
};

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name);
  if (!out) throw UsageError("cannot write " + (fs::path(dir) / name).string());
  out << text;
}

struct Report {
  std::vector<std::pair<std::string, std::string>> fields;
  void add(const std::string& k, const std::string& v) { fields.emplace_back(k, v); }
  void add(const std::string& k, std::size_t v) { add(k, std::to_string(v)); }
};

void print_table(std::ostream& out, const Report& r, const Verdict& v) {
  for (const auto& [k, val] : r.fields) {
    if (k.find('.') != std::string::npos) continue;
    out << std::left << std::setw(22) << k << val << "\n";
  }
  const std::pair<const char*, const char*> rows[] = {
      {"ind", "Ind"}, {"preach", "PReach"}, {"hyp", "H"}, {"preach_h", "PReach_H"}};
  bool header = false;
  for (auto [key, label] : rows) {
    auto t = v.stats.find(std::string(key) + ".trim");
    auto c = v.stats.find(std::string(key) + ".complete");
    if (t == v.stats.end() || c == v.stats.end()) continue;
    if (!header) {
      out << std::left << std::setw(22) << "automaton" << std::right << std::setw(8) << "trim" << std::setw(10)
          << "complete" << "\n";
      header = true;
    }
    out << std::left << std::setw(22) << label << std::right << std::setw(8) << t->second << std::setw(10)
        << c->second << "\n";
  }
  for (const char* key : {"queries.membership", "queries.equivalence", "nonind.states"}) {
    auto it = v.stats.find(key);
    if (it != v.stats.end()) out << std::left << std::setw(22) << key << it->second << "\n";
  }
  for (const auto& [k, val] : r.fields)
    if (k.rfind("witness.", 0) == 0) out << std::left << std::setw(22) << k << val << "\n";
}

int run_check(const CheckOptions& o) {
  InstanceFile file = load_instance(o.file);
  FrameworkPtr f;
  if (!o.framework.empty()) {
    f = parse_framework_spec(o.framework, file.sigma, [](const std::string& path, const AlphabetPtr& sigma) {
      InstanceFile other = load_instance(path);
      if (!other.framework) throw UsageError(path + " has no framework section");
      require_same_alphabet(other.framework->sigma(), sigma, "framework file");
      return other.framework;
    });
  } else if (file.framework) {
    f = file.framework;
  } else {
    throw UsageError(o.file + " has no framework section; pass --framework");
  }
  if (o.mode != "direct" && o.mode != "lazy") throw UsageError("--mode must be direct or lazy");
  std::vector<std::size_t> props;
  if (o.property.empty()) {
    for (std::size_t i = 0; i < file.unsafe.size(); ++i) props.push_back(i);
  } else {
    props.push_back(file.property_index(o.property));
  }
  if (!o.dot_dir.empty()) {
    write_file(o.dot_dir, "delta.dot", to_dot(file.delta, "delta"));
    write_file(o.dot_dir, "init.dot", to_dot(file.init, "init"));
    write_file(o.dot_dir, "interp.dot", to_dot(f->interp(), "interp"));
  }
  bool all_safe = true;
  bool first = true;
  for (std::size_t p : props) {
    const std::string& pname = file.unsafe[p].first;
    SafetyInstance inst = file.instance(p, f);
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    if (o.mode == "direct") {
      v = abstract_safety_direct(inst);
    } else {
      if (!o.exact && !is_length_preserving(inst.delta)) {
        throw UnsupportedInstance("lazy mode needs a length-preserving transition relation");
      }
      LearnerOptions lo;
      lo.exact = o.exact;
      lo.max_equivalence_queries = o.max_eq;
      lo.trace = o.verbose ? &std::cerr : nullptr;
      if (!o.dimacs_dir.empty()) {
        lo.dimacs_dir = (fs::path(o.dimacs_dir) / pname).string();
        fs::create_directories(lo.dimacs_dir);
      }
      LearnResult lr = learn_and_check(inst, lo);
      v = lr.verdict;
      if (!o.dot_dir.empty()) write_file(o.dot_dir, pname + "_hypothesis.dot", to_dot(lr.hypothesis, "hypothesis"));
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    if (!o.dot_dir.empty()) {
      write_file(o.dot_dir, pname + "_unsafe.dot", to_dot(inst.c_unsafe, "unsafe"));
      if (v.certificate) write_file(o.dot_dir, pname + "_certificate.dot", to_dot(*v.certificate, "certificate"));
    }
    if (!v.safe && o.mode == "direct" && !o.dimacs_dir.empty()) {
      // Formula for the witness pair; unsatisfiable by construction.
      try {
        SeparationContext ctx(inst);
        std::string cnf;
        ctx.separate(v.witness_initial, v.witness_unsafe, &cnf);
        write_file(o.dimacs_dir, pname + "_witness.cnf", cnf);
      } catch (const UnsupportedInstance& e) {
        if (o.verbose) std::cerr << "no witness formula: " << e.what() << "\n";
      }
    }
    Report r;
    r.add("instance", file.name);
    r.add("property", pname);
    r.add("framework", f->name());
    r.add("mode", o.mode + (o.exact ? "_exact" : ""));
    r.add("verdict", v.safe ? "safe" : "not_abstract_safe");
    for (const auto& [k, val] : v.stats) r.add(k, val);
    if (!v.safe) {
      r.add("witness.initial", format_word(*inst.sigma, v.witness_initial));
      r.add("witness.unsafe", format_word(*inst.sigma, v.witness_unsafe));
    }
    r.add("time_ms", static_cast<std::size_t>(ms.count()));
    if (!first) std::cout << "\n";
    first = false;
    if (!o.kv_only) {
      print_table(std::cout, r, v);
      std::cout << "\n";
    }
    for (const auto& [k, val] : r.fields) std::cout << k << "=" << val << "\n";
    all_safe = all_safe && v.safe;
  }
  return all_safe ? 0 : 1;
}

int run_gen(const std::string& tm_path, const std::string& out, bool levels_only) {
  std::ifstream in(tm_path);
  if (!in) throw UsageError("cannot read " + tm_path);
  std::stringstream ss;
  ss << in.rdbuf();
  HardnessGadget g(parse_tm(ss.str()));
  SafetyInstance inst = levels_only ? g.instance_v2() : g.instance();
  InstanceFile f{inst.name, inst.sigma, inst.delta, inst.c_init, {{"accept", inst.c_unsafe}}, inst.framework};
  save_instance(f, out);
  std::cout << "delta.states=" << inst.delta.num_states() << "\n";
  std::cout << "interp.states=" << inst.framework->interp_dfa().num_states() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular model checking with abstraction frameworks"};
  app.require_subcommand(1);
  CheckOptions o;
  auto* check = app.add_subcommand("check", "Decide abstract safety for every property of an instance file");
  check->add_option("file", o.file, "Instance file")->required();
  check->add_option("--framework", o.framework, "Framework spec: disj=<b>, xor, views=<k>, union(..), conv(..), file=<path>");
  check->add_option("--mode", o.mode, "direct or lazy")->check(CLI::IsMember({"direct", "lazy"}));
  check->add_option("--property", o.property, "Only check this unsafe set");
  check->add_flag("--exact", o.exact, "Lazy mode: answer equivalence against the full inductive DFA");
  check->add_option("--dot", o.dot_dir, "Write DOT files to this directory");
  check->add_option("--dimacs", o.dimacs_dir, "Write separation formulas to this directory");
  check->add_option("--max-eq", o.max_eq, "Equivalence query cap");
  check->add_flag("--kv-only", o.kv_only, "Only print key=value lines");
  check->add_flag("-v,--verbose", o.verbose, "Trace queries on stderr");

  std::string tm_path, out_path;
  bool levels_only = false;
  auto* gen = app.add_subcommand("gen-hardness", "Generate the prime-marking instance for a Turing machine");
  gen->add_option("tm", tm_path, "Turing machine file")->required();
  gen->add_option("-o,--output", out_path, "Instance file to write")->required();
  gen->add_flag("--levels-only", levels_only, "Use only the inductiveness part of the framework");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*check) return run_check(o);
    return run_gen(tm_path, out_path, levels_only);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const DiagnosticFailure& e) {
    std::cerr << "gave up: " << e.what() << "\n";
    return 4;
  }
}
