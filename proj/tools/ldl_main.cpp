#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldl/duality.hpp"
#include "ldl/error.hpp"
#include "ldl/report.hpp"
#include "ldl/states.hpp"
#include "ldl/verify/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ldl;

namespace {

enum Exit { kPass = 0, kNegative = 1, kInput = 2, kPrecondition = 3 };

struct RunConfig {
  std::size_t k = 6;
  std::size_t max_states = 100'000;
  std::size_t max_maps = 1'000'000;
  std::size_t max_universe = 2'000'000;
  std::size_t depth = 8;
  std::size_t node_budget = 2'000'000;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  bool dot = false;
};

struct Loaded {
  std::shared_ptr<const Calculus> calc;
  std::shared_ptr<const FreeCalculus> free;
  std::shared_ptr<const SemanticCalculus> semantic;
};

Loaded load_calculus(const std::string& path, const RunConfig& cfg) {
  Loaded l;
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".dsb") {
    l.free = std::make_shared<const FreeCalculus>(ldl::load_basis(path));
    l.calc = l.free;
  } else if (ext == ".pos") {
    l.semantic = std::make_shared<const SemanticCalculus>(ldl::load_poset(path), cfg.max_states);
    l.calc = l.semantic->backend();
  } else {
    throw ldl::InputError("'" + path + "' is neither a .dsb basis nor a .pos poset");
  }
  return l;
}

std::shared_ptr<const ldl::StateSpace> states_of(const Loaded& l, const RunConfig& cfg) {
  return l.semantic ? l.semantic->states() : ldl::state_poset(l.calc, cfg.max_states);
}

// Writes `text` to <out>/<name> when an output directory is set, else to stdout.
void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(cfg.out);
  std::ofstream file(fs::path(cfg.out) / name);
  if (!file) throw ldl::InputError("cannot write " + (fs::path(cfg.out) / name).string());
  file << text;
}

void emit_report(const RunConfig& cfg, const std::string& stem, const json& doc, const std::string& text) {
  if (cfg.format == "json") {
    emit(cfg, stem + ".json", doc.dump(2) + "\n");
  } else {
    emit(cfg, stem + ".txt", text);
  }
}

std::string set_text(const FinitePoset& d, ElementSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x : ldl::elements_of(s)) {
    out += (first ? "" : ", ") + d.id(x);
    first = false;
  }
  return out + "}";
}

int cmd_check_sequent(const RunConfig& cfg, const std::string& file, const std::string& text, bool witness) {
  const Loaded l = load_calculus(file, cfg);
  const Sequent s = ldl::parse_sequent(text, *l.calc);
  const bool valid = l.calc->entails(s);
  json doc = {{"sequent", ldl::print_sequent(s)}, {"calculus", l.calc->kind()}, {"verdict", valid ? "VALID" : "INVALID"}};
  std::string out = std::string(valid ? "VALID" : "INVALID") + " " + ldl::print_sequent(s) + "\n";
  if (witness && l.free) {
    ldl::SearchOptions options{cfg.depth, cfg.node_budget};
    const auto d = ldl::search_derivation(*l.free, s, options);
    if (d) {
      std::string tree = ldl::print_derivation(*d);
      while (!tree.empty() && tree.back() == '\n') tree.pop_back();
      out += tree + "\n";
      doc["derivation"] = tree;
      doc["height"] = ldl::height(*d);
    } else {
      out += "no derivation of height <= " + std::to_string(cfg.depth) + "\n";
      doc["derivation"] = nullptr;
    }
    doc["depth"] = cfg.depth;
  } else if (witness) {
    const FinitePoset& d = l.semantic->domain();
    ElementSet meet = d.all();
    json parts = json::array();
    for (const Formula& g : s.antecedent()) {
      const ElementSet h = l.semantic->hat(g);
      meet &= h;
      out += "  [[" + ldl::print_formula(g) + "]] = " + set_text(d, h) + "\n";
      parts.push_back({{"formula", ldl::print_formula(g)}, {"denotation", set_text(d, h)}});
    }
    const ElementSet rhs = l.semantic->hat(s.succedent());
    const bool included = (meet & ~rhs) == 0;
    out += "  meet of antecedent = " + set_text(d, meet) + "\n";
    out += "  [[" + ldl::print_formula(s.succedent()) + "]] = " + set_text(d, rhs) + "\n";
    out += std::string("  inclusion ") + (included ? "holds" : "fails") + "\n";
    doc["antecedent"] = parts;
    doc["meet"] = set_text(d, meet);
    doc["succedent_denotation"] = set_text(d, rhs);
    doc["inclusion"] = included;
    if (included != valid) throw ldl::PreconditionViolated("denotational inclusion disagrees with entailment");
  }
  emit_report(cfg, "sequent", doc, out);
  return valid ? kPass : kNegative;
}

int cmd_check_derivation(const RunConfig& cfg, const std::string& basis, const std::string& file) {
  const Loaded l = load_calculus(basis, cfg);
  std::ifstream in(file);
  if (!in) throw ldl::InputError("cannot read " + file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ldl::Derivation d = ldl::parse_derivation(buffer.str(), *l.calc);
  const ldl::Verdict v = ldl::check_derivation(*l.calc, d);
  const json doc = {{"conclusion", ldl::print_sequent(d.conclusion)},
                    {"verdict", v.ok ? "VALID" : "INVALID"},
                    {"height", ldl::height(d)},
                    {"nodes", ldl::node_count(d)},
                    {"diagnostic", v.diagnostic}};
  std::string out = std::string(v.ok ? "VALID" : "INVALID") + " derivation of " + ldl::print_sequent(d.conclusion);
  out += " (height " + std::to_string(ldl::height(d)) + ")\n";
  if (!v.diagnostic.empty()) out += "  " + v.diagnostic + "\n";
  emit_report(cfg, "derivation", doc, out);
  return v.ok ? kPass : kNegative;
}

int cmd_states(const RunConfig& cfg, const std::string& file) {
  const Loaded l = load_calculus(file, cfg);
  const auto space = states_of(l, cfg);
  if (cfg.out.empty()) {
    std::cout << (cfg.dot ? ldl::state_space_dot(*space) : ldl::states_jsonl(*space));
    return kPass;
  }
  emit(cfg, "states.jsonl", ldl::states_jsonl(*space));
  if (cfg.dot) emit(cfg, "states.dot", ldl::state_space_dot(*space));
  std::cerr << space->size() << " states\n";
  return kPass;
}

int cmd_domain_check(const RunConfig& cfg, const std::string& file) {
  const FinitePoset p = ldl::load_poset(file);
  const ldl::Verdict v = ldl::is_l_domain(p);
  const json doc = {{"elements", p.size()}, {"l_domain", v.ok}, {"diagnostic", v.diagnostic}};
  std::string out = std::string(v.ok ? "L-DOMAIN" : "NOT-AN-L-DOMAIN") + " (" + std::to_string(p.size()) + " elements)\n";
  if (!v.diagnostic.empty()) out += "  " + v.diagnostic + "\n";
  emit_report(cfg, "domain", doc, out);
  if (cfg.dot) emit(cfg, "domain.dot", ldl::poset_dot(p));
  return v.ok ? kPass : kNegative;
}

int cmd_roundtrip(const RunConfig& cfg, const std::string& file) {
  const FinitePoset p = ldl::load_poset(file);
  const ldl::IsoCertificate cert = ldl::check_representation_iso(p, cfg.max_states);
  json doc = {{"verdict", cert.verdict.ok ? "PASS" : "FAIL"}, {"diagnostic", cert.verdict.diagnostic}, {"bijection", cert.lines}};
  std::string out = std::string(cert.verdict.ok ? "PASS" : "FAIL") + " " + cert.verdict.diagnostic + "\n";
  for (const std::string& line : cert.lines) out += "  " + line + "\n";
  emit_report(cfg, "roundtrip", doc, out);
  if (cfg.dot) {
    emit(cfg, "domain.dot", ldl::poset_dot(p, "domain"));
    emit(cfg, "states.dot", ldl::state_space_dot(*ldl::calculus_of_domain(p)->states()));
  }
  return cert.verdict.ok ? kPass : kNegative;
}

int cmd_morphisms(const RunConfig& cfg, const std::string& from, const std::string& to) {
  const Loaded a = load_calculus(from, cfg);
  const Loaded b = load_calculus(to, cfg);
  const auto src = states_of(a, cfg);
  const auto dst = states_of(b, cfg);
  const FormulaUniverse ua(a.calc, cfg.k, cfg.max_universe);
  const FormulaUniverse ub(b.calc, cfg.k, cfg.max_universe);
  const ldl::RelationChecker checker(src, dst, ua, ub);
  const auto maps = ldl::monotone_maps(src->poset, dst->poset, cfg.max_maps);
  json list = json::array();
  std::string out = std::to_string(maps.size()) + " consequence relations " + from + " -> " + to + "\n";
  bool ok = true;
  std::string dot;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto theta = ldl::theta_of_f(src, dst, maps[i]);
    const ldl::Verdict v = checker.check(theta);
    ok = ok && v.ok;
    json entry = {{"index", i}, {"table", theta.table}, {"rows", ldl::describe(theta)}, {"valid", v.ok}, {"diagnostic", v.diagnostic}};
    out += "relation " + std::to_string(i) + (v.ok ? "" : " INVALID: " + v.diagnostic) + "\n";
    for (const std::string& row : ldl::describe(theta)) out += "  " + row + "\n";
    if (a.semantic && b.semantic) {
      const MonotoneMap h = ldl::consequence_to_scott(*a.semantic, *b.semantic, theta);
      std::string scott;
      for (std::size_t x = 0; x < h.size(); ++x) scott += (x ? ", " : "") + a.semantic->domain().id(x) + " -> " + b.semantic->domain().id(h[x]);
      out += "  scott map: " + scott + "\n";
      entry["scott_map"] = scott;
    }
    if (cfg.dot) dot += ldl::relation_dot(theta, "relation_" + std::to_string(i));
    list.push_back(std::move(entry));
  }
  const json doc = {{"source", from}, {"target", to}, {"k", cfg.k}, {"count", maps.size()}, {"relations", list}};
  emit_report(cfg, "morphisms", doc, out);
  if (cfg.dot) emit(cfg, "morphisms.dot", dot);
  return ok ? kPass : kNegative;
}

int cmd_suite(const RunConfig& cfg, ldl::verify::SuiteConfig suite) {
  suite.k = cfg.k;
  suite.max_states = cfg.max_states;
  suite.max_maps = cfg.max_maps;
  suite.max_universe = cfg.max_universe;
  suite.depth = cfg.depth;
  suite.node_budget = cfg.node_budget;
  suite.seed = cfg.seed;
  const auto results = ldl::verify::run_suite(suite);
  if (cfg.format == "json") {
    emit(cfg, "suite.json", ldl::verify::report_json(results, suite));
  } else {
    emit(cfg, "suite.txt", ldl::verify::report_text(results, suite));
  }
  return ldl::verify::suite_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disjunctive sequent calculi, their logical states and finite L-domains"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  CLI::Option* o_states = app.add_option("--max-states", cfg.max_states, "state enumeration budget")->capture_default_str()->check(CLI::PositiveNumber);
  CLI::Option* o_maps = app.add_option("--max-maps", cfg.max_maps, "monotone map / table enumeration budget")->capture_default_str()->check(CLI::PositiveNumber);
  CLI::Option* o_universe =
      app.add_option("--max-universe", cfg.max_universe, "formula universe budget")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--k", cfg.k, "formula size bound of the quantified universe")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "derivation search depth")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--node-budget", cfg.node_budget, "sequents explored by one search")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed of every sampled check")->capture_default_str();
  app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--out", cfg.out, "write reports and graphs into this directory instead of stdout");
  app.add_flag("--dot", cfg.dot, "also emit DOT graphs");
  app.footer("LDL_BUDGET=N or LDL_BUDGET=states=N,maps=N,universe=N overrides the default budgets.\n"
             "Exit codes: 0 pass, 1 negative result, 2 input error, 3 precondition or budget failure.");

  std::string file, file2, text;
  bool witness = false;
  auto* seq = app.add_subcommand("check-sequent", "decide a sequent over a basis (.dsb) or L-domain (.pos)");
  seq->add_option("file", file)->required()->check(CLI::ExistingFile);
  seq->add_option("sequent", text, "e.g. \"p, q |- F\"")->required();
  seq->add_flag("--witness", witness, "print a derivation (basis) or the denotational inclusion (domain)");

  auto* drv = app.add_subcommand("check-derivation", "check a derivation file against a basis");
  drv->add_option("basis", file)->required()->check(CLI::ExistingFile);
  drv->add_option("derivation", file2)->required()->check(CLI::ExistingFile);

  auto* st = app.add_subcommand("states", "list the logical states as JSON lines (DOT with --dot)");
  st->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* dom = app.add_subcommand("domain-check", "decide whether a poset is a finite algebraic L-domain");
  dom->add_option("poset", file)->required()->check(CLI::ExistingFile);

  auto* rt = app.add_subcommand("roundtrip", "certify that a domain is isomorphic to the states of its calculus");
  rt->add_option("poset", file)->required()->check(CLI::ExistingFile);

  auto* mor = app.add_subcommand("morphisms", "enumerate the consequence relations between two calculi");
  mor->add_option("source", file)->required()->check(CLI::ExistingFile);
  mor->add_option("target", file2)->required()->check(CLI::ExistingFile);

  ldl::verify::SuiteConfig suite;
  suite.fixture_dir = LDL_FIXTURE_DIR;
  bool serial = false;
  auto* su = app.add_subcommand("suite", "run the acceptance criteria");
  su->add_option("--fixtures", suite.fixture_dir, "fixture directory")->capture_default_str();
  su->add_option("--criteria", suite.criteria, "criteria to run (1-8), default all")->check(CLI::Range(1, 8));
  su->add_option("--max-poset-size", suite.max_poset_size, "largest poset enumerated or loaded")->capture_default_str()->check(CLI::Range(1, 6));
  su->add_option("--sequents", suite.sequent_samples, "sampled sequents")->capture_default_str();
  su->add_option("--formulas", suite.flatten_samples, "sampled formulas per calculus")->capture_default_str();
  su->add_flag("--serial", serial, "run criteria one after another");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }
  suite.parallel = !serial;

  try {
    if (const char* env = std::getenv("LDL_BUDGET")) {
      ldl::verify::SuiteConfig budget;
      ldl::verify::apply_budget(budget, env);
      if (o_states->count() == 0) cfg.max_states = budget.max_states;
      if (o_maps->count() == 0) cfg.max_maps = budget.max_maps;
      if (o_universe->count() == 0) cfg.max_universe = budget.max_universe;
    }
    if (*seq) return cmd_check_sequent(cfg, file, text, witness);
    if (*drv) return cmd_check_derivation(cfg, file, file2);
    if (*st) return cmd_states(cfg, file);
    if (*dom) return cmd_domain_check(cfg, file);
    if (*rt) return cmd_roundtrip(cfg, file);
    if (*mor) return cmd_morphisms(cfg, file, file2);
    if (*su) return cmd_suite(cfg, suite);
  } catch (const ldl::NotAnLDomain& e) {
    std::cerr << "NOT-AN-L-DOMAIN: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ldl::BudgetExceeded& e) {
    std::cerr << "BUDGET-EXCEEDED: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ldl::SizeLimit& e) {
    std::cerr << "BUDGET-EXCEEDED: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ldl::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kInput;
  } catch (const ldl::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ldl::UnknownAtom& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ldl::DisjointnessViolation& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ldl::Error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  return kInput;
}
