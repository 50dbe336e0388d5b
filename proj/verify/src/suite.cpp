#include "ldl/verify/suite.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ldl/duality.hpp"
#include "ldl/error.hpp"
#include "ldl/states.hpp"
#include "ldl/verify/oracles.hpp"

namespace ldl::verify {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Budget:
      return "BUDGET-EXCEEDED";
    case Status::UniverseTooSmall:
      return "UNIVERSE-TOO-SMALL";
    case Status::Error:
      return "ERROR";
  }
  return "?";
}

Fixtures load_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  Fixtures out;
  const auto collect = [&](const std::string& sub, const std::string& ext) {
    std::vector<fs::path> paths;
    const fs::path root = fs::path(dir) / sub;
    if (!fs::is_directory(root)) throw InputError("fixture directory " + root.string() + " does not exist");
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ext) paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
  };
  for (const auto& p : collect("bases", ".dsb")) out.bases.emplace_back(p.stem().string(), load_basis(p.string()));
  for (const auto& p : collect("domains", ".pos")) out.domains.emplace_back(p.stem().string(), load_poset(p.string()));
  return out;
}

void apply_budget(SuiteConfig& config, std::string_view spec) {
  const auto number = [&](std::string_view text) {
    std::size_t value = 0;
    if (text.empty()) throw InputError("empty budget value in '" + std::string(spec) + "'");
    for (char c : text) {
      if (c < '0' || c > '9') throw InputError("budget value '" + std::string(text) + "' is not a positive integer");
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (value == 0) throw InputError("budgets must be positive");
    return value;
  };
  if (spec.find('=') == std::string_view::npos) {
    const std::size_t v = number(spec);
    config.max_states = config.max_maps = config.max_universe = v;
    return;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', start), spec.size());
    const std::string_view item = spec.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("budget item '" + std::string(item) + "' lacks '='");
    const std::string_view key = item.substr(0, eq);
    const std::size_t v = number(item.substr(eq + 1));
    if (key == "states") {
      config.max_states = v;
    } else if (key == "maps") {
      config.max_maps = v;
    } else if (key == "universe") {
      config.max_universe = v;
    } else {
      throw InputError("unknown budget key '" + std::string(key) + "'");
    }
    start = end + 1;
  }
}

namespace {

class Tally {
 public:
  explicit Tally(CriterionResult& r) : r_(r) {}

  void check(bool ok, const std::string& instance, const std::string& detail) {
    ++r_.checks;
    if (ok) return;
    ++failures_;
    note(instance, detail);
  }
  void budget(const std::string& instance, const std::string& detail) {
    ++budget_;
    note(instance, detail);
  }
  void too_small(const std::string& instance, const std::string& detail) {
    if (too_small_.insert(instance).second) note(instance, detail);
  }
  void finish(std::string summary) {
    if (failures_ > 0) {
      r_.status = Status::Fail;
      summary = std::to_string(failures_) + " failures; " + summary;
    } else if (budget_ > 0) {
      r_.status = Status::Budget;
      summary = std::to_string(budget_) + " instances over budget; " + summary;
    } else if (!too_small_.empty()) {
      r_.status = Status::UniverseTooSmall;
      summary = std::to_string(too_small_.size()) + " states not certifiable; " + summary;
    } else {
      r_.status = Status::Pass;
    }
    r_.summary = std::move(summary);
  }

 private:
  void note(const std::string& instance, const std::string& detail) {
    if (r_.issues.size() < 10) r_.issues.push_back({instance, detail});
  }

  CriterionResult& r_;
  std::size_t failures_ = 0;
  std::size_t budget_ = 0;
  std::set<std::string> too_small_;
};

std::uint64_t mix(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

std::string str(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

// All bases over `atoms` with at most two distinct nonempty axioms.
std::vector<DisjunctiveBasis> small_bases(const std::vector<std::string>& atoms) {
  std::vector<std::vector<std::string>> subsets;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    subsets.emplace_back();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if ((bits >> i) & 1U) subsets.back().push_back(atoms[i]);
    }
  }
  std::vector<DisjunctiveBasis> out{DisjunctiveBasis::make(atoms, {})};
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    out.push_back(DisjunctiveBasis::make(atoms, {subsets[i]}));
    for (std::size_t j = i + 1; j < subsets.size(); ++j) out.push_back(DisjunctiveBasis::make(atoms, {subsets[i], subsets[j]}));
  }
  return out;
}

// 1. Closed-form entailment against bounded derivation search.
void criterion_oracle(const SuiteConfig& cfg, const Fixtures&, CriterionResult& r, Tally& t) {
  std::vector<DisjunctiveBasis> bases = small_bases({"p", "q"});
  for (auto& b : small_bases({"a", "b", "c"})) bases.push_back(std::move(b));
  const std::size_t per_basis = (cfg.sequent_samples + bases.size() - 1) / bases.size();
  std::size_t valid = 0;
  for (const DisjunctiveBasis& basis : bases) {
    auto calc = std::make_shared<FreeCalculus>(basis);
    const std::string name = print_basis(basis);
    std::string id = "basis {";
    for (const auto& a : basis.axioms) {
      id += "(";
      for (std::size_t i = 0; i < a.size(); ++i) id += (i ? " " : "") + a[i];
      id += ")";
    }
    id += "} over " + std::to_string(basis.atoms.size()) + " atoms";
    const FormulaUniverse u(calc, cfg.k, cfg.max_universe);
    std::mt19937_64 rng(mix(cfg.seed, name));
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    std::uniform_int_distribution<int> arity(0, 2);
    for (std::size_t n = 0; n < per_basis; ++n) {
      std::vector<Formula> gamma;
      for (int i = arity(rng); i > 0; --i) gamma.push_back(u.formula(pick(rng)));
      const Sequent s(std::move(gamma), u.formula(pick(rng)));
      const bool closed = calc->entails(s);
      valid += closed;
      try {
        const auto d = search_derivation(*calc, s, {cfg.depth, cfg.node_budget});
        t.check(d.has_value() == closed, id, "entails says " + std::string(closed ? "valid" : "invalid") + " for '" + print_sequent(s) + "'");
        if (d) {
          const Verdict v = check_derivation(*calc, *d);
          t.check(v.ok, id, "found derivation rejected: " + v.diagnostic);
        }
      } catch (const BudgetExceeded& e) {
        t.budget(id, print_sequent(s) + ": " + e.what());
      }
    }
  }
  t.finish(std::to_string(bases.size()) + " bases, " + std::to_string(per_basis * bases.size()) + " sequents (" + std::to_string(valid) +
           " valid), depth " + std::to_string(cfg.depth) + ", seed " + std::to_string(cfg.seed));
  (void)r;
}

// 2. State posets are L-domains; is_l_domain against the literal oracle.
void criterion_states_domain(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  for (const auto& [name, basis] : fx.bases) {
    if (basis.atoms.size() > 4) continue;
    auto space = state_poset(std::make_shared<FreeCalculus>(basis), cfg.max_states);
    const Verdict v = is_l_domain(space->poset);
    t.check(v.ok, name, "state poset is not an L-domain: " + v.diagnostic);
    t.check(oracle::literal_l_domain(space->poset), name, "literal oracle rejects the state poset");
  }
  static constexpr std::size_t kCounts[] = {1, 1, 2, 5, 16, 63, 318};
  std::size_t posets = 0;
  std::size_t domains = 0;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_poset_size, 6); ++n) {
    const auto all = oracle::posets_up_to_iso(n);
    t.check(all.size() == kCounts[n], std::to_string(n) + "-element posets",
            "enumerated " + std::to_string(all.size()) + " isomorphism classes, expected " + std::to_string(kCounts[n]));
    for (const FinitePoset& p : all) {
      const bool fast = is_l_domain(p).ok;
      t.check(fast == oracle::literal_l_domain(p), print_poset(p), "is_l_domain says " + std::string(fast ? "yes" : "no") + ", oracle disagrees");
      domains += fast;
      ++posets;
    }
  }
  t.finish(std::to_string(fx.bases.size()) + " fixture bases; " + std::to_string(posets) + " posets up to iso, " + std::to_string(domains) +
           " L-domains");
}

// 3. Representation isomorphism for every small L-domain and the fixtures.
void criterion_roundtrip(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  std::vector<std::pair<std::string, FinitePoset>> cases;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.max_poset_size, 6); ++n) {
    for (FinitePoset& p : oracle::posets_up_to_iso(n)) {
      if (is_l_domain(p).ok) cases.emplace_back(print_poset(p), std::move(p));
    }
  }
  for (const auto& [name, d] : fx.domains) {
    if (d.size() <= cfg.max_poset_size) cases.emplace_back(name, d);
  }
  for (const auto& [name, d] : cases) {
    const IsoCertificate cert = check_representation_iso(d, cfg.max_states);
    t.check(cert.verdict.ok && cert.bijection.size() == d.size(), name, cert.verdict.diagnostic);
    const SemanticCalculus sc(d, cfg.max_states);
    const FormulaUniverse u(sc.backend(), cfg.k, cfg.max_universe);
    const Verdict image = hat_image_check(sc, u);
    t.check(image.ok, name, image.diagnostic);
    const FormulaUniverse small(sc.backend(), std::min<std::size_t>(cfg.k, 4), cfg.max_universe);
    const Verdict routes = two_route_check(sc, small);
    t.check(routes.ok, name, routes.diagnostic);
  }
  t.finish(std::to_string(cases.size()) + " L-domains, each with an explicit bijection");
}

// 4. The M-poset calculus: a satisfiable conjunction that is not irreducible.
void criterion_irreducibility(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  const auto it = std::find_if(fx.domains.begin(), fx.domains.end(), [](const auto& d) { return d.first == "m_poset"; });
  if (it == fx.domains.end()) throw InputError("fixture domains/m_poset.pos is missing");
  const SemanticCalculus sc(it->second, cfg.max_states);
  const SemanticBackend& calc = *sc.backend();
  const Formula ab = parse_formula("up_a & up_b", calc);
  const AtomSet mu = AtomSet::single(calc.atom_index("up_a")) | AtomSet::single(calc.atom_index("up_b"));
  t.check(classify(ab, calc) == Classification::Satisfiable, "m_poset", "up_a & up_b is not satisfiable");
  t.check(!calc.is_irreducible(ConjunctionClass{mu}), "m_poset", "up_a & up_b is irreducible");
  const FlatForm w = calc.expressive_witness(ab);
  const Formula wf = flat_formula(w, calc);
  t.check(print_formula(wf) == "up_c | up_d", "m_poset", "witness is '" + print_formula(wf) + "'");
  t.check(calc.entails({ab}, wf) && calc.entails({wf}, ab), "m_poset", "witness is not mutually entailing");
  t.check(sc.hat(ab) == sc.hat(wf), "m_poset", "witness denotes a different set");
  t.finish("up_a & up_b == up_c | up_d, with up_a & up_b satisfiable and reducible");
}

struct DomainCase {
  std::string name;
  std::shared_ptr<const SemanticCalculus> sc;
  std::shared_ptr<const FormulaUniverse> universe;
};

std::vector<DomainCase> small_domains(const SuiteConfig& cfg, const Fixtures& fx) {
  std::vector<DomainCase> out;
  for (const auto& [name, d] : fx.domains) {
    if (d.size() > 4 || d.size() > cfg.max_poset_size) continue;
    auto sc = std::make_shared<const SemanticCalculus>(d, cfg.max_states);
    auto u = std::make_shared<const FormulaUniverse>(sc->backend(), cfg.k, cfg.max_universe);
    out.push_back({name, std::move(sc), std::move(u)});
  }
  return out;
}

std::size_t power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

// 5. Consequence relations <-> monotone state maps, and Ω_h <-> h.
void criterion_bijection(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  const auto cases = small_domains(cfg, fx);
  std::size_t relations = 0;
  std::size_t tables = 0;
  for (const DomainCase& a : cases) {
    for (const DomainCase& b : cases) {
      const std::string id = a.name + " -> " + b.name;
      const auto& src = a.sc->states();
      const auto& dst = b.sc->states();
      const RelationChecker checker(src, dst, *a.universe, *b.universe);
      const auto maps = monotone_maps(src->poset, dst->poset, cfg.max_maps);
      for (const MonotoneMap& f : maps) {
        const auto theta = theta_of_f(src, dst, f);
        const Verdict v = checker.check(theta);
        t.check(v.ok, id, "theta_of_f" + str(f) + ": " + v.diagnostic);
        t.check(f_of_theta(theta) == f, id, "f_of_theta(theta_of_f(f)) differs from f = " + str(f));
        const MonotoneMap h = consequence_to_scott(*a.sc, *b.sc, theta);
        t.check(scott_to_consequence(*a.sc, *b.sc, h) == theta, id, "Omega of h_Omega differs from Omega for " + str(f));
      }
      relations += maps.size();
      const std::size_t total = power(dst->size(), src->size(), cfg.max_maps);
      if (total > cfg.max_maps) {
        t.budget(id, std::to_string(dst->size()) + "^" + std::to_string(src->size()) + " tables exceed the map budget");
        continue;
      }
      std::size_t valid = 0;
      std::vector<std::size_t> table(src->size(), 0);
      for (std::size_t n = 0; n < total; ++n) {
        std::size_t rest = n;
        for (std::size_t& cell : table) {
          cell = rest % dst->size();
          rest /= dst->size();
        }
        const ConsequenceRelation theta{src, dst, table};
        if (!checker.check(theta).ok) continue;
        ++valid;
        t.check(theta_of_f(src, dst, f_of_theta(theta)) == theta, id, "theta_of_f(f_of_theta(theta)) differs for table " + str(table));
      }
      tables += total;
      t.check(valid == maps.size(), id, std::to_string(valid) + " valid tables but " + std::to_string(maps.size()) + " monotone maps");
      for (const MonotoneMap& h : monotone_maps(a.sc->domain(), b.sc->domain(), cfg.max_maps)) {
        const auto omega = scott_to_consequence(*a.sc, *b.sc, h);
        const Verdict v = checker.check(omega);
        t.check(v.ok, id, "Omega_h for h = " + str(h) + ": " + v.diagnostic);
        t.check(consequence_to_scott(*a.sc, *b.sc, omega) == h, id, "h of Omega_h differs from h = " + str(h));
      }
    }
  }
  t.finish(std::to_string(cases.size() * cases.size()) + " ordered pairs, " + std::to_string(relations) + " relations, " + std::to_string(tables) +
           " candidate tables");
}

// 6. Category and functor laws.
void criterion_category(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  const auto cases = small_domains(cfg, fx);
  const std::size_t n = cases.size();
  // hom[a][b]: every relation a -> b, indexed by its table.
  std::vector<std::vector<std::vector<ConsequenceRelation>>> hom(n, std::vector<std::vector<ConsequenceRelation>>(n));
  std::vector<std::vector<std::map<std::vector<std::size_t>, std::size_t>>> index(n, std::vector<std::map<std::vector<std::size_t>, std::size_t>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& src = cases[a].sc->states();
      const auto& dst = cases[b].sc->states();
      for (const MonotoneMap& f : monotone_maps(src->poset, dst->poset, cfg.max_maps)) {
        index[a][b].emplace(f, hom[a][b].size());
        hom[a][b].push_back(theta_of_f(src, dst, f));
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto id = identity_relation(cases[a].sc->states());
    MonotoneMap identity_map(cases[a].sc->states()->size());
    for (std::size_t i = 0; i < identity_map.size(); ++i) identity_map[i] = i;
    t.check(f_of_theta(id) == identity_map, cases[a].name, "G(id) is not the identity");
    for (std::size_t b = 0; b < n; ++b) {
      const auto idb = identity_relation(cases[b].sc->states());
      for (const auto& theta : hom[a][b]) {
        t.check(compose(idb, theta) == theta, cases[a].name + " -> " + cases[b].name, "id o theta != theta for " + str(theta.table));
        t.check(compose(theta, id) == theta, cases[a].name + " -> " + cases[b].name, "theta o id != theta for " + str(theta.table));
      }
    }
  }
  // comp[a][b][c][i * |hom b c| + j] = index of hom[b][c][j] o hom[a][b][i] in hom[a][c].
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> comp(
      n, std::vector<std::vector<std::vector<std::size_t>>>(n, std::vector<std::vector<std::size_t>>(n)));
  std::size_t composites = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        auto& cell = comp[a][b][c];
        for (const auto& t1 : hom[a][b]) {
          const MonotoneMap g1 = f_of_theta(t1);
          for (const auto& t2 : hom[b][c]) {
            const auto both = compose(t2, t1);
            const MonotoneMap g2 = f_of_theta(t2);
            const MonotoneMap g = f_of_theta(both);
            bool functorial = g.size() == g1.size();
            for (std::size_t s = 0; s < g1.size() && functorial; ++s) functorial = g[s] == g2[g1[s]];
            const std::string id = cases[a].name + " -> " + cases[b].name + " -> " + cases[c].name;
            t.check(functorial, id, "G(theta2 o theta1) != G(theta2) o G(theta1) for " + str(t1.table) + ", " + str(t2.table));
            const auto found = index[a][c].find(both.table);
            t.check(found != index[a][c].end(), id, "composite is not a relation of the catalogue");
            cell.push_back(found == index[a][c].end() ? 0 : found->second);
            ++composites;
          }
        }
      }
    }
  }
  std::size_t triples = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const std::size_t nab = hom[a][b].size();
          const std::size_t nbc = hom[b][c].size();
          const std::size_t ncd = hom[c][d].size();
          const auto& abc = comp[a][b][c];
          const auto& acd = comp[a][c][d];
          const auto& bcd = comp[b][c][d];
          const auto& abd = comp[a][b][d];
          bool ok = true;
          for (std::size_t i = 0; i < nab && ok; ++i) {
            for (std::size_t j = 0; j < nbc && ok; ++j) {
              for (std::size_t k = 0; k < ncd && ok; ++k) {
                // (θ3 ∘ θ2) ∘ θ1 against θ3 ∘ (θ2 ∘ θ1).
                ok = abd[i * hom[b][d].size() + bcd[j * ncd + k]] == acd[abc[i * nbc + j] * ncd + k];
                ++triples;
              }
            }
          }
          t.check(ok, cases[a].name + " -> " + cases[b].name + " -> " + cases[c].name + " -> " + cases[d].name, "composition is not associative");
        }
      }
    }
  }
  for (const auto& [name, d] : fx.domains) {
    if (d.size() > cfg.max_poset_size) continue;
    const IsoCertificate cert = check_representation_iso(d, cfg.max_states);
    t.check(cert.verdict.ok, name, "G(calculus_of_domain(D)) is not isomorphic to D: " + cert.verdict.diagnostic);
  }
  t.finish(std::to_string(n) + " objects, " + std::to_string(composites) + " composites, " + std::to_string(triples) + " composable triples");
}

// 7. Flattening against independent semantics.
void criterion_flatten(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  std::size_t calculi = 0;
  const auto run = [&](const std::string& id, const Calculus& calc, const std::function<bool(const Formula&, const Formula&)>& same,
                       const std::function<Classification(const Formula&)>& truth) {
    std::mt19937_64 rng(mix(cfg.seed, id));
    for (std::size_t n = 0; n < cfg.flatten_samples; ++n) {
      const Formula f = oracle::random_formula(rng, calc, 12);
      const FlatForm flat = flatten(f, calc);
      const Formula g = flat_formula(flat, calc);
      const std::string what = "'" + print_formula(f) + "' -> '" + print_flat(flat, calc) + "'";
      t.check(calc.entails({f}, g) && calc.entails({g}, f), id, what + " is not mutually entailing");
      t.check(same(f, g), id, what + " changes the meaning");
      const Classification c = classify(f, calc);
      const Classification expected = flat.kind == FlatForm::Kind::TautologyEquivalent      ? Classification::Tautology
                                      : flat.kind == FlatForm::Kind::ContradictionEquivalent ? Classification::Contradiction
                                                                                             : Classification::Satisfiable;
      t.check(c == expected, id, what + " but classify says " + std::string(to_string(c)));
      t.check(truth(f) == c, id, what + " has semantic class " + std::string(to_string(truth(f))));
      for (std::size_t i = 0; i < flat.disjuncts.size(); ++i) {
        t.check(!calc.is_contradictory(flat.disjuncts[i].atoms), id, what + " has a contradictory disjunct");
        for (std::size_t j = i + 1; j < flat.disjuncts.size(); ++j) {
          t.check(calc.is_contradictory(flat.disjuncts[i].atoms | flat.disjuncts[j].atoms), id, what + " has overlapping disjuncts");
        }
      }
    }
    ++calculi;
  };
  for (const auto& [name, basis] : fx.bases) {
    const FreeCalculus calc(basis);
    const auto ws = oracle::worlds(calc);
    run(name, calc,
        [&](const Formula& a, const Formula& b) {
          return std::all_of(ws.begin(), ws.end(), [&](AtomSet w) { return oracle::holds(a, w, calc) == oracle::holds(b, w, calc); });
        },
        [&](const Formula& f) {
          std::size_t count = 0;
          for (AtomSet w : ws) count += oracle::holds(f, w, calc);
          return count == ws.size() ? Classification::Tautology : count == 0 ? Classification::Contradiction : Classification::Satisfiable;
        });
  }
  for (const auto& [name, d] : fx.domains) {
    if (d.size() > cfg.max_poset_size) continue;
    const SemanticCalculus sc(d, cfg.max_states);
    run(name, *sc.backend(), [&](const Formula& a, const Formula& b) { return sc.hat(a) == sc.hat(b); },
        [&](const Formula& f) {
          const ElementSet h = sc.hat(f);
          return h == d.all() ? Classification::Tautology : h == 0 ? Classification::Contradiction : Classification::Satisfiable;
        });
  }
  t.finish(std::to_string(calculi) + " calculi, " + std::to_string(cfg.flatten_samples) + " formulas each, seed " + std::to_string(cfg.seed));
}

// 8. State laws over the bounded universe.
void criterion_state_laws(const SuiteConfig& cfg, const Fixtures& fx, CriterionResult&, Tally& t) {
  std::size_t states = 0;
  const auto run = [&](const std::string& id, std::shared_ptr<const Calculus> calc) {
    const auto space = state_poset(calc, cfg.max_states);
    const FormulaUniverse u(calc, cfg.k, cfg.max_universe);
    const Calculus& c = *calc;
    const std::size_t n = u.size();
    std::vector<std::size_t> reps;
    for (std::size_t cls = 0; cls < u.class_count(); ++cls) reps.push_back(u.representative(cls));

    t.check(is_logical_state(LogicalState::tau(calc), u).ok, id, "Tau is not a logical state");
    const auto cont = [&](const Formula& f) { return classify(f, c) == Classification::Contradiction; };
    t.check(!is_logical_state(cont, u).ok, id, "Cont passes as a logical state");

    for (std::size_t s = 0; s < space->size(); ++s) {
      const LogicalState& state = space->states[s];
      const std::string sid = id + " " + state.label();
      ++states;
      try {
        const Verdict v = is_logical_state(state, u);
        t.check(v.ok, sid, v.diagnostic);
      } catch (const UniverseTooSmall& e) {
        t.too_small(sid, e.what());
      }
      std::vector<char> member(n);
      std::vector<Formula> members;
      for (std::size_t i = 0; i < n; ++i) {
        member[i] = state.contains_products(u.products(i));
        if (member[i]) members.push_back(u.formula(i));
      }
      // F is never a member.
      t.check(!state.contains(Formula::bottom()), sid, "F is a member");
      // Closure under ∧ and incompatibility.
      for (std::size_t i = 0; i < n; ++i) {
        if (!member[i]) continue;
        for (std::size_t r : reps) {
          const Formula both = Formula::conj(u.formula(i), u.formula(r));
          if (member[r]) t.check(state.contains(both), sid, "'" + print_formula(both) + "' is not a member");
          if (c.entails({both}, Formula::bottom())) {
            t.check(!member[r], sid, "'" + print_formula(u.formula(i)) + "' and '" + print_formula(u.formula(r)) + "' are incompatible members");
          }
        }
      }
      // S = S[⊢], and closure is idempotent.
      const auto closure = entail_closure(c, members);
      std::vector<Formula> closed;
      for (std::size_t i = 0; i < n; ++i) {
        const bool in = closure(u.formula(i));
        t.check(in == static_cast<bool>(member[i]), sid, "S[|-] and S differ at '" + print_formula(u.formula(i)) + "'");
        if (in) closed.push_back(u.formula(i));
      }
      const auto twice = entail_closure(c, closed);
      for (std::size_t i = 0; i < n; ++i) {
        t.check(twice(u.formula(i)) == closure(u.formula(i)), sid, "closure is not idempotent at '" + print_formula(u.formula(i)) + "'");
      }
      // [X]_S is the least state between X and S.
      std::vector<std::vector<Formula>> xs{{}};
      std::vector<std::size_t> member_reps;
      for (std::size_t r : reps) {
        if (member[r]) member_reps.push_back(r);
      }
      for (std::size_t a = 0; a < member_reps.size(); ++a) {
        xs.push_back({u.formula(member_reps[a])});
        for (std::size_t b = a + 1; b < member_reps.size(); ++b) xs.push_back({u.formula(member_reps[a]), u.formula(member_reps[b])});
      }
      for (const auto& x : xs) {
        const std::size_t w = bracket_closure(*space, x, s);
        const auto holds_x = [&](std::size_t st) {
          return std::all_of(x.begin(), x.end(), [&](const Formula& f) { return space->states[st].contains(f); });
        };
        t.check(holds_x(w) && space->poset.leq(w, s), sid, "bracket closure is not between X and S");
        for (std::size_t other = 0; other < space->size(); ++other) {
          if (holds_x(other) && space->poset.leq(other, s)) t.check(space->poset.leq(w, other), sid, "bracket closure is not least");
        }
      }
      // The directed family of states below S.
      std::vector<std::size_t> below;
      for (std::size_t other = 0; other < space->size(); ++other) {
        if (space->poset.leq(other, s)) below.push_back(other);
      }
      try {
        const Verdict directed = directed_union_check(*space, below, u);
        t.check(directed.ok, sid, directed.diagnostic);
        const Verdict decomposed = decomposition_check(*space, s, u);
        t.check(decomposed.ok, sid, decomposed.diagnostic);
      } catch (const UniverseTooSmall& e) {
        t.too_small(sid, e.what());
      }
    }
  };
  for (const auto& [name, basis] : fx.bases) run(name, std::make_shared<FreeCalculus>(basis));
  for (const auto& [name, d] : fx.domains) {
    if (d.size() <= cfg.max_poset_size) run(name, std::make_shared<SemanticBackend>(d));
  }
  t.finish(std::to_string(states) + " states over formulas of size <= " + std::to_string(cfg.k));
}

struct Entry {
  const char* name;
  const char* claim;
  void (*run)(const SuiteConfig&, const Fixtures&, CriterionResult&, Tally&);
};

const Entry kCriteria[] = {
    {"oracle agreement", "closed-form entailment agrees with bounded derivation search", criterion_oracle},
    {"state posets are L-domains", "the states of every calculus form an algebraic L-domain", criterion_states_domain},
    {"representation round trip", "every finite L-domain is isomorphic to the states of its calculus", criterion_roundtrip},
    {"irreducibility in the M-poset calculus", "a satisfiable conjunction need not be irreducible", criterion_irreducibility},
    {"relations and state maps correspond", "consequence relations are exactly the monotone state maps, and Scott maps", criterion_bijection},
    {"category and functor laws", "composition is a category and the state functor is an equivalence", criterion_category},
    {"flattening", "every formula has an equivalent flat disjunction of satisfiable conjunctions", criterion_flatten},
    {"state laws", "states are closed, consistent, directed-complete and decomposable", criterion_state_laws},
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteConfig& config, const Fixtures& fixtures) {
  if (id < 1 || id > 8) throw PreconditionViolated("no criterion " + std::to_string(id));
  const Entry& e = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  r.claim = e.claim;
  Tally tally(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    e.run(config, fixtures, r, tally);
  } catch (const BudgetExceeded& ex) {
    r.status = Status::Budget;
    r.summary = ex.what();
  } catch (const SizeLimit& ex) {
    r.status = Status::Budget;
    r.summary = ex.what();
  } catch (const UniverseTooSmall& ex) {
    r.status = Status::UniverseTooSmall;
    r.summary = ex.what();
  } catch (const std::exception& ex) {
    r.status = Status::Error;
    r.summary = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteConfig& config) {
  const Fixtures fixtures = load_fixtures(config.fixture_dir);
  std::vector<int> ids = config.criteria;
  if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8};
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<CriterionResult> out;
  if (!config.parallel) {
    for (int id : ids) out.push_back(run_criterion(id, config, fixtures));
    return out;
  }
  std::vector<std::future<CriterionResult>> jobs;
  for (int id : ids) jobs.push_back(std::async(std::launch::async, [&, id] { return run_criterion(id, config, fixtures); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

int suite_exit_code(const std::vector<CriterionResult>& results) {
  bool shortfall = false;
  for (const CriterionResult& r : results) {
    if (r.status == Status::Fail || r.status == Status::Error) return 1;
    shortfall = shortfall || r.status != Status::Pass;
  }
  return shortfall ? 3 : 0;
}

std::string report_text(const std::vector<CriterionResult>& results, const SuiteConfig& config) {
  std::ostringstream out;
  out << "seed " << config.seed << ", k " << config.k << ", depth " << config.depth << "\n";
  for (const CriterionResult& r : results) {
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.2fs", r.seconds);
    out << "criterion " << r.id << " [" << status_name(r.status) << "] " << r.name << ": " << r.summary << " (" << r.checks << " checks, "
        << seconds << ")\n";
    for (const Issue& i : r.issues) out << "    " << i.instance << ": " << i.detail << "\n";
  }
  return out.str();
}

std::string report_json(const std::vector<CriterionResult>& results, const SuiteConfig& config) {
  nlohmann::json doc;
  doc["seed"] = config.seed;
  doc["config"] = {{"k", config.k},
                   {"depth", config.depth},
                   {"max_states", config.max_states},
                   {"max_maps", config.max_maps},
                   {"max_universe", config.max_universe},
                   {"sequent_samples", config.sequent_samples},
                   {"flatten_samples", config.flatten_samples},
                   {"max_poset_size", config.max_poset_size}};
  doc["criteria"] = nlohmann::json::array();
  for (const CriterionResult& r : results) {
    nlohmann::json c = {{"id", r.id},
                        {"name", r.name},
                        {"claim", r.claim},
                        {"status", status_name(r.status)},
                        {"pass", r.status == Status::Pass},
                        {"checks", r.checks},
                        {"seconds", r.seconds},
                        {"summary", r.summary}};
    c["issues"] = nlohmann::json::array();
    for (const Issue& i : r.issues) c["issues"].push_back({{"instance", i.instance}, {"witness", i.detail}});
    doc["criteria"].push_back(std::move(c));
  }
  doc["exit_code"] = suite_exit_code(results);
  return doc.dump(2) + "\n";
}

}  // namespace ldl::verify
