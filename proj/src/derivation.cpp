#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>

#include "ldl/calculus.hpp"
#include "ldl/error.hpp"
#include "parser.hpp"

namespace ldl {

namespace {

constexpr std::array<std::string_view, 10> kRuleNames = {"Ax", "Id", "Lwk", "Cut", "LF", "RT", "LConj", "RConj", "LDisj", "RDisj"};

using Formulas = std::vector<Formula>;

Formulas as_vector(std::span<const Formula> s) { return Formulas(s.begin(), s.end()); }

Formulas set_union(std::span<const Formula> a, std::span<const Formula> b) {
  Formulas out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Formulas without(std::span<const Formula> a, const Formula& f) {
  Formulas out;
  for (const Formula& g : a) {
    if (!(g == f)) out.push_back(g);
  }
  return out;
}

Formulas with(std::span<const Formula> a, std::initializer_list<Formula> fs) {
  Formulas out = as_vector(a);
  out.insert(out.end(), fs.begin(), fs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_set(std::span<const Formula> a, const Formulas& b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); }

bool pairwise_disjoint(const Calculus& calc, std::span<const Formula> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!calc.entails({parts[i], parts[j]}, Formula::bottom())) return false;
    }
  }
  return true;
}

/// Candidate principal formulas: the given side formula, or every antecedent
/// formula of the required kind.
Formulas principal_candidates(const Derivation& d, Formula::Kind kind) {
  Formulas out;
  for (const Formula& g : d.conclusion.antecedent()) {
    if (g.kind() != kind) continue;
    if (d.side_formula && !(*d.side_formula == g)) continue;
    out.push_back(g);
  }
  return out;
}

/// Empty string when the node is a correct instance of its rule.
std::string check_node(const Calculus& calc, const Derivation& d) {
  const auto& gamma = d.conclusion.antecedent();
  const Formula& phi = d.conclusion.succedent();
  const auto& ps = d.premises;
  auto arity = [&](std::size_t n) -> std::string {
    if (ps.size() == n) return {};
    return std::string(rule_name(d.rule)) + " takes " + std::to_string(n) + " premise(s), found " + std::to_string(ps.size());
  };

  switch (d.rule) {
    case Rule::Ax: {
      if (auto e = arity(0); !e.empty()) return e;
      if (!phi.is_bottom()) return "Ax requires succedent F";
      AtomSet set;
      for (const Formula& g : gamma) {
        if (!g.is_atom()) return "Ax requires an antecedent of atoms";
        auto i = calc.find_atom(g.name());
        if (!i) return "Ax uses unknown atom '" + g.name() + "'";
        set = set | AtomSet::single(*i);
      }
      const auto& axioms = calc.axioms();
      if (std::find(axioms.begin(), axioms.end(), set) == axioms.end()) return "Ax instance is not an axiom of the basis";
      return {};
    }
    case Rule::Id:
      if (auto e = arity(0); !e.empty()) return e;
      if (gamma.size() != 1 || !(gamma[0] == phi)) return "Id requires identical formula";
      return {};
    case Rule::LF:
      if (auto e = arity(0); !e.empty()) return e;
      if (gamma.size() != 1 || !gamma[0].is_bottom()) return "LF requires the antecedent F";
      return {};
    case Rule::RT:
      if (auto e = arity(0); !e.empty()) return e;
      if (!gamma.empty() || !phi.is_top()) return "RT requires the sequent |- T";
      return {};
    case Rule::Lwk: {
      if (auto e = arity(1); !e.empty()) return e;
      const Sequent& p = ps[0].conclusion;
      if (!(p.succedent() == phi)) return "Lwk must keep the succedent";
      if (d.side_formula) {
        if (!d.conclusion.contains(*d.side_formula)) return "Lwk side formula is not in the conclusion";
        if (!same_set(gamma, with(p.antecedent(), {*d.side_formula}))) return "Lwk conclusion is not premise plus side formula";
        return {};
      }
      if (same_set(gamma, as_vector(p.antecedent()))) return {};
      for (const Formula& chi : gamma) {
        if (same_set(gamma, with(p.antecedent(), {chi}))) return {};
      }
      return "Lwk conclusion is not the premise plus one formula";
    }
    case Rule::Cut: {
      if (auto e = arity(2); !e.empty()) return e;
      const Sequent& p1 = ps[0].conclusion;
      const Sequent& p2 = ps[1].conclusion;
      const Formula& cut = p1.succedent();
      if (d.side_formula && !(*d.side_formula == cut)) return "Cut side formula differs from the first premise's succedent";
      if (!p2.contains(cut)) return "Cut formula missing from the second premise's antecedent";
      if (!(p2.succedent() == phi)) return "Cut succedent differs from the second premise's succedent";
      if (same_set(gamma, set_union(p1.antecedent(), without(p2.antecedent(), cut)))) return {};
      if (same_set(gamma, set_union(p1.antecedent(), p2.antecedent()))) return {};
      return "Cut conclusion antecedent is not Gamma, Delta";
    }
    case Rule::LConj: {
      if (auto e = arity(1); !e.empty()) return e;
      const Sequent& p = ps[0].conclusion;
      if (!(p.succedent() == phi)) return "LConj must keep the succedent";
      for (const Formula& chi : principal_candidates(d, Formula::Kind::Conj)) {
        if (same_set(p.antecedent(), with(without(gamma, chi), {chi.lhs(), chi.rhs()}))) return {};
        if (same_set(p.antecedent(), with(gamma, {chi.lhs(), chi.rhs()}))) return {};
      }
      return "LConj premise does not split a conjunction of the conclusion";
    }
    case Rule::RConj: {
      if (auto e = arity(2); !e.empty()) return e;
      if (!phi.is_conj()) return "RConj requires a conjunction succedent";
      if (!(ps[0].conclusion.succedent() == phi.lhs()) || !(ps[1].conclusion.succedent() == phi.rhs())) {
        return "RConj premises must prove the two conjuncts in order";
      }
      if (!same_set(gamma, set_union(ps[0].conclusion.antecedent(), ps[1].conclusion.antecedent()))) {
        return "RConj conclusion antecedent is not Gamma, Delta";
      }
      return {};
    }
    case Rule::LDisj: {
      for (const Formula& chi : principal_candidates(d, Formula::Kind::Disj)) {
        const auto parts = chi.children();
        if (parts.size() != ps.size()) continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < parts.size(); ++i) {
          const Sequent& p = ps[i].conclusion;
          ok = p.succedent() == phi && (same_set(p.antecedent(), with(without(gamma, chi), {parts[i]})) ||
                                        same_set(p.antecedent(), with(gamma, {parts[i]})));
        }
        if (!ok) continue;
        if (!pairwise_disjoint(calc, parts)) return "LDisj disjuncts are not pairwise disjoint";
        return {};
      }
      return "LDisj premises do not match one disjunction of the conclusion";
    }
    case Rule::RDisj: {
      if (auto e = arity(1); !e.empty()) return e;
      if (!phi.is_disj()) return "RDisj requires a disjunction succedent";
      const Sequent& p = ps[0].conclusion;
      if (!same_set(p.antecedent(), as_vector(gamma))) return "RDisj must keep the antecedent";
      const auto parts = phi.children();
      bool found = false;
      if (d.side_index) {
        if (*d.side_index >= parts.size()) return "RDisj index out of range";
        found = parts[*d.side_index] == p.succedent();
      } else {
        found = std::find(parts.begin(), parts.end(), p.succedent()) != parts.end();
      }
      if (!found) return "RDisj premise does not prove a disjunct";
      if (!pairwise_disjoint(calc, parts)) return "RDisj disjuncts are not pairwise disjoint";
      return {};
    }
  }
  return "unknown rule";
}

Verdict check_rec(const Calculus& calc, const Derivation& d, std::size_t& counter) {
  const std::size_t id = counter++;
  std::string err;
  try {
    err = check_node(calc, d);
  } catch (const Error& e) {
    err = e.what();
  }
  if (!err.empty()) {
    return Verdict::fail("node " + std::to_string(id) + " (" + std::string(rule_name(d.rule)) + " " +
                         print_sequent(d.conclusion) + "): " + err);
  }
  for (const Derivation& p : d.premises) {
    if (auto v = check_rec(calc, p, counter); !v) return v;
  }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Search

struct Key {
  std::vector<int> gamma;  // sorted formula ids
  int phi;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = static_cast<std::size_t>(k.phi) * 0x9e3779b97f4a7c15ULL;
    for (int g : k.gamma) h = (h ^ static_cast<std::size_t>(g)) * 0x100000001b3ULL;
    return h;
  }
};

struct Move {
  Rule rule;
  std::vector<Key> premises;
  std::optional<int> side;
  std::optional<std::size_t> index;
};

struct Entry {
  std::size_t height = 0;  // 0: not derivable with the search's moves
  Move move;
};

class Searcher {
 public:
  Searcher(const FreeCalculus& calc, std::size_t budget) : calc_(calc), budget_(budget) {}

  int intern(const Formula& f) {
    auto [it, inserted] = ids_.emplace(f, static_cast<int>(formulas_.size()));
    if (inserted) formulas_.push_back(f);
    return it->second;
  }

  Key key(const Sequent& s) {
    Key k{{}, intern(s.succedent())};
    for (const Formula& g : s.antecedent()) k.gamma.push_back(intern(g));
    std::sort(k.gamma.begin(), k.gamma.end());
    return k;
  }

  std::size_t solve(const Key& k) {
    if (auto it = memo_.find(k); it != memo_.end()) return it->second.height;
    if (memo_.size() >= budget_) throw BudgetExceeded("derivation search explored " + std::to_string(budget_) + " sequents");
    Entry e = explore(k);
    memo_.emplace(k, e);
    return e.height;
  }

  Derivation build(const Key& k) {
    const Entry& e = memo_.at(k);
    Derivation d{e.move.rule, sequent(k), {}, std::nullopt, e.move.index};
    if (e.move.side) d.side_formula = formulas_[*e.move.side];
    for (const Key& p : e.move.premises) d.premises.push_back(build(p));
    return d;
  }

 private:
  Sequent sequent(const Key& k) const {
    Formulas gamma;
    for (int g : k.gamma) gamma.push_back(formulas_[g]);
    return Sequent(std::move(gamma), formulas_[k.phi]);
  }

  static std::vector<int> remove(const std::vector<int>& g, int x) {
    std::vector<int> out;
    for (int y : g) {
      if (y != x) out.push_back(y);
    }
    return out;
  }

  static std::vector<int> insert(std::vector<int> g, std::initializer_list<int> xs) {
    g.insert(g.end(), xs.begin(), xs.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }

  std::optional<Rule> leaf(const Key& k) const {
    const Formula& phi = formulas_[k.phi];
    if (k.gamma.size() == 1 && k.gamma[0] == k.phi) return Rule::Id;
    if (k.gamma.size() == 1 && formulas_[k.gamma[0]].is_bottom()) return Rule::LF;
    if (k.gamma.empty() && phi.is_top()) return Rule::RT;
    if (phi.is_bottom() && !k.gamma.empty()) {
      AtomSet set;
      for (int g : k.gamma) {
        const Formula& f = formulas_[g];
        if (!f.is_atom()) return std::nullopt;
        set = set | AtomSet::single(calc_.atom_index(f.name()));
      }
      const auto& axioms = calc_.axioms();
      if (std::find(axioms.begin(), axioms.end(), set) != axioms.end()) return Rule::Ax;
    }
    return std::nullopt;
  }

  Entry explore(const Key& k) {
    if (auto r = leaf(k)) return Entry{1, Move{*r, {}, std::nullopt, std::nullopt}};
    Entry best;
    auto consider = [&](Move m) {
      std::size_t h = 0;
      for (const Key& p : m.premises) {
        const std::size_t ph = solve(p);
        if (ph == 0) return;
        h = std::max(h, ph);
      }
      if (best.height == 0 || h + 1 < best.height) best = Entry{h + 1, std::move(m)};
    };

    const Formula phi = formulas_[k.phi];
    for (int g : k.gamma) {
      consider(Move{Rule::Lwk, {Key{remove(k.gamma, g), k.phi}}, g, std::nullopt});
    }
    for (int g : k.gamma) {
      const Formula f = formulas_[g];
      if (f.is_conj()) {
        const int a = intern(f.lhs());
        const int b = intern(f.rhs());
        consider(Move{Rule::LConj, {Key{insert(remove(k.gamma, g), {a, b}), k.phi}}, g, std::nullopt});
      } else if (f.is_disj()) {
        Move m{Rule::LDisj, {}, g, std::nullopt};
        for (const Formula& c : f.children()) m.premises.push_back(Key{insert(remove(k.gamma, g), {intern(c)}), k.phi});
        consider(std::move(m));
      }
    }
    if (phi.is_conj()) {
      const int a = intern(phi.lhs());
      const int b = intern(phi.rhs());
      const std::size_t n = k.gamma.size();
      if (n <= 4) {
        // Every cover Γ = Γ1 ∪ Γ2: each formula goes left, right or both.
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
          std::vector<int> left, right;
          std::size_t c = code;
          for (std::size_t i = 0; i < n; ++i, c /= 3) {
            if (c % 3 != 1) left.push_back(k.gamma[i]);
            if (c % 3 != 0) right.push_back(k.gamma[i]);
          }
          consider(Move{Rule::RConj, {Key{left, a}, Key{right, b}}, std::nullopt, std::nullopt});
        }
      } else {
        consider(Move{Rule::RConj, {Key{k.gamma, a}, Key{k.gamma, b}}, std::nullopt, std::nullopt});
      }
    } else if (phi.is_disj()) {
      const auto parts = phi.children();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        consider(Move{Rule::RDisj, {Key{k.gamma, intern(parts[i])}}, std::nullopt, i});
      }
    }
    if (!phi.is_bottom()) {
      const int f = intern(Formula::bottom());
      consider(Move{Rule::Cut, {Key{k.gamma, f}, Key{{f}, k.phi}}, f, std::nullopt});
    }
    return best;
  }

  const FreeCalculus& calc_;
  std::size_t budget_;
  std::vector<Formula> formulas_;
  std::unordered_map<Formula, int> ids_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

// ---------------------------------------------------------------------------
// Text

void print_rec(std::string& out, const Derivation& d, std::size_t indent) {
  out.append(indent, ' ');
  out += '(';
  out += rule_name(d.rule);
  if (d.side_formula) out += " [" + print_formula(*d.side_formula) + "]";
  if (d.side_index) out += " #" + std::to_string(*d.side_index);
  out += ' ';
  out += print_sequent(d.conclusion);
  for (const Derivation& p : d.premises) {
    out += '\n';
    print_rec(out, p, indent + 2);
  }
  out += ')';
}

Derivation parse_node(detail::Reader& r) {
  r.expect('(');
  const std::string name = r.word();
  const auto rule = parse_rule_name(name);
  if (!rule) r.fail("unknown rule '" + name + "'");
  Derivation d{*rule, Sequent({}, Formula::top()), {}, std::nullopt, std::nullopt};
  if (r.accept('[')) {
    d.side_formula = r.formula();
    r.expect(']');
  }
  if (r.accept('#')) d.side_index = r.number();
  d.conclusion = r.sequent();
  while (r.peek() == '(') d.premises.push_back(parse_node(r));
  r.expect(')');
  return d;
}

/// Drops `#` comments (a `#` followed by whitespace or the end of a line);
/// `#<digits>` is the RDisj index.
std::string strip_comments(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      while (i < text.size() && text[i] != '\n') out += ' ', ++i;
      if (i < text.size()) out += '\n';
      continue;
    }
    out += text[i];
  }
  return out;
}

}  // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> parse_rule_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::size_t height(const Derivation& d) {
  std::size_t h = 0;
  for (const Derivation& p : d.premises) h = std::max(h, height(p));
  return h + 1;
}

std::size_t node_count(const Derivation& d) {
  std::size_t n = 1;
  for (const Derivation& p : d.premises) n += node_count(p);
  return n;
}

Verdict check_derivation(const Calculus& calc, const Derivation& d) {
  std::size_t counter = 0;
  return check_rec(calc, d, counter);
}

std::optional<Derivation> search_derivation(const FreeCalculus& calc, const Sequent& s, const SearchOptions& options) {
  if (options.depth == 0) throw PreconditionViolated("search depth must be at least 1");
  Searcher searcher(calc, options.node_budget);
  const Key k = searcher.key(s);
  const std::size_t h = searcher.solve(k);
  if (h == 0 || h > options.depth) return std::nullopt;
  return searcher.build(k);
}

std::string print_derivation(const Derivation& d) {
  std::string out;
  print_rec(out, d, 0);
  out += '\n';
  return out;
}

Derivation parse_derivation(std::string_view text, const Calculus& calc) {
  const std::string clean = strip_comments(text);
  detail::Reader r(clean, calc);
  Derivation d = parse_node(r);
  if (!r.at_end()) r.fail("trailing input after derivation");
  return d;
}

}  // namespace ldl
