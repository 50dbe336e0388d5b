#include "ldl/states.hpp"

#include <algorithm>
#include <map>

#include "ldl/error.hpp"

namespace ldl {

// ---------------------------------------------------------------------------
// LogicalState

LogicalState::LogicalState(std::shared_ptr<const Calculus> calc, std::optional<ConjunctionClass> generator)
    : calc_(std::move(calc)), generator_(std::move(generator)) {
  if (generator_ && !calc_->is_irreducible(*generator_)) {
    throw PreconditionViolated("state generator is not an irreducible conjunction");
  }
}

Formula LogicalState::generator_formula() const {
  if (!generator_) return Formula::top();
  return conjunction_formula(generator_->atoms, *calc_);
}

bool LogicalState::contains_products(std::span<const AtomSet> products) const {
  const AtomSet g[] = {generator_ ? generator_->atoms : AtomSet{}};
  return calc_->covers(g, products);
}

bool LogicalState::contains(const Formula& f) const { return contains_products(calc_->products(f)); }

bool LogicalState::subset_of(const LogicalState& other) const {
  if (!generator_) return true;
  const AtomSet g[] = {generator_->atoms};
  return other.contains_products(g);
}

std::string LogicalState::label() const {
  if (!generator_) return "<T>";
  return "<" + print_flat(FlatForm{FlatForm::Kind::Flat, {*generator_}}, *calc_) + ">";
}

std::function<bool(const Formula&)> entail_closure(const Calculus& calc, std::span<const Formula> xs) {
  auto prods = calc.antecedent_products(xs);
  return [&calc, prods = std::move(prods)](const Formula& f) { return prods.empty() || calc.covers(prods, calc.products(f)); };
}

// ---------------------------------------------------------------------------
// State poset

std::optional<std::size_t> StateSpace::index_of(const LogicalState& s) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].same_as(s)) return i;
  }
  return std::nullopt;
}

namespace {

bool smaller_generator(AtomSet a, AtomSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

}  // namespace

std::shared_ptr<const StateSpace> state_poset(std::shared_ptr<const Calculus> calc, std::size_t max_states) {
  std::map<std::vector<std::uint64_t>, AtomSet> best;
  for (const ConjunctionClass& c : calc->irreducible_conjunctions()) {
    auto key = calc->equivalence_key(conjunction_formula(c.atoms, *calc));
    auto [it, inserted] = best.emplace(std::move(key), c.atoms);
    if (!inserted && smaller_generator(c.atoms, it->second)) it->second = c.atoms;
  }
  if (best.size() + 1 > max_states) {
    throw SizeLimit("state poset has " + std::to_string(best.size() + 1) + " states (limit " + std::to_string(max_states) + ")");
  }
  std::vector<AtomSet> gens;
  for (const auto& [key, g] : best) gens.push_back(g);
  std::sort(gens.begin(), gens.end(), smaller_generator);

  auto space = std::make_shared<StateSpace>(StateSpace{calc, {}, FinitePoset({"<T>"}, {{true}})});
  space->states.push_back(LogicalState::tau(calc));
  for (AtomSet g : gens) space->states.emplace_back(calc, ConjunctionClass{g});

  const std::size_t n = space->states.size();
  if (n > FinitePoset::kMaxElements) throw SizeLimit("state poset too large for an explicit order (" + std::to_string(n) + ")");
  std::vector<std::string> ids;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(space->states[i].label());
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = space->states[i].subset_of(space->states[j]);
  }
  space->poset = FinitePoset(std::move(ids), leq);
  return space;
}

// ---------------------------------------------------------------------------
// Formula universe

namespace {

bool disjoint_products(const Calculus& calc, const std::vector<AtomSet>& a, const std::vector<AtomSet>& b) {
  for (AtomSet x : a) {
    for (AtomSet y : b) {
      if (!calc.is_contradictory(x | y)) return false;
    }
  }
  return true;
}

bool is_atom_conjunction(const Formula& f) {
  if (f.is_atom()) return true;
  return f.is_conj() && is_atom_conjunction(f.lhs()) && is_atom_conjunction(f.rhs());
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t v : k) h = (h ^ v) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace

FormulaUniverse::FormulaUniverse(std::shared_ptr<const Calculus> calc, std::size_t max_size, std::size_t max_formulas)
    : calc_(std::move(calc)), max_size_(max_size) {
  const Calculus& c = *calc_;
  std::vector<std::vector<std::size_t>> by_size(max_size + 1);
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, KeyHash> classes;

  auto add = [&](Formula f, std::vector<AtomSet> prods) {
    if (formulas_.size() >= max_formulas) {
      throw SizeLimit("formula universe exceeds " + std::to_string(max_formulas) + " formulas");
    }
    const std::size_t id = formulas_.size();
    auto key = c.equivalence_key(f);
    auto [it, inserted] = classes.emplace(std::move(key), representatives_.size());
    if (inserted) representatives_.push_back(id);
    class_of_.push_back(it->second);
    bool flat = f.is_disj();
    for (std::size_t k = 0; flat && k < f.children().size(); ++k) {
      const Formula& part = f.children()[k];
      flat = is_atom_conjunction(part) && !c.products(part).empty();
    }
    flat_.push_back(flat ? 1 : 0);
    by_size[f.size()].push_back(id);
    index_.emplace(f, id);
    formulas_.push_back(std::move(f));
    products_.push_back(std::move(prods));
  };

  if (max_size >= 1) {
    add(Formula::top(), c.products(Formula::top()));
    add(Formula::bottom(), {});
    for (const std::string& a : c.atoms()) {
      Formula f = Formula::atom(a);
      auto prods = c.products(f);
      add(std::move(f), std::move(prods));
    }
  }

  for (std::size_t s = 2; s <= max_size; ++s) {
    for (std::size_t l = 1; l + 1 < s; ++l) {
      const std::size_t r = s - 1 - l;
      for (std::size_t a : by_size[l]) {
        for (std::size_t b : by_size[r]) {
          auto prods = multiply_products(products_[a], products_[b], c);
          add(Formula::conj(formulas_[a], formulas_[b]), std::move(prods));
        }
      }
    }
    // Disjunctions: ordered sequences of at least two pairwise disjoint parts
    // whose sizes sum to s - 1.
    std::vector<std::size_t> parts;
    std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
      if (remaining == 0) {
        if (parts.size() < 2) return;
        std::vector<Formula> fs;
        std::vector<AtomSet> prods;
        for (std::size_t p : parts) {
          fs.push_back(formulas_[p]);
          prods.insert(prods.end(), products_[p].begin(), products_[p].end());
        }
        std::sort(prods.begin(), prods.end(), lex_less);
        add(mk_disj(std::move(fs), c), std::move(prods));
        return;
      }
      for (std::size_t sz = 1; sz <= remaining; ++sz) {
        // A lone part would not be a disjunction.
        if (parts.empty() && sz == remaining) continue;
        for (std::size_t cand : by_size[sz]) {
          bool ok = true;
          for (std::size_t p : parts) {
            if (!disjoint_products(c, products_[p], products_[cand])) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          parts.push_back(cand);
          extend(remaining - sz);
          parts.pop_back();
        }
      }
    };
    if (s >= 3) extend(s - 1);
  }
}

std::optional<std::size_t> FormulaUniverse::find(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FormulaUniverse::is_flat_disjunction(std::size_t i) const { return flat_[i] != 0; }

// ---------------------------------------------------------------------------
// State checks

namespace {

Verdict check_state(const std::vector<char>& member, const FormulaUniverse& u) {
  const Calculus& calc = u.calculus();
  std::size_t some_in = u.size();
  std::size_t some_out = u.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (member[i] && some_in == u.size()) some_in = i;
    if (!member[i] && some_out == u.size()) some_out = i;
  }
  if (some_in == u.size()) return Verdict::fail("empty: no formula of the universe is a member");
  if (some_out == u.size()) return Verdict::fail("not proper: every formula of the universe is a member");

  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!member[i] || !u.is_flat_disjunction(i)) continue;
    bool some = false;
    for (const Formula& part : u.formula(i).children()) {
      auto j = u.find(part);
      some = some || (j && member[*j]);
    }
    if (!some) return Verdict::fail("(S1) fails: '" + print_formula(u.formula(i)) + "' is a member but none of its disjuncts is");
  }

  std::vector<AtomSet> acc{AtomSet{}};
  for (std::size_t i = 0; i < u.size() && !acc.empty(); ++i) {
    if (member[i]) acc = multiply_products(acc, u.products(i), calc);
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (member[i]) continue;
    if (acc.empty() || calc.covers(acc, u.products(i))) {
      return Verdict::fail("(S2) fails: the members entail '" + print_formula(u.formula(i)) + "', which is not a member");
    }
  }
  return Verdict::pass("nonempty, proper, (S1) and (S2) hold over " + std::to_string(u.size()) + " formulas of size <= " +
                       std::to_string(u.max_size()));
}

}  // namespace

Verdict is_logical_state(const LogicalState& s, const FormulaUniverse& universe) {
  const Calculus& calc = universe.calculus();
  std::vector<char> member(universe.size());
  bool flat_member = false;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    member[i] = s.contains_products(universe.products(i)) ? 1 : 0;
    flat_member = flat_member || (member[i] && universe.is_flat_disjunction(i));
  }
  if (!flat_member && s.generator()) {
    // μ ∨̇ (A∖μ) is a flat member of ⟨μ⟩ for every axiom A with A∖μ nonempty.
    const AtomSet mu = s.generator()->atoms;
    for (AtomSet axiom : calc.axioms()) {
      const AtomSet rest(axiom.bits() & ~mu.bits());
      if (rest.empty() || calc.is_contradictory(rest)) continue;
      const Formula witness = mk_disj({conjunction_formula(mu, calc), conjunction_formula(rest, calc)}, calc);
      throw UniverseTooSmall("(S1) cannot be certified for " + s.label() + ": no flat member has size <= " +
                             std::to_string(universe.max_size()) + ", but '" + print_formula(witness) + "' is one");
    }
  }
  return check_state(member, universe);
}

Verdict is_logical_state(const std::function<bool(const Formula&)>& member, const FormulaUniverse& universe) {
  std::vector<char> in(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) in[i] = member(universe.formula(i)) ? 1 : 0;
  return check_state(in, universe);
}

std::size_t bracket_closure(const StateSpace& space, std::span<const Formula> xs, std::size_t s) {
  for (const Formula& x : xs) {
    if (!space.states.at(s).contains(x)) {
      throw PreconditionViolated("'" + print_formula(x) + "' is not a member of " + space.states[s].label());
    }
  }
  ElementSet between = 0;
  for (std::size_t w = 0; w < space.size(); ++w) {
    if (!space.poset.leq(w, s)) continue;
    if (std::all_of(xs.begin(), xs.end(), [&](const Formula& x) { return space.states[w].contains(x); })) between |= element_bit(w);
  }
  const auto least = space.poset.least(between);
  if (!least) throw Error("no least state between the set and " + space.states[s].label());
  return *least;
}

Verdict directed_union_check(const StateSpace& space, std::span<const std::size_t> family, const FormulaUniverse& universe) {
  if (family.empty()) throw NotDirected("an empty family is not directed");
  ElementSet mask = 0;
  for (std::size_t a : family) mask |= element_bit(a);
  for (std::size_t a : family) {
    for (std::size_t b : family) {
      if ((space.poset.up(a) & space.poset.up(b) & mask) == 0) {
        throw NotDirected(space.states[a].label() + " and " + space.states[b].label() + " have no upper bound in the family");
      }
    }
  }
  const std::size_t top = *space.poset.greatest(mask);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    bool in_union = false;
    for (std::size_t a : family) in_union = in_union || space.states[a].contains_products(universe.products(i));
    if (in_union != space.states[top].contains_products(universe.products(i))) {
      return Verdict::fail("union differs from " + space.states[top].label() + " at '" + print_formula(universe.formula(i)) + "'");
    }
  }
  if (auto v = is_logical_state(space.states[top], universe); !v) return v;
  return Verdict::pass("union is " + space.states[top].label());
}

Verdict decomposition_check(const StateSpace& space, std::size_t s, const FormulaUniverse& universe) {
  const LogicalState& state = space.states.at(s);
  const Calculus& calc = *space.calc;
  std::vector<std::size_t> family{0};  // ⟨T⟩ = Tau is below every state
  for (const ConjunctionClass& mu : calc.irreducible_conjunctions()) {
    const AtomSet g[] = {mu.atoms};
    if (!state.contains_products(g)) continue;
    auto idx = space.index_of(LogicalState(space.calc, mu));
    if (!idx) return Verdict::fail("no enumerated state for <" + print_flat(FlatForm{FlatForm::Kind::Flat, {mu}}, calc) + ">");
    family.push_back(*idx);
  }
  ElementSet mask = 0;
  for (std::size_t a : family) mask |= element_bit(a);
  for (std::size_t a : family) {
    for (std::size_t b : family) {
      if ((space.poset.up(a) & space.poset.up(b) & mask) == 0) {
        return Verdict::fail("generator family of " + state.label() + " is not directed");
      }
    }
  }
  for (std::size_t i = 0; i < universe.size(); ++i) {
    bool in_union = false;
    for (std::size_t a : family) in_union = in_union || space.states[a].contains_products(universe.products(i));
    if (in_union != state.contains_products(universe.products(i))) {
      return Verdict::fail(state.label() + " differs from the union of its generators at '" + print_formula(universe.formula(i)) + "'");
    }
  }
  return Verdict::pass();
}

}  // namespace ldl
