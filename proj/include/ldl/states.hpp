#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldl/calculus.hpp"
#include "ldl/formula.hpp"
#include "ldl/order.hpp"

namespace ldl {

/// The principal state ⟨g⟩ = {φ : g ⊢ φ}. An empty generator stands for T,
/// whose state is Tau, the set of tautologies.
class LogicalState {
 public:
  LogicalState(std::shared_ptr<const Calculus> calc, std::optional<ConjunctionClass> generator);

  static LogicalState tau(std::shared_ptr<const Calculus> calc) { return LogicalState(std::move(calc), std::nullopt); }

  const Calculus& calculus() const { return *calc_; }
  const std::shared_ptr<const Calculus>& calculus_ptr() const { return calc_; }
  const std::optional<ConjunctionClass>& generator() const { return generator_; }
  bool is_tau() const { return !generator_.has_value(); }
  /// T for Tau, the conjunction otherwise.
  Formula generator_formula() const;

  bool contains(const Formula& f) const;
  bool contains_products(std::span<const AtomSet> products) const;
  /// Inclusion of states: every member of this state is a member of `other`.
  bool subset_of(const LogicalState& other) const;
  /// Same state (mutually entailing generators).
  bool same_as(const LogicalState& other) const { return subset_of(other) && other.subset_of(*this); }

  /// `<T>` or `<p & q>`.
  std::string label() const;

 private:
  std::shared_ptr<const Calculus> calc_;
  std::optional<ConjunctionClass> generator_;
};

/// Membership predicate of X[⊢] for a finite X.
std::function<bool(const Formula&)> entail_closure(const Calculus& calc, std::span<const Formula> xs);

/// Every logical state of a calculus over a finite basis, ordered by
/// inclusion. State 0 is Tau; the others are ⟨μ⟩ for one representative μ
/// of each class of mutually entailing irreducible conjunctions.
struct StateSpace {
  std::shared_ptr<const Calculus> calc;
  std::vector<LogicalState> states;
  FinitePoset poset;

  std::size_t size() const { return states.size(); }
  /// Index of the state equal to `s`.
  std::optional<std::size_t> index_of(const LogicalState& s) const;
};

/// Throws SizeLimit past `max_states` states.
std::shared_ptr<const StateSpace> state_poset(std::shared_ptr<const Calculus> calc, std::size_t max_states = 100'000);

/// Every well-formed formula with at most `max_size` syntax-tree nodes over T,
/// F and the atoms of one calculus (disjunctions only over disjoint parts),
/// grouped into classes of logically equivalent formulas.
class FormulaUniverse {
 public:
  /// Throws SizeLimit past `max_formulas` formulas.
  FormulaUniverse(std::shared_ptr<const Calculus> calc, std::size_t max_size, std::size_t max_formulas = 2'000'000);

  const Calculus& calculus() const { return *calc_; }
  std::size_t max_size() const { return max_size_; }
  std::size_t size() const { return formulas_.size(); }
  const Formula& formula(std::size_t i) const { return formulas_[i]; }
  std::span<const Formula> formulas() const { return formulas_; }
  const std::vector<AtomSet>& products(std::size_t i) const { return products_[i]; }

  std::size_t class_count() const { return representatives_.size(); }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  /// Smallest member of a class (first enumerated).
  std::size_t representative(std::size_t cls) const { return representatives_[cls]; }
  /// Index of a formula of the universe (structural equality).
  std::optional<std::size_t> find(const Formula& f) const;
  /// ∨̇ of at least two satisfiable conjunctions of atoms, pairwise contradictory.
  bool is_flat_disjunction(std::size_t i) const;

 private:
  std::shared_ptr<const Calculus> calc_;
  std::size_t max_size_;
  std::vector<Formula> formulas_;
  std::vector<std::vector<AtomSet>> products_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> representatives_;
  std::vector<char> flat_;
  std::unordered_map<Formula, std::size_t> index_;
};

/// Nonempty, proper, (S1) and (S2), quantified over the universe. Throws
/// UniverseTooSmall when the state has flat members but none of them is in the
/// universe, so that (S1) would hold only vacuously.
Verdict is_logical_state(const LogicalState& s, const FormulaUniverse& universe);
/// Same checks for an explicit formula set given by its membership predicate.
Verdict is_logical_state(const std::function<bool(const Formula&)>& member, const FormulaUniverse& universe);

/// The least state W with X ⊆ W ⊆ S. Throws PreconditionViolated if X ⊄ S.
std::size_t bracket_closure(const StateSpace& space, std::span<const Formula> xs, std::size_t s);

/// Checks that the (finite) family is directed and that its union, which is its
/// largest member, is a logical state whose members are exactly the union of
/// the members over the universe. Throws NotDirected.
Verdict directed_union_check(const StateSpace& space, std::span<const std::size_t> family, const FormulaUniverse& universe);

/// Every state is the union of ⟨μ⟩ over its member generators, and that
/// family is directed; checked over the universe.
Verdict decomposition_check(const StateSpace& space, std::size_t s, const FormulaUniverse& universe);

}  // namespace ldl
