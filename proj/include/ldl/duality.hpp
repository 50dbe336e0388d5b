#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldl/calculus.hpp"
#include "ldl/order.hpp"
#include "ldl/states.hpp"

namespace ldl {

/// The calculus P_D of a finite algebraic L-domain together with its direct
/// denotational semantics ⟦·⟧ : formulas → U(D).
///
/// `hat` evaluates formulas structurally on the poset (up_x ↦ ↑x, ∧ ↦ ∩,
/// ∨̇ ↦ disjoint ∪) and shares no code with the minimal-upper-bound decision
/// procedure of the backend, so the two can be checked against each other.
class SemanticCalculus {
 public:
  /// Throws NotAnLDomain.
  explicit SemanticCalculus(FinitePoset domain, std::size_t max_states = 100'000);

  const FinitePoset& domain() const { return backend_->domain(); }
  const std::shared_ptr<const SemanticBackend>& backend() const { return backend_; }
  const std::shared_ptr<const StateSpace>& states() const { return states_; }
  const std::vector<DecomposableSet>& decomposable() const { return decomposable_; }

  /// ⟦f⟧ as a subset of the carrier. Throws DisjointnessViolation if the parts
  /// of a disjunction denote overlapping sets.
  ElementSet hat(const Formula& f) const;
  /// ⟦f⟧ classified as a member of U(D); throws PreconditionViolated if the
  /// denotation is not decomposable.
  DecomposableSet hat_set(const Formula& f) const;
  /// Γ ⊢ φ decided as ⋂⟦γ⟧ ⊆ ⟦φ⟧.
  bool hat_entails(std::span<const Formula> gamma, const Formula& phi) const;

 private:
  std::shared_ptr<const SemanticBackend> backend_;
  std::shared_ptr<const StateSpace> states_;
  std::vector<DecomposableSet> decomposable_;
};

std::shared_ptr<const SemanticCalculus> calculus_of_domain(const FinitePoset& d);

/// Every atom set whose elements have no common upper bound (the axiom set
/// before minimisation).
std::vector<AtomSet> full_axioms(const SemanticCalculus& sc);

/// F, T or ∨̇_{a∈A} up_a.
Formula formula_of_decomposable(const SemanticCalculus& sc, const DecomposableSet& u);
/// Formula denoting ↑x: T for the bottom element, up_x otherwise.
Formula formula_of_point(const SemanticCalculus& sc, std::size_t x);

/// {φ : x ∈ ⟦φ⟧}, as Tau for ⊥ and ⟨up_x⟩ otherwise.
LogicalState state_of_point(const SemanticCalculus& sc, std::size_t x);

struct IsoCertificate {
  Verdict verdict;
  /// Domain element index ↦ state index.
  std::vector<std::size_t> bijection;
  /// `x -> <label>` lines, one per element.
  std::vector<std::string> lines;
};

/// x ↦ state_of_point(x) is an order isomorphism onto the state poset; also
/// checks that every state S recovers its point as sup{a : up_a ∈ S} and that
/// {U ∈ U(D) : x ∈ U} is exactly the set of decomposable sets whose formula
/// lies in the state.
IsoCertificate check_representation_iso(const FinitePoset& d, std::size_t max_states = 100'000);

/// Hat evaluation maps the universe into U(D), and onto it through
/// formula_of_decomposable.
Verdict hat_image_check(const SemanticCalculus& sc, const FormulaUniverse& universe);

/// Agreement of backend entailment with ⋂⟦γ⟧ ⊆ ⟦φ⟧ on every sequent γ ⊢ φ and
/// γ1, γ2 ⊢ φ over the universe.
Verdict two_route_check(const SemanticCalculus& sc, const FormulaUniverse& universe);

// ---------------------------------------------------------------------------
// Consequence relations

/// A consequence relation Θ between two calculi over finite bases.
///
/// The irreducible conjunctions of the source, up to mutual entailment, are
/// exactly the generators of its states, with T standing for state 0. Θ is
/// stored as the table μ ↦ Θ[{μ}], a state index of the target, so that
/// (μ, ψ) ∈ Θ ⇔ ψ ∈ target.states[table[μ]].
struct ConsequenceRelation {
  std::shared_ptr<const StateSpace> source;
  std::shared_ptr<const StateSpace> target;
  std::vector<std::size_t> table;

  /// (μ, ψ) ∈ Θ for the generator of source state `mu`.
  bool relates(std::size_t mu, const Formula& psi) const;

  friend bool operator==(const ConsequenceRelation& a, const ConsequenceRelation& b) {
    return a.source == b.source && a.target == b.target && a.table == b.table;
  }
};

/// Decides (R1)–(R3) and the four equivalent membership conditions for
/// relations between one fixed pair of calculi, with formulas of the target
/// quantified over one universe. Construction checks that both calculi are
/// expressive on their universes (NotExpressibleHere otherwise) and
/// precomputes the membership of every target formula class in every target
/// state.
class RelationChecker {
 public:
  RelationChecker(std::shared_ptr<const StateSpace> source, std::shared_ptr<const StateSpace> target,
                  const FormulaUniverse& source_universe, const FormulaUniverse& target_universe);

  Verdict check(const ConsequenceRelation& theta) const;

 private:
  struct RowFacts {
    std::string r2;
    std::string r3;
  };

  std::shared_ptr<const StateSpace> source_;
  std::shared_ptr<const StateSpace> target_;
  const FormulaUniverse* target_universe_;
  std::vector<std::size_t> reps_;                     // target class representatives
  std::vector<std::vector<char>> member_;             // [target state][class]
  std::vector<std::vector<char>> class_entails_;      // [class][class]
  std::vector<std::vector<char>> generator_member_;   // [target state][target state generator]
  std::vector<std::vector<char>> source_entails_;     // [source state][source state], generators
  std::vector<RowFacts> rows_;                        // per target state
};

Verdict is_consequence_relation(const ConsequenceRelation& theta, const FormulaUniverse& source_universe,
                                const FormulaUniverse& target_universe);

/// Θ[S] for source state `s`: the union of Θ[{μ}] over the generators μ of
/// states below S. Returns the target state it equals; throws NotDirected if
/// the collected rows have no largest member.
std::size_t apply_theta(const ConsequenceRelation& theta, std::size_t s);
/// Θ[X] for a finite formula set X of the source, as a membership predicate
/// over target formulas.
std::function<bool(const Formula&)> apply_theta(const ConsequenceRelation& theta, std::span<const Formula> xs);

/// S ↦ Θ[S]. Throws NotMonotone if the result is not order preserving.
MonotoneMap f_of_theta(const ConsequenceRelation& theta);
/// (μ, ψ) ∈ Θ_f ⇔ ψ ∈ f(⟨μ⟩). Throws NotMonotone.
ConsequenceRelation theta_of_f(std::shared_ptr<const StateSpace> source, std::shared_ptr<const StateSpace> target,
                               const MonotoneMap& f);

ConsequenceRelation identity_relation(std::shared_ptr<const StateSpace> space);
/// θ2 ∘ θ1: (μ, φ) related iff (μ, ν) ∈ θ1 and (ν, φ) ∈ θ2 for some irreducible
/// ν of the middle calculus. Throws CompositionMismatch.
ConsequenceRelation compose(const ConsequenceRelation& theta2, const ConsequenceRelation& theta1);

/// Ω_h: μ relates to ψ iff h[⟦μ⟧] ⊆ ⟦ψ⟧. Throws NotMonotone.
ConsequenceRelation scott_to_consequence(const SemanticCalculus& d1, const SemanticCalculus& d2, const MonotoneMap& h);
/// h_Ω(x) = sup{y : (μ, ↑y) ∈ Ω for some μ with x ∈ ⟦μ⟧}. Throws
/// PreconditionViolated if the supremum does not exist.
MonotoneMap consequence_to_scott(const SemanticCalculus& d1, const SemanticCalculus& d2, const ConsequenceRelation& omega);

/// `<T> -> <up_b>` lines, one per source state.
std::vector<std::string> describe(const ConsequenceRelation& theta);

}  // namespace ldl
