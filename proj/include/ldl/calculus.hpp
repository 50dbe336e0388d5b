#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ldl/formula.hpp"
#include "ldl/order.hpp"

namespace ldl {

/// A disjunctive sequent calculus over a finite atom set, seen through its
/// decision procedure for valid sequents.
///
/// Every backend reduces formulas to `conjunctive_products` and decides
/// Γ ⊢ φ by comparing the product list of ⋀Γ with that of φ (`covers`). The
/// two backends differ only in what a contradictory conjunction is and in how
/// product lists are compared.
class Calculus {
 public:
  virtual ~Calculus() = default;
  Calculus(const Calculus&) = delete;
  Calculus& operator=(const Calculus&) = delete;

  virtual std::string_view kind() const = 0;

  /// Atom names, sorted; atom i is bit i of an AtomSet.
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<std::size_t> find_atom(std::string_view name) const;
  /// Throws UnknownAtom.
  std::size_t atom_index(std::string_view name) const;
  AtomSet atom_universe() const;

  /// μ ⊢ F for the conjunction of the atoms (never true for the empty set).
  virtual bool is_contradictory(AtomSet mu) const = 0;
  /// The disjunction of `lhs` entails the disjunction of `rhs`. Both lists are
  /// products in the sense of `conjunctive_products`.
  virtual bool covers(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs) const = 0;
  /// Atomic disjointness axioms, as the atom sets Γ of Γ ⊢ F.
  virtual const std::vector<AtomSet>& axioms() const = 0;
  /// Canonical key: equal keys ⇔ logically equivalent formulas.
  virtual std::vector<std::uint64_t> equivalence_key(const Formula& f) const = 0;

  /// Throws NotAConjunction for a contradictory (or empty) class.
  virtual bool is_irreducible(const ConjunctionClass& mu) const = 0;
  /// An irreducible flat formula ∨̇μ_i with phi ⊢ ∨̇μ_i and every μ_i ⊢ phi.
  /// Requires a satisfiable phi (PreconditionViolated otherwise); throws
  /// NotExpressibleHere when no witness exists.
  virtual FlatForm expressive_witness(const Formula& phi) const = 0;

  std::vector<AtomSet> products(const Formula& f) const { return conjunctive_products(f, *this); }
  std::vector<AtomSet> antecedent_products(std::span<const Formula> gamma) const;

  bool entails(std::span<const Formula> gamma, const Formula& phi) const;
  bool entails(std::initializer_list<Formula> gamma, const Formula& phi) const {
    return entails(std::span<const Formula>(gamma.begin(), gamma.size()), phi);
  }
  bool entails(const Sequent& s) const { return entails(s.antecedent(), s.succedent()); }
  bool conj_entails(AtomSet mu, AtomSet nu) const;
  bool equivalent(const Formula& a, const Formula& b) const;

  /// Every satisfiable conjunction class, in ConjunctionClass order. Throws
  /// SizeLimit beyond 2^20 candidate atom sets.
  std::vector<ConjunctionClass> conjunction_classes() const;
  std::vector<ConjunctionClass> irreducible_conjunctions() const;

 protected:
  explicit Calculus(std::vector<std::string> sorted_atoms);
  /// Checks the postconditions of an expressive witness; throws
  /// NotExpressibleHere if they fail.
  void certify_witness(const Formula& phi, const FlatForm& witness) const;

 private:
  std::vector<std::string> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// The calculus freely generated by a disjunctive basis.
///
/// A conjunction μ entails F iff some axiom is contained in atoms(μ), and
/// μ ⊢ ν iff μ is contradictory or atoms(ν) ⊆ atoms(μ). A flat antecedent
/// entails a flat succedent iff each of its disjuncts entails some disjunct of
/// the succedent; this closed form is gated against derivation search.
class FreeCalculus final : public Calculus {
 public:
  explicit FreeCalculus(DisjunctiveBasis basis);

  std::string_view kind() const override { return "free"; }
  const DisjunctiveBasis& basis() const { return basis_; }

  bool is_contradictory(AtomSet mu) const override;
  bool covers(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs) const override;
  const std::vector<AtomSet>& axioms() const override { return axioms_; }
  std::vector<std::uint64_t> equivalence_key(const Formula& f) const override;
  bool is_irreducible(const ConjunctionClass& mu) const override;
  FlatForm expressive_witness(const Formula& phi) const override;

 private:
  DisjunctiveBasis basis_;
  std::vector<AtomSet> axioms_;
};

/// The calculus of a finite algebraic L-domain D, decided through minimal
/// upper bounds: atom `up_x` for every x ≠ ⊥, a conjunction denotes
/// ↑mub{x_1..x_n}, and Γ ⊢ φ iff every generator of ⟦⋀Γ⟧ lies above some
/// generator of ⟦φ⟧.
class SemanticBackend final : public Calculus {
 public:
  /// Throws NotAnLDomain.
  explicit SemanticBackend(FinitePoset domain);

  static std::string atom_name(const FinitePoset& domain, std::size_t element);

  std::string_view kind() const override { return "semantic"; }
  const FinitePoset& domain() const { return domain_; }
  std::size_t element_of_atom(std::size_t atom) const { return element_of_atom_[atom]; }
  /// Atom index of `up_x`; nullopt for the bottom element.
  std::optional<std::size_t> atom_of_element(std::size_t element) const;

  /// Generators of ⟦μ⟧ (minimal upper bounds of the atoms' elements; {⊥} for μ = ∅).
  ElementSet generators(AtomSet mu) const;
  /// Minimal generators of the union of ⟦μ⟧ over the products.
  ElementSet generators(std::span<const AtomSet> products) const;

  bool is_contradictory(AtomSet mu) const override;
  bool covers(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs) const override;
  const std::vector<AtomSet>& axioms() const override { return axioms_; }
  std::vector<std::uint64_t> equivalence_key(const Formula& f) const override;
  bool is_irreducible(const ConjunctionClass& mu) const override;
  FlatForm expressive_witness(const Formula& phi) const override;

 private:
  FinitePoset domain_;
  std::vector<std::size_t> element_of_atom_;
  std::vector<AtomSet> axioms_;
};

// ---------------------------------------------------------------------------
// Derivations

enum class Rule : std::uint8_t { Ax, Id, Lwk, Cut, LF, RT, LConj, RConj, LDisj, RDisj };

std::string_view rule_name(Rule r);
std::optional<Rule> parse_rule_name(std::string_view name);

/// A proof tree. Side data is optional: `side_formula` names the weakened
/// formula (Lwk), the cut formula (Cut) or the principal formula (LConj,
/// LDisj); `side_index` is the chosen disjunct of RDisj. The checker infers
/// omitted side data.
struct Derivation {
  Rule rule;
  Sequent conclusion;
  std::vector<Derivation> premises;
  std::optional<Formula> side_formula;
  std::optional<std::size_t> side_index;
};

/// Height of the tree (a leaf has height 1).
std::size_t height(const Derivation& d);
std::size_t node_count(const Derivation& d);

/// Checks every node against its rule schema. Disjointness side conditions of
/// LDisj/RDisj are decided with `calc.entails`; Ax leaves must match one of
/// `calc.axioms()` exactly. The diagnostic names the first failing node.
Verdict check_derivation(const Calculus& calc, const Derivation& d);

struct SearchOptions {
  std::size_t depth = 8;
  /// Maximum number of distinct sequents explored before BudgetExceeded.
  std::size_t node_budget = 2'000'000;
};

/// Bounded backward proof search in the free calculus.
///
/// Explores Id, LF, RT, Ax leaves, Lwk, the left and right connective rules
/// (RConj over every split of the antecedent, RDisj over every disjunct) and
/// cuts on F (Γ ⊢ F together with F ⊢ φ). Returns a derivation of minimal
/// height among those, if that height is at most `options.depth`.
std::optional<Derivation> search_derivation(const FreeCalculus& calc, const Sequent& s, const SearchOptions& options = {});

/// `(RULE [side] #index conclusion premise*)`; the side parts are optional.
std::string print_derivation(const Derivation& d);
Derivation parse_derivation(std::string_view text, const Calculus& calc);

}  // namespace ldl
