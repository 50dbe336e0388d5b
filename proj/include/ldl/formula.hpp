#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ldl {

class Calculus;

/// Set of atom indices of one calculus. Atoms are indexed in name order, so the
/// ascending index sequence is also the name-sorted atom list.
class AtomSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr AtomSet() = default;
  constexpr explicit AtomSet(std::uint64_t bits) : bits_(bits) {}
  static constexpr AtomSet single(std::size_t index) { return AtomSet(std::uint64_t{1} << index); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
  constexpr bool subset_of(AtomSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr AtomSet operator|(AtomSet o) const { return AtomSet(bits_ | o.bits_); }
  constexpr AtomSet operator&(AtomSet o) const { return AtomSet(bits_ & o.bits_); }
  constexpr bool operator==(const AtomSet&) const = default;

  std::vector<std::size_t> indices() const;

  /// Lexicographic order on the ascending index sequences ({0} < {0,1} < {1}).
  friend bool lex_less(AtomSet a, AtomSet b);

 private:
  std::uint64_t bits_ = 0;
};

bool lex_less(AtomSet a, AtomSet b);

/// Immutable disjunctive formula. Copies share structure.
///
/// `Disj` nodes can only be obtained from `mk_disj` (or the parser, which calls
/// it), so every disjunction carries a disjointness certificate from the
/// calculus it was built against.
class Formula {
 public:
  enum class Kind : std::uint8_t { Top, Bottom, Atom, Conj, Disj };

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string name);
  static Formula conj(Formula lhs, Formula rhs);

  Kind kind() const { return node_->kind; }
  bool is_top() const { return kind() == Kind::Top; }
  bool is_bottom() const { return kind() == Kind::Bottom; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_conj() const { return kind() == Kind::Conj; }
  bool is_disj() const { return kind() == Kind::Disj; }

  /// Atom name; empty unless `is_atom()`.
  const std::string& name() const { return node_->name; }
  /// Two children for `Conj`, at least two for `Disj`, none otherwise.
  std::span<const Formula> children() const { return node_->children; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }

  /// Number of syntax-tree nodes.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Formula> children;
    std::size_t size;
    std::size_t hash;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, std::vector<Formula> children);

  friend Formula mk_disj(std::vector<Formula> parts, const Calculus& calc);

  std::shared_ptr<const Node> node_;
};

/// Γ ⊢ φ with Γ kept as a sorted, duplicate-free set.
class Sequent {
 public:
  Sequent(std::vector<Formula> antecedent, Formula succedent);

  std::span<const Formula> antecedent() const { return antecedent_; }
  const Formula& succedent() const { return succedent_; }
  bool contains(const Formula& f) const;

  friend bool operator==(const Sequent&, const Sequent&) = default;

 private:
  std::vector<Formula> antecedent_;
  Formula succedent_;
};

/// Atom set plus atomic disjointness axioms (each axiom Γ stands for Γ ⊢ F).
struct DisjunctiveBasis {
  std::vector<std::string> atoms;                 // sorted, unique
  std::vector<std::vector<std::string>> axioms;   // each sorted, unique, nonempty

  /// Sorts, deduplicates and validates. Throws InputError on an empty axiom,
  /// an axiom over an undeclared atom, or an invalid atom name.
  static DisjunctiveBasis make(std::vector<std::string> atoms, std::vector<std::vector<std::string>> axioms);
};

/// `.dsb` text: `atom p` and `axiom p q ...` lines, `#` comments.
DisjunctiveBasis parse_basis(std::string_view text);
DisjunctiveBasis load_basis(const std::string& path);
std::string print_basis(const DisjunctiveBasis& basis);

bool is_valid_atom_name(std::string_view name);

/// Satisfiable conjunction of atoms, canonical up to reordering and repetition.
struct ConjunctionClass {
  AtomSet atoms;

  friend bool operator==(const ConjunctionClass&, const ConjunctionClass&) = default;
  friend bool operator<(const ConjunctionClass& a, const ConjunctionClass& b) { return lex_less(a.atoms, b.atoms); }
};

/// Canonical flat shape of a formula in one calculus.
struct FlatForm {
  enum class Kind : std::uint8_t { TautologyEquivalent, ContradictionEquivalent, Flat };

  Kind kind = Kind::ContradictionEquivalent;
  std::vector<ConjunctionClass> disjuncts;  // Flat only; sorted, pairwise contradictory

  friend bool operator==(const FlatForm&, const FlatForm&) = default;
};

enum class Classification : std::uint8_t { Tautology, Contradiction, Satisfiable };

std::string_view to_string(Classification c);

/// Builds ∨̇ parts after certifying parts[i], parts[j] ⊢ F for every pair with
/// `calc.entails`. A single part is returned unchanged. Throws
/// DisjointnessViolation naming the first offending pair, or
/// PreconditionViolated for an empty list.
Formula mk_disj(std::vector<Formula> parts, const Calculus& calc);

/// ⋀ of the list; T for an empty list, left-nested otherwise.
Formula conj_all(std::span<const Formula> parts);

Formula parse_formula(std::string_view text, const Calculus& calc);
/// `g1, g2 |- f`, or `|- f` for an empty antecedent.
Sequent parse_sequent(std::string_view text, const Calculus& calc);

std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);

/// Distributes ∧ over ∨̇ and drops contradictory products. The result lists
/// conjunctions (the empty set standing for T) that are pairwise contradictory
/// and whose disjunction is logically equivalent to `f`. Throws
/// DisjointnessViolation if a disjunction of `f` is not disjoint in `calc`, and
/// UnknownAtom for atoms outside `calc`.
std::vector<AtomSet> conjunctive_products(const Formula& f, const Calculus& calc);

/// Product of two product lists (the products of a conjunction).
std::vector<AtomSet> multiply_products(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs, const Calculus& calc);

FlatForm flatten(const Formula& f, const Calculus& calc);
Classification classify(const Formula& f, const Calculus& calc);

/// The conjunction ⋀ of the atoms, printed formula-side; T for the empty set.
Formula conjunction_formula(AtomSet atoms, const Calculus& calc);
/// ∨̇ of the disjuncts of a flat form (T / F for the two degenerate kinds).
Formula flat_formula(const FlatForm& flat, const Calculus& calc);

std::string print_flat(const FlatForm& flat, const Calculus& calc);

}  // namespace ldl

template <>
struct std::hash<ldl::Formula> {
  std::size_t operator()(const ldl::Formula& f) const noexcept { return f.hash(); }
};
