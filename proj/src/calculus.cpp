#include "ldl/calculus.hpp"

#include <algorithm>

#include "ldl/error.hpp"

namespace ldl {

// ---------------------------------------------------------------------------
// Calculus

Calculus::Calculus(std::vector<std::string> sorted_atoms) : atoms_(std::move(sorted_atoms)) {
  if (atoms_.size() > AtomSet::kCapacity) throw SizeLimit("too many atoms for one calculus");
  for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);
}

std::optional<std::size_t> Calculus::find_atom(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Calculus::atom_index(std::string_view name) const {
  if (auto i = find_atom(name)) return *i;
  throw UnknownAtom(std::string(name));
}

AtomSet Calculus::atom_universe() const {
  if (atoms_.size() == AtomSet::kCapacity) return AtomSet(~std::uint64_t{0});
  return AtomSet((std::uint64_t{1} << atoms_.size()) - 1);
}

std::vector<AtomSet> Calculus::antecedent_products(std::span<const Formula> gamma) const {
  std::vector<AtomSet> acc{AtomSet{}};
  for (const Formula& g : gamma) {
    if (acc.empty()) break;
    acc = multiply_products(acc, products(g), *this);
  }
  return acc;
}

bool Calculus::entails(std::span<const Formula> gamma, const Formula& phi) const {
  const auto lhs = antecedent_products(gamma);
  if (lhs.empty()) return true;
  return covers(lhs, products(phi));
}

bool Calculus::conj_entails(AtomSet mu, AtomSet nu) const {
  if (is_contradictory(mu)) return true;
  if (is_contradictory(nu)) return false;
  const AtomSet l[] = {mu};
  const AtomSet r[] = {nu};
  return covers(l, r);
}

bool Calculus::equivalent(const Formula& a, const Formula& b) const { return equivalence_key(a) == equivalence_key(b); }

std::vector<ConjunctionClass> Calculus::conjunction_classes() const {
  if (atoms_.size() > 20) throw SizeLimit("too many atoms to enumerate conjunction classes (" + std::to_string(atoms_.size()) + ")");
  std::vector<ConjunctionClass> out;
  const std::uint64_t n = std::uint64_t{1} << atoms_.size();
  for (std::uint64_t bits = 1; bits < n; ++bits) {
    if (!is_contradictory(AtomSet(bits))) out.push_back(ConjunctionClass{AtomSet(bits)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConjunctionClass> Calculus::irreducible_conjunctions() const {
  std::vector<ConjunctionClass> out;
  for (const ConjunctionClass& c : conjunction_classes()) {
    if (is_irreducible(c)) out.push_back(c);
  }
  return out;
}

void Calculus::certify_witness(const Formula& phi, const FlatForm& witness) const {
  if (witness.kind != FlatForm::Kind::Flat || witness.disjuncts.empty()) {
    throw NotExpressibleHere("no flat witness for '" + print_formula(phi) + "'");
  }
  const auto prods = products(phi);
  std::vector<AtomSet> flat;
  for (const ConjunctionClass& c : witness.disjuncts) {
    if (!is_irreducible(c)) throw NotExpressibleHere("witness disjunct is not irreducible");
    const AtomSet one[] = {c.atoms};
    if (!covers(one, prods)) throw NotExpressibleHere("witness disjunct does not entail '" + print_formula(phi) + "'");
    flat.push_back(c.atoms);
  }
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (!is_contradictory(flat[i] | flat[j])) throw NotExpressibleHere("witness disjuncts are not disjoint");
    }
  }
  if (!covers(prods, flat)) throw NotExpressibleHere("'" + print_formula(phi) + "' does not entail its witness");
}

// ---------------------------------------------------------------------------
// FreeCalculus

FreeCalculus::FreeCalculus(DisjunctiveBasis basis) : Calculus(basis.atoms), basis_(std::move(basis)) {
  for (const auto& ax : basis_.axioms) {
    AtomSet set;
    for (const std::string& a : ax) set = set | AtomSet::single(atom_index(a));
    axioms_.push_back(set);
  }
}

bool FreeCalculus::is_contradictory(AtomSet mu) const {
  return std::any_of(axioms_.begin(), axioms_.end(), [mu](AtomSet ax) { return ax.subset_of(mu); });
}

bool FreeCalculus::covers(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs) const {
  return std::all_of(lhs.begin(), lhs.end(), [rhs](AtomSet mu) {
    return std::any_of(rhs.begin(), rhs.end(), [mu](AtomSet nu) { return nu.subset_of(mu); });
  });
}

std::vector<std::uint64_t> FreeCalculus::equivalence_key(const Formula& f) const {
  // Product lists are pairwise contradictory antichains, and two such lists
  // cover each other only when they are equal.
  std::vector<std::uint64_t> key;
  for (AtomSet a : products(f)) key.push_back(a.bits());
  return key;
}

bool FreeCalculus::is_irreducible(const ConjunctionClass& mu) const {
  if (mu.atoms.empty() || is_contradictory(mu.atoms)) throw NotAConjunction("not a satisfiable conjunction");
  return true;
}

FlatForm FreeCalculus::expressive_witness(const Formula& phi) const {
  if (classify(phi, *this) != Classification::Satisfiable) {
    throw PreconditionViolated("'" + print_formula(phi) + "' is not satisfiable");
  }
  FlatForm w = flatten(phi, *this);
  certify_witness(phi, w);
  return w;
}

// ---------------------------------------------------------------------------
// SemanticBackend

namespace {

std::vector<std::string> semantic_atoms(const FinitePoset& d) {
  if (auto v = is_l_domain(d); !v) throw NotAnLDomain(v.diagnostic);
  std::vector<std::string> names;
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (x != *d.bottom()) names.push_back(SemanticBackend::atom_name(d, x));
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

std::string SemanticBackend::atom_name(const FinitePoset& domain, std::size_t element) { return "up_" + domain.id(element); }

SemanticBackend::SemanticBackend(FinitePoset domain) : Calculus(semantic_atoms(domain)), domain_(std::move(domain)) {
  element_of_atom_.resize(atoms().size());
  for (std::size_t x = 0; x < domain_.size(); ++x) {
    if (x == *domain_.bottom()) continue;
    element_of_atom_[atom_index(atom_name(domain_, x))] = x;
  }
  // Inclusion-minimal atom sets without a common upper bound. Consistent sets
  // are closed under subsets, so extending consistent sets suffices.
  const std::size_t n = atoms().size();
  std::vector<AtomSet> frontier{AtomSet{}};
  while (!frontier.empty()) {
    std::vector<AtomSet> next;
    for (AtomSet s : frontier) {
      const std::size_t from = s.empty() ? 0 : s.indices().back() + 1;
      for (std::size_t j = from; j < n; ++j) {
        const AtomSet t = s | AtomSet::single(j);
        if (!is_contradictory(t)) {
          next.push_back(t);
          continue;
        }
        bool minimal = true;
        for (std::size_t i : s.indices()) {
          if (is_contradictory(AtomSet(t.bits() & ~AtomSet::single(i).bits()))) {
            minimal = false;
            break;
          }
        }
        if (minimal) axioms_.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  std::sort(axioms_.begin(), axioms_.end(), lex_less);
}

std::optional<std::size_t> SemanticBackend::atom_of_element(std::size_t element) const {
  if (element == *domain_.bottom()) return std::nullopt;
  return atom_index(atom_name(domain_, element));
}

ElementSet SemanticBackend::generators(AtomSet mu) const {
  if (mu.empty()) return element_bit(*domain_.bottom());
  ElementSet xs = 0;
  for (std::size_t i : mu.indices()) xs |= element_bit(element_of_atom_[i]);
  return domain_.minimal(domain_.upper_bounds(xs));
}

ElementSet SemanticBackend::generators(std::span<const AtomSet> products) const {
  ElementSet all = 0;
  for (AtomSet mu : products) all |= generators(mu);
  return domain_.minimal(all);
}

bool SemanticBackend::is_contradictory(AtomSet mu) const { return generators(mu) == 0; }

bool SemanticBackend::covers(std::span<const AtomSet> lhs, std::span<const AtomSet> rhs) const {
  const ElementSet right = generators(rhs);
  for (std::size_t x : elements_of(generators(lhs))) {
    if ((domain_.down(x) & right) == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> SemanticBackend::equivalence_key(const Formula& f) const {
  return {domain_.up_closure(generators(products(f)))};
}

bool SemanticBackend::is_irreducible(const ConjunctionClass& mu) const {
  if (mu.atoms.empty()) throw NotAConjunction("empty conjunction");
  const ElementSet g = generators(mu.atoms);
  if (g == 0) throw NotAConjunction("contradictory conjunction");
  return std::popcount(g) == 1;
}

FlatForm SemanticBackend::expressive_witness(const Formula& phi) const {
  if (classify(phi, *this) != Classification::Satisfiable) {
    throw PreconditionViolated("'" + print_formula(phi) + "' is not satisfiable");
  }
  // ⟦phi⟧ = ↑A with A pairwise inconsistent; phi ⊣⊢ ∨̇ up_a.
  FlatForm w{FlatForm::Kind::Flat, {}};
  for (std::size_t a : elements_of(generators(products(phi)))) {
    w.disjuncts.push_back(ConjunctionClass{AtomSet::single(*atom_of_element(a))});
  }
  std::sort(w.disjuncts.begin(), w.disjuncts.end());
  certify_witness(phi, w);
  return w;
}

}  // namespace ldl
