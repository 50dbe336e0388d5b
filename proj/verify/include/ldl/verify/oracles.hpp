#pragma once

// Independent reference implementations used by the acceptance suite and the
// tests. None of them calls the decision procedures they are compared with.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ldl/calculus.hpp"
#include "ldl/order.hpp"

namespace ldl::oracle {

/// Pointed, and every nonempty subset of every ↓x has a least upper bound
/// inside ↓x. Reads nothing but `leq`.
bool literal_l_domain(const FinitePoset& p);

/// One representative of every isomorphism class of posets with `n` elements,
/// named e0..e(n-1). Counts are 1, 1, 2, 5, 16, 63 for n = 0..5.
std::vector<FinitePoset> posets_up_to_iso(std::size_t n);

/// Worlds of a free calculus: the atom sets containing no axiom.
std::vector<AtomSet> worlds(const FreeCalculus& calc);
/// Classical truth of a formula in a world (atoms true iff present).
bool holds(const Formula& f, AtomSet world, const Calculus& calc);
/// Γ ⊢ φ in the free calculus read as truth preservation over every world.
bool world_entails(const FreeCalculus& calc, std::span<const AtomSet> worlds, std::span<const Formula> gamma, const Formula& phi);

/// Random well-formed formula with at most `max_size` nodes. Disjunctions are
/// only formed from parts that `calc` certifies disjoint; a rejected
/// disjunction falls back to a conjunction.
Formula random_formula(std::mt19937_64& rng, const Calculus& calc, std::size_t max_size);

}  // namespace ldl::oracle
