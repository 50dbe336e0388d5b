#include "ldl/verify/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "ldl/error.hpp"

namespace ldl::oracle {

bool literal_l_domain(const FinitePoset& p) {
  const std::size_t n = p.size();
  if (n == 0) return false;
  bool pointed = false;
  for (std::size_t b = 0; b < n && !pointed; ++b) {
    bool below_all = true;
    for (std::size_t x = 0; x < n; ++x) below_all = below_all && p.leq(b, x);
    pointed = below_all;
  }
  if (!pointed) return false;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> ideal;
    for (std::size_t y = 0; y < n; ++y) {
      if (p.leq(y, x)) ideal.push_back(y);
    }
    const std::size_t m = ideal.size();
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << m); ++pick) {
      std::vector<std::size_t> bounds;
      for (std::size_t u : ideal) {
        bool above = true;
        for (std::size_t i = 0; i < m; ++i) {
          if ((pick >> i) & 1U) above = above && p.leq(ideal[i], u);
        }
        if (above) bounds.push_back(u);
      }
      bool has_least = false;
      for (std::size_t u : bounds) {
        bool least = true;
        for (std::size_t v : bounds) least = least && p.leq(u, v);
        has_least = has_least || least;
      }
      if (!has_least) return false;
    }
  }
  return true;
}

namespace {

using Relation = std::vector<std::vector<bool>>;

std::vector<char> canonical(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> best;
  do {
    std::vector<char> code;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) code.push_back(r[perm[i]][perm[j]] ? 1 : 0);
    }
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FinitePoset> posets_up_to_iso(std::size_t n) {
  if (n > 6) throw SizeLimit("poset enumeration is limited to 6 elements");
  // Every finite poset has a linear extension, so it is isomorphic to one
  // whose strict pairs i < j all have i before j.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::set<std::vector<char>> seen;
  std::vector<FinitePoset> out;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << slots.size()); ++pick) {
    Relation r(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if ((pick >> s) & 1U) r[slots[s].first][slots[s].second] = true;
    }
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a) {
      for (std::size_t b = 0; b < n && transitive; ++b) {
        for (std::size_t c = 0; c < n && transitive; ++c) transitive = !(r[a][b] && r[b][c]) || r[a][c];
      }
    }
    if (!transitive || !seen.insert(canonical(r)).second) continue;
    out.emplace_back(ids, r);
  }
  return out;
}

std::vector<AtomSet> worlds(const FreeCalculus& calc) {
  const std::size_t n = calc.atoms().size();
  if (n > 20) throw SizeLimit("too many atoms for world enumeration");
  std::vector<AtomSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool consistent = true;
    for (AtomSet a : calc.axioms()) consistent = consistent && !a.subset_of(AtomSet(bits));
    if (consistent) out.push_back(AtomSet(bits));
  }
  return out;
}

bool holds(const Formula& f, AtomSet world, const Calculus& calc) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Atom:
      return world.contains(calc.atom_index(f.name()));
    case Formula::Kind::Conj:
      return holds(f.lhs(), world, calc) && holds(f.rhs(), world, calc);
    case Formula::Kind::Disj:
      for (const Formula& part : f.children()) {
        if (holds(part, world, calc)) return true;
      }
      return false;
  }
  return false;
}

bool world_entails(const FreeCalculus& calc, std::span<const AtomSet> worlds, std::span<const Formula> gamma, const Formula& phi) {
  for (AtomSet w : worlds) {
    bool all = true;
    for (const Formula& g : gamma) all = all && holds(g, w, calc);
    if (all && !holds(phi, w, calc)) return false;
  }
  return true;
}

Formula random_formula(std::mt19937_64& rng, const Calculus& calc, std::size_t max_size) {
  const auto& atoms = calc.atoms();
  std::uniform_int_distribution<int> leaf_kind(0, 9);
  if (max_size < 3 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    const int k = leaf_kind(rng);
    if (atoms.empty() || k == 0) return Formula::top();
    if (k == 1) return Formula::bottom();
    return Formula::atom(atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)]);
  }
  const std::size_t budget = max_size - 1;
  const std::size_t left = std::uniform_int_distribution<std::size_t>(1, budget - 1)(rng);
  Formula a = random_formula(rng, calc, left);
  Formula b = random_formula(rng, calc, budget - left);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    try {
      return mk_disj({a, b}, calc);
    } catch (const DisjointnessViolation&) {
    }
  }
  return Formula::conj(a, b);
}

}  // namespace ldl::oracle
