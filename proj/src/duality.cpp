#include "ldl/duality.hpp"

#include <algorithm>

#include "ldl/error.hpp"

namespace ldl {

// ---------------------------------------------------------------------------
// Calculus of a domain

SemanticCalculus::SemanticCalculus(FinitePoset domain, std::size_t max_states)
    : backend_(std::make_shared<SemanticBackend>(std::move(domain))),
      states_(state_poset(backend_, max_states)),
      decomposable_(decomposable_sets(backend_->domain())) {}

ElementSet SemanticCalculus::hat(const Formula& f) const {
  const FinitePoset& d = domain();
  switch (f.kind()) {
    case Formula::Kind::Top:
      return d.all();
    case Formula::Kind::Bottom:
      return 0;
    case Formula::Kind::Atom: {
      const std::string& name = f.name();
      const auto x = name.rfind("up_", 0) == 0 ? d.index_of(std::string_view(name).substr(3)) : std::nullopt;
      if (!x || *x == *d.bottom()) throw UnknownAtom(name);
      return d.up(*x);
    }
    case Formula::Kind::Conj:
      return hat(f.lhs()) & hat(f.rhs());
    case Formula::Kind::Disj: {
      ElementSet acc = 0;
      std::vector<ElementSet> parts;
      for (const Formula& part : f.children()) {
        const ElementSet h = hat(part);
        for (std::size_t j = 0; j < parts.size(); ++j) {
          if (parts[j] & h) {
            throw DisjointnessViolation("parts " + std::to_string(j) + " and " + std::to_string(parts.size()) + " of '" +
                                            print_formula(f) + "' overlap in the domain",
                                        j, parts.size());
          }
        }
        parts.push_back(h);
        acc |= h;
      }
      return acc;
    }
  }
  return 0;
}

DecomposableSet SemanticCalculus::hat_set(const Formula& f) const {
  const ElementSet members = hat(f);
  auto u = as_decomposable(domain(), members);
  if (!u) throw PreconditionViolated("denotation of '" + print_formula(f) + "' is not decomposable");
  return *u;
}

bool SemanticCalculus::hat_entails(std::span<const Formula> gamma, const Formula& phi) const {
  ElementSet meet = domain().all();
  for (const Formula& g : gamma) meet &= hat(g);
  return (meet & ~hat(phi)) == 0;
}

std::shared_ptr<const SemanticCalculus> calculus_of_domain(const FinitePoset& d) { return std::make_shared<SemanticCalculus>(d); }

std::vector<AtomSet> full_axioms(const SemanticCalculus& sc) {
  const SemanticBackend& calc = *sc.backend();
  const std::size_t n = calc.atoms().size();
  if (n > 20) throw SizeLimit("too many atoms to enumerate every axiom (" + std::to_string(n) + ")");
  std::vector<AtomSet> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    ElementSet xs = 0;
    for (std::size_t a : AtomSet(bits).indices()) xs |= element_bit(calc.element_of_atom(a));
    if (sc.domain().upper_bounds(xs) == 0) out.push_back(AtomSet(bits));
  }
  return out;
}

Formula formula_of_decomposable(const SemanticCalculus& sc, const DecomposableSet& u) {
  switch (u.kind) {
    case DecomposableSet::Kind::Empty:
      return Formula::bottom();
    case DecomposableSet::Kind::Whole:
      return Formula::top();
    case DecomposableSet::Kind::Generated:
      break;
  }
  std::vector<Formula> parts;
  for (std::size_t a : elements_of(u.generators)) parts.push_back(Formula::atom(SemanticBackend::atom_name(sc.domain(), a)));
  return mk_disj(std::move(parts), *sc.backend());
}

Formula formula_of_point(const SemanticCalculus& sc, std::size_t x) {
  if (x == *sc.domain().bottom()) return Formula::top();
  return Formula::atom(SemanticBackend::atom_name(sc.domain(), x));
}

LogicalState state_of_point(const SemanticCalculus& sc, std::size_t x) {
  const auto atom = sc.backend()->atom_of_element(x);
  if (!atom) return LogicalState::tau(sc.backend());
  return LogicalState(sc.backend(), ConjunctionClass{AtomSet::single(*atom)});
}

IsoCertificate check_representation_iso(const FinitePoset& d, std::size_t max_states) {
  const SemanticCalculus sc(d, max_states);
  const StateSpace& space = *sc.states();
  IsoCertificate cert;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const LogicalState s = state_of_point(sc, x);
    const auto i = space.index_of(s);
    if (!i) {
      cert.verdict = Verdict::fail("state of " + d.id(x) + " is not among the enumerated states");
      return cert;
    }
    cert.bijection.push_back(*i);
    cert.lines.push_back(d.id(x) + " -> " + space.states[*i].label());
  }
  if (!order_iso(d, space.poset, cert.bijection)) {
    cert.verdict = Verdict::fail("x -> state_of_point(x) is not an order isomorphism (" + std::to_string(d.size()) + " points, " +
                                 std::to_string(space.size()) + " states)");
    return cert;
  }
  const SemanticBackend& calc = *sc.backend();
  for (std::size_t x = 0; x < d.size(); ++x) {
    const LogicalState& s = space.states[cert.bijection[x]];
    ElementSet gens = element_bit(*d.bottom());
    for (std::size_t a = 0; a < calc.atoms().size(); ++a) {
      if (s.contains(Formula::atom(calc.atoms()[a]))) gens |= element_bit(calc.element_of_atom(a));
    }
    const auto sup = d.supremum(gens);
    if (!sup || *sup != x) {
      cert.verdict = Verdict::fail("sup of the generators of " + s.label() + " does not recover " + d.id(x));
      return cert;
    }
    for (const DecomposableSet& u : sc.decomposable()) {
      if (s.contains(formula_of_decomposable(sc, u)) != ((u.members >> x) & 1U)) {
        cert.verdict = Verdict::fail(s.label() + " and the neighbourhoods of " + d.id(x) + " disagree on " + describe(d, u));
        return cert;
      }
    }
  }
  cert.verdict = Verdict::pass(std::to_string(d.size()) + " points <-> " + std::to_string(space.size()) + " states");
  return cert;
}

Verdict hat_image_check(const SemanticCalculus& sc, const FormulaUniverse& universe) {
  const auto& sets = sc.decomposable();
  for (const Formula& f : universe.formulas()) {
    const DecomposableSet u = sc.hat_set(f);
    if (std::find(sets.begin(), sets.end(), u) == sets.end()) {
      return Verdict::fail("denotation of '" + print_formula(f) + "' is missing from U(D)");
    }
  }
  for (const DecomposableSet& u : sets) {
    if (sc.hat(formula_of_decomposable(sc, u)) != u.members) {
      return Verdict::fail(describe(sc.domain(), u) + " is not the denotation of its formula");
    }
  }
  return Verdict::pass(std::to_string(universe.size()) + " formulas onto " + std::to_string(sets.size()) + " decomposable sets");
}

Verdict two_route_check(const SemanticCalculus& sc, const FormulaUniverse& universe) {
  const SemanticBackend& calc = *sc.backend();
  const std::size_t n = universe.size();
  std::vector<ElementSet> hats(n);
  for (std::size_t i = 0; i < n; ++i) hats[i] = sc.hat(universe.formula(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool semantic = (hats[i] & ~hats[j]) == 0;
      if (calc.covers(universe.products(i), universe.products(j)) != semantic) {
        return Verdict::fail("routes disagree on '" + print_formula(universe.formula(i)) + " |- " + print_formula(universe.formula(j)) + "'");
      }
    }
  }
  // Two-formula antecedents over class representatives.
  const std::size_t classes = universe.class_count();
  for (std::size_t a = 0; a < classes; ++a) {
    for (std::size_t b = a; b < classes; ++b) {
      const std::size_t ia = universe.representative(a);
      const std::size_t ib = universe.representative(b);
      const Formula gamma[] = {universe.formula(ia), universe.formula(ib)};
      for (std::size_t c = 0; c < classes; ++c) {
        const std::size_t ic = universe.representative(c);
        const bool semantic = (hats[ia] & hats[ib] & ~hats[ic]) == 0;
        if (calc.entails(gamma, universe.formula(ic)) != semantic) {
          return Verdict::fail("routes disagree on '" + print_formula(gamma[0]) + ", " + print_formula(gamma[1]) + " |- " +
                               print_formula(universe.formula(ic)) + "'");
        }
      }
    }
  }
  return Verdict::pass(std::to_string(n * n) + " single-antecedent sequents, " + std::to_string(classes) + " classes");
}

// ---------------------------------------------------------------------------
// Consequence relations

bool ConsequenceRelation::relates(std::size_t mu, const Formula& psi) const { return target->states[table.at(mu)].contains(psi); }

namespace {

void require_expressive(const FormulaUniverse& universe) {
  const Calculus& calc = universe.calculus();
  for (std::size_t c = 0; c < universe.class_count(); ++c) {
    const Formula& f = universe.formula(universe.representative(c));
    if (classify(f, calc) == Classification::Satisfiable) calc.expressive_witness(f);
  }
}

std::string label(const StateSpace& space, std::size_t i) { return space.states[i].label(); }

}  // namespace

RelationChecker::RelationChecker(std::shared_ptr<const StateSpace> source, std::shared_ptr<const StateSpace> target,
                                 const FormulaUniverse& source_universe, const FormulaUniverse& target_universe)
    : source_(std::move(source)), target_(std::move(target)), target_universe_(&target_universe) {
  if (&source_universe.calculus() != source_->calc.get() || &target_universe.calculus() != target_->calc.get()) {
    throw PreconditionViolated("formula universes do not belong to the related calculi");
  }
  require_expressive(source_universe);
  require_expressive(target_universe);

  const Calculus& scalc = *source_->calc;
  const Calculus& tcalc = *target_->calc;
  const FormulaUniverse& u = target_universe;
  const std::size_t classes = u.class_count();
  const std::size_t ts = target_->size();
  const std::size_t ss = source_->size();
  for (std::size_t c = 0; c < classes; ++c) reps_.push_back(u.representative(c));

  member_.assign(ts, std::vector<char>(classes));
  generator_member_.assign(ts, std::vector<char>(ts));
  for (std::size_t t = 0; t < ts; ++t) {
    for (std::size_t c = 0; c < classes; ++c) member_[t][c] = target_->states[t].contains_products(u.products(reps_[c]));
    for (std::size_t v = 0; v < ts; ++v) generator_member_[t][v] = target_->states[t].contains(target_->states[v].generator_formula());
  }
  class_entails_.assign(classes, std::vector<char>(classes));
  for (std::size_t a = 0; a < classes; ++a) {
    const Formula lhs[] = {u.formula(reps_[a])};
    for (std::size_t b = 0; b < classes; ++b) class_entails_[a][b] = tcalc.entails(lhs, u.formula(reps_[b]));
  }
  source_entails_.assign(ss, std::vector<char>(ss));
  for (std::size_t m = 0; m < ss; ++m) {
    const Formula lhs[] = {source_->states[m].generator_formula()};
    for (std::size_t n = 0; n < ss; ++n) source_entails_[m][n] = scalc.entails(lhs, source_->states[n].generator_formula());
  }

  // (R2), (R3) and conditions (3), (4) depend only on the row Θ[{μ}].
  rows_.resize(ts);
  for (std::size_t t = 0; t < ts; ++t) {
    RowFacts& row = rows_[t];
    for (std::size_t a = 0; a < classes && row.r2.empty(); ++a) {
      if (!member_[t][a]) continue;
      for (std::size_t b = 0; b < classes; ++b) {
        if (class_entails_[a][b] && !member_[t][b]) {
          row.r2 = "'" + print_formula(u.formula(reps_[a])) + "' is related but its consequence '" + print_formula(u.formula(reps_[b])) + "' is not";
          break;
        }
      }
    }
    for (std::size_t c = 0; c < classes; ++c) {
      bool via_irreducible = false;
      for (std::size_t v = 0; v < ts && !via_irreducible; ++v) via_irreducible = generator_member_[t][v] && member_[v][c];
      if (member_[t][c] != via_irreducible) {
        row.r3 = "'" + print_formula(u.formula(reps_[c])) + (member_[t][c] ? "' is related but entailed by no related irreducible conjunction"
                                                                            : "' is entailed by a related irreducible conjunction but not related");
        break;
      }
      bool via_formula = false;
      for (std::size_t b = 0; b < classes && !via_formula; ++b) via_formula = member_[t][b] && class_entails_[b][c];
      if (member_[t][c] != via_formula) {
        row.r3 = "conditions (1) and (3) disagree on '" + print_formula(u.formula(reps_[c])) + "'";
        break;
      }
    }
  }
}

Verdict RelationChecker::check(const ConsequenceRelation& theta) const {
  if (theta.source != source_ || theta.target != target_) return Verdict::fail("relation is between other calculi");
  const std::size_t ss = source_->size();
  const std::size_t ts = target_->size();
  if (theta.table.size() != ss) return Verdict::fail("table has " + std::to_string(theta.table.size()) + " rows, expected " + std::to_string(ss));
  for (std::size_t m = 0; m < ss; ++m) {
    if (theta.table[m] >= ts) return Verdict::fail("row " + std::to_string(m) + " names no target state");
  }
  const FormulaUniverse& u = *target_universe_;
  const std::size_t classes = reps_.size();
  for (std::size_t m = 0; m < ss; ++m) {
    for (std::size_t n = 0; n < ss; ++n) {
      if (!source_entails_[m][n]) continue;
      for (std::size_t c = 0; c < classes; ++c) {
        if (member_[theta.table[n]][c] && !member_[theta.table[m]][c]) {
          return Verdict::fail("(R1) fails: " + label(*source_, m) + " entails " + label(*source_, n) + " and ('" +
                               print_formula(u.formula(reps_[c])) + "') is related to the latter only");
        }
      }
    }
  }
  for (std::size_t m = 0; m < ss; ++m) {
    const RowFacts& row = rows_[theta.table[m]];
    if (!row.r2.empty()) return Verdict::fail("(R2) fails at " + label(*source_, m) + ": " + row.r2);
    if (!row.r3.empty()) return Verdict::fail("(R3) fails at " + label(*source_, m) + ": " + row.r3);
  }
  // Condition (2): some ν with μ ⊢ ν and (ν, ψ) ∈ Θ.
  for (std::size_t m = 0; m < ss; ++m) {
    for (std::size_t c = 0; c < classes; ++c) {
      bool via_source = false;
      for (std::size_t n = 0; n < ss && !via_source; ++n) via_source = source_entails_[m][n] && member_[theta.table[n]][c];
      if (via_source != static_cast<bool>(member_[theta.table[m]][c])) {
        return Verdict::fail("conditions (1) and (2) disagree at " + label(*source_, m) + " on '" + print_formula(u.formula(reps_[c])) + "'");
      }
    }
  }
  return Verdict::pass("(R1)-(R3) hold over " + std::to_string(u.size()) + " target formulas");
}

Verdict is_consequence_relation(const ConsequenceRelation& theta, const FormulaUniverse& source_universe,
                                const FormulaUniverse& target_universe) {
  return RelationChecker(theta.source, theta.target, source_universe, target_universe).check(theta);
}

namespace {

std::size_t largest(const StateSpace& space, const std::vector<std::size_t>& rows, const std::string& what) {
  for (std::size_t r : rows) {
    bool top = true;
    for (std::size_t other : rows) top = top && space.poset.leq(other, r);
    if (top) return r;
  }
  throw NotDirected(what + " has no largest member");
}

// Atoms of a conjunction of atoms (T being the empty conjunction).
std::optional<AtomSet> conjunction_atoms(const Formula& f, const Calculus& calc) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return AtomSet{};
    case Formula::Kind::Atom:
      return AtomSet::single(calc.atom_index(f.name()));
    case Formula::Kind::Conj: {
      const auto l = conjunction_atoms(f.lhs(), calc);
      const auto r = conjunction_atoms(f.rhs(), calc);
      if (!l || !r) return std::nullopt;
      return *l | *r;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::size_t apply_theta(const ConsequenceRelation& theta, std::size_t s) {
  const StateSpace& src = *theta.source;
  std::vector<std::size_t> rows;
  for (std::size_t m = 0; m < src.size(); ++m) {
    if (src.states[s].contains(src.states[m].generator_formula())) rows.push_back(theta.table.at(m));
  }
  return largest(*theta.target, rows, "image of " + src.states[s].label());
}

std::function<bool(const Formula&)> apply_theta(const ConsequenceRelation& theta, std::span<const Formula> xs) {
  const StateSpace& src = *theta.source;
  const Calculus& calc = *src.calc;
  std::vector<std::size_t> rows;
  for (const Formula& x : xs) {
    const auto atoms = conjunction_atoms(x, calc);
    if (!atoms) continue;
    std::optional<std::size_t> m;
    if (atoms->empty()) {
      m = 0;
    } else {
      const ConjunctionClass mu{*atoms};
      if (calc.is_contradictory(*atoms) || !calc.is_irreducible(mu)) continue;
      m = src.index_of(LogicalState(src.calc, mu));
    }
    if (m) rows.push_back(theta.table.at(*m));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return [target = theta.target, rows = std::move(rows)](const Formula& f) {
    return std::any_of(rows.begin(), rows.end(), [&](std::size_t r) { return target->states[r].contains(f); });
  };
}

MonotoneMap f_of_theta(const ConsequenceRelation& theta) {
  MonotoneMap f;
  for (std::size_t s = 0; s < theta.source->size(); ++s) f.push_back(apply_theta(theta, s));
  if (!is_monotone(theta.source->poset, theta.target->poset, f)) throw NotMonotone("S -> Theta[S] is not monotone");
  return f;
}

ConsequenceRelation theta_of_f(std::shared_ptr<const StateSpace> source, std::shared_ptr<const StateSpace> target, const MonotoneMap& f) {
  if (f.size() != source->size()) throw PreconditionViolated("map has " + std::to_string(f.size()) + " entries, expected " + std::to_string(source->size()));
  for (std::size_t v : f) {
    if (v >= target->size()) throw PreconditionViolated("map value " + std::to_string(v) + " is not a target state");
  }
  if (!is_monotone(source->poset, target->poset, f)) throw NotMonotone("state map is not monotone");
  // Row μ is f(⟨μ⟩), and ⟨μ⟩ is source state μ itself.
  return ConsequenceRelation{std::move(source), std::move(target), f};
}

ConsequenceRelation identity_relation(std::shared_ptr<const StateSpace> space) {
  std::vector<std::size_t> table(space->size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  return ConsequenceRelation{space, space, std::move(table)};
}

ConsequenceRelation compose(const ConsequenceRelation& theta2, const ConsequenceRelation& theta1) {
  if (theta1.target != theta2.source) throw CompositionMismatch("target of the first relation is not the source of the second");
  const StateSpace& middle = *theta1.target;
  ConsequenceRelation out{theta1.source, theta2.target, {}};
  for (std::size_t m = 0; m < theta1.source->size(); ++m) {
    std::vector<std::size_t> rows;
    for (std::size_t v = 0; v < middle.size(); ++v) {
      if (theta1.relates(m, middle.states[v].generator_formula())) rows.push_back(theta2.table.at(v));
    }
    out.table.push_back(largest(*theta2.target, rows, "composite row of " + theta1.source->states[m].label()));
  }
  return out;
}

ConsequenceRelation scott_to_consequence(const SemanticCalculus& d1, const SemanticCalculus& d2, const MonotoneMap& h) {
  const FinitePoset& p = d1.domain();
  const FinitePoset& q = d2.domain();
  if (h.size() != p.size() || std::any_of(h.begin(), h.end(), [&](std::size_t y) { return y >= q.size(); })) {
    throw PreconditionViolated("map does not send the first domain into the second");
  }
  if (!is_monotone(p, q, h)) throw NotMonotone("domain map is not monotone");
  const StateSpace& src = *d1.states();
  ConsequenceRelation out{d1.states(), d2.states(), {}};
  for (std::size_t m = 0; m < src.size(); ++m) {
    ElementSet image = 0;
    for (std::size_t x : elements_of(d1.hat(src.states[m].generator_formula()))) image |= element_bit(h[x]);
    // The point e whose decomposable neighbourhoods are those containing the image.
    std::optional<std::size_t> point;
    for (std::size_t e = 0; e < q.size() && !point; ++e) {
      bool same = true;
      for (const DecomposableSet& u : d2.decomposable()) same = same && (((u.members >> e) & 1U) == ((image & ~u.members) == 0));
      if (same) point = e;
    }
    if (!point) throw PreconditionViolated("no point of the target has the neighbourhoods of h[" + src.states[m].label() + "]");
    const auto row = d2.states()->index_of(state_of_point(d2, *point));
    if (!row) throw PreconditionViolated("state of " + q.id(*point) + " is not enumerated");
    out.table.push_back(*row);
  }
  return out;
}

MonotoneMap consequence_to_scott(const SemanticCalculus& d1, const SemanticCalculus& d2, const ConsequenceRelation& omega) {
  const FinitePoset& p = d1.domain();
  const FinitePoset& q = d2.domain();
  const StateSpace& src = *omega.source;
  std::vector<ElementSet> denotations;
  for (const LogicalState& s : src.states) denotations.push_back(d1.hat(s.generator_formula()));
  MonotoneMap h;
  for (std::size_t x = 0; x < p.size(); ++x) {
    ElementSet ys = 0;
    for (std::size_t m = 0; m < src.size(); ++m) {
      if (!((denotations[m] >> x) & 1U)) continue;
      for (std::size_t y = 0; y < q.size(); ++y) {
        if (omega.relates(m, formula_of_point(d2, y))) ys |= element_bit(y);
      }
    }
    const auto sup = q.supremum(ys);
    if (!sup) throw PreconditionViolated("no supremum for the image of " + p.id(x));
    h.push_back(*sup);
  }
  return h;
}

std::vector<std::string> describe(const ConsequenceRelation& theta) {
  std::vector<std::string> out;
  for (std::size_t m = 0; m < theta.table.size(); ++m) out.push_back(label(*theta.source, m) + " -> " + label(*theta.target, theta.table[m]));
  return out;
}

}  // namespace ldl
