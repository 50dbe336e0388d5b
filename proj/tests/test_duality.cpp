#include <doctest.h>

#include "helpers.hpp"
#include "ldl/duality.hpp"
#include "ldl/error.hpp"

using namespace ldl;
using test::poset;

namespace {

std::size_t idx(const FinitePoset& p, const char* id) { return *p.index_of(id); }

std::size_t state(const SemanticCalculus& sc, const char* point) {
  return *sc.states()->index_of(state_of_point(sc, idx(sc.domain(), point)));
}

}  // namespace

TEST_CASE("calculus_of_domain examples") {
  auto one = calculus_of_domain(poset(test::kOnePoint));
  CHECK(one->backend()->atoms().empty());
  CHECK(one->decomposable().size() == 2);

  auto chain = calculus_of_domain(poset(test::kChain2));
  CHECK(chain->backend()->atoms() == std::vector<std::string>{"up_a"});
  CHECK(chain->backend()->axioms().empty());
  CHECK(full_axioms(*chain).empty());

  auto flat = calculus_of_domain(poset(test::kFlat3));
  const SemanticBackend& fb = *flat->backend();
  REQUIRE(fb.axioms().size() == 1);
  CHECK(fb.axioms()[0] == (AtomSet::single(fb.atom_index("up_a")) | AtomSet::single(fb.atom_index("up_b"))));

  CHECK_THROWS_AS(calculus_of_domain(poset("elem bot\nelem a\nelem b\nelem c\nelem d\nelem e\n"
                                           "cover bot a\ncover bot b\ncover a c\ncover a d\ncover b c\ncover b d\n"
                                           "cover c e\ncover d e\n")),
                  NotAnLDomain);
}

TEST_CASE("minimal axioms decide the same sequents as the full axiom set") {
  for (const char* text : {test::kMPoset, test::kFlat3, test::kDiamond}) {
    auto sc = calculus_of_domain(poset(text));
    const SemanticBackend& calc = *sc->backend();
    const auto full = full_axioms(*sc);
    CHECK(full.size() >= calc.axioms().size());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << calc.atoms().size()); ++bits) {
      const AtomSet mu(bits);
      bool minimal = false;
      for (AtomSet a : calc.axioms()) minimal = minimal || a.subset_of(mu);
      const bool in_full = std::find(full.begin(), full.end(), mu) != full.end();
      CHECK(calc.is_contradictory(mu) == minimal);
      CHECK(minimal == in_full);
    }
    // The free calculi over both axiom sets agree as well.
    std::vector<std::vector<std::string>> minimal_names;
    std::vector<std::vector<std::string>> full_names;
    for (AtomSet a : calc.axioms()) {
      minimal_names.emplace_back();
      for (std::size_t i : a.indices()) minimal_names.back().push_back(calc.atoms()[i]);
    }
    for (AtomSet a : full) {
      full_names.emplace_back();
      for (std::size_t i : a.indices()) full_names.back().push_back(calc.atoms()[i]);
    }
    FreeCalculus small(DisjunctiveBasis::make(calc.atoms(), minimal_names));
    FreeCalculus big(DisjunctiveBasis::make(calc.atoms(), full_names));
    FormulaUniverse u(std::make_shared<FreeCalculus>(DisjunctiveBasis::make(calc.atoms(), minimal_names)), 3);
    for (const Formula& a : u.formulas()) {
      for (const Formula& b : u.formulas()) CHECK(small.entails({a}, b) == big.entails({a}, b));
    }
  }
}

TEST_CASE("formula_of_decomposable examples") {
  auto m = calculus_of_domain(poset(test::kMPoset));
  CHECK(formula_of_decomposable(*m, DecomposableSet{DecomposableSet::Kind::Empty, 0, 0}).is_bottom());
  CHECK(formula_of_decomposable(*m, DecomposableSet{DecomposableSet::Kind::Whole, 0, m->domain().all()}).is_top());
  const FinitePoset& d = m->domain();
  const ElementSet cd = element_bit(idx(d, "c")) | element_bit(idx(d, "d"));
  const auto u = as_decomposable(d, cd);
  REQUIRE(u);
  const Formula f = formula_of_decomposable(*m, *u);
  CHECK(print_formula(f) == "up_c | up_d");
  CHECK(m->hat(f) == cd);
  for (const DecomposableSet& s : m->decomposable()) CHECK(m->hat(formula_of_decomposable(*m, s)) == s.members);
}

TEST_CASE("hat evaluation") {
  auto m = calculus_of_domain(poset(test::kMPoset));
  const FinitePoset& d = m->domain();
  const SemanticBackend& calc = *m->backend();
  CHECK(m->hat(parse_formula("up_a & up_b", calc)) == (element_bit(idx(d, "c")) | element_bit(idx(d, "d"))));
  CHECK(m->hat(Formula::top()) == d.all());
  CHECK(m->hat(parse_formula("up_c & up_d", calc)) == 0);
  CHECK_THROWS_AS(m->hat(Formula::atom("up_bot")), UnknownAtom);
  CHECK_THROWS_AS(m->hat(Formula::atom("p")), UnknownAtom);
  for (const char* text : {test::kMPoset, test::kDiamond, test::kFlat3, test::kChain2, test::kOnePoint}) {
    auto sc = calculus_of_domain(poset(text));
    FormulaUniverse u(sc->backend(), 4);
    CHECK(hat_image_check(*sc, u).ok);
    CHECK(two_route_check(*sc, u).ok);
  }
}

TEST_CASE("state_of_point examples") {
  auto chain = calculus_of_domain(poset(test::kChain2));
  CHECK(state_of_point(*chain, idx(chain->domain(), "bot")).is_tau());
  const LogicalState a = state_of_point(*chain, idx(chain->domain(), "a"));
  CHECK(a.label() == "<up_a>");
  for (const DecomposableSet& u : chain->decomposable()) {
    CHECK(a.contains(formula_of_decomposable(*chain, u)) == ((u.members >> idx(chain->domain(), "a")) & 1U));
  }
  auto m = calculus_of_domain(poset(test::kMPoset));
  const LogicalState c = state_of_point(*m, idx(m->domain(), "c"));
  CHECK(c.label() == "<up_c>");
  CHECK(c.contains(parse_formula("up_a & up_b", *m->backend())));
  CHECK_FALSE(c.contains(Formula::atom("up_d")));
}

TEST_CASE("representation isomorphism") {
  const IsoCertificate one = check_representation_iso(poset(test::kOnePoint));
  CHECK(one.verdict.ok);
  CHECK(one.lines == std::vector<std::string>{"bot -> <T>"});
  const IsoCertificate m = check_representation_iso(poset(test::kMPoset));
  CHECK(m.verdict.ok);
  CHECK(m.bijection.size() == 5);
  CHECK(check_representation_iso(poset(test::kDiamond)).verdict.ok);
  CHECK(check_representation_iso(poset(test::kFlat3)).verdict.ok);
}

TEST_CASE("consequence relation examples") {
  auto d = calculus_of_domain(poset(test::kDiamond));
  FormulaUniverse u(d->backend(), 4);
  const auto id = identity_relation(d->states());
  CHECK(is_consequence_relation(id, u, u).ok);
  const ConsequenceRelation bottom{d->states(), d->states(), std::vector<std::size_t>(d->states()->size(), 0)};
  CHECK(is_consequence_relation(bottom, u, u).ok);
  // up_top entails up_a, yet the row of up_a is not contained in that of up_top.
  ConsequenceRelation bad = id;
  bad.table[state(*d, "top")] = 0;
  const Verdict v = is_consequence_relation(bad, u, u);
  CHECK_FALSE(v.ok);
  CHECK(v.diagnostic.find("(R1)") != std::string::npos);
  CHECK(v.diagnostic.find("<up_top> entails <up_a>") != std::string::npos);

  ConsequenceRelation out_of_range = id;
  out_of_range.table[1] = 99;
  CHECK_FALSE(is_consequence_relation(out_of_range, u, u).ok);
}

TEST_CASE("valid tables are exactly the monotone ones") {
  auto flat = calculus_of_domain(poset(test::kFlat3));
  auto chain = calculus_of_domain(poset(test::kChain2));
  FormulaUniverse fu(flat->backend(), 4);
  FormulaUniverse cu(chain->backend(), 4);
  RelationChecker checker(flat->states(), chain->states(), fu, cu);
  std::size_t valid = 0;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t c = 0; c < 2; ++c) {
        const MonotoneMap t{a, b, c};
        const ConsequenceRelation theta{flat->states(), chain->states(), t};
        const bool ok = checker.check(theta).ok;
        CHECK(ok == is_monotone(flat->states()->poset, chain->states()->poset, t));
        valid += ok;
      }
    }
  }
  CHECK(valid == 5);
}

TEST_CASE("apply_theta examples") {
  auto d = calculus_of_domain(poset(test::kDiamond));
  const auto space = d->states();
  const auto id = identity_relation(space);
  const ConsequenceRelation bottom{space, space, std::vector<std::size_t>(space->size(), 0)};
  FormulaUniverse u(d->backend(), 4);
  for (std::size_t s = 0; s < space->size(); ++s) {
    CHECK(apply_theta(id, s) == s);
    CHECK(apply_theta(bottom, s) == 0);
    // Θ[{μ}] and Θ[{μ}[⊢]] agree on the universe.
    const Formula mu[] = {space->states[s].generator_formula()};
    std::vector<Formula> closure;
    for (const Formula& f : u.formulas()) {
      if (space->states[s].contains(f)) closure.push_back(f);
    }
    const auto single = apply_theta(id, mu);
    const auto closed = apply_theta(id, closure);
    for (const Formula& f : u.formulas()) CHECK(single(f) == closed(f));
  }
  const ConsequenceRelation bad{space, space, {0, 1, 2, 0}};
  CHECK_THROWS_AS(f_of_theta(bad), NotDirected);
  // A table violating (R1) is not recovered from its own state map.
  const ConsequenceRelation lossy{space, space, {0, 1, 0, 0}};
  CHECK(f_of_theta(lossy) == MonotoneMap{0, 1, 0, 1});
}

TEST_CASE("theta and f are inverse") {
  auto a = calculus_of_domain(poset(test::kDiamond));
  auto b = calculus_of_domain(poset(test::kFlat3));
  const auto maps = monotone_maps(a->states()->poset, b->states()->poset);
  for (const MonotoneMap& f : maps) {
    const auto theta = theta_of_f(a->states(), b->states(), f);
    CHECK(f_of_theta(theta) == f);
    CHECK(theta_of_f(a->states(), b->states(), f_of_theta(theta)) == theta);
  }
  const auto id = theta_of_f(a->states(), a->states(), MonotoneMap{0, 1, 2, 3});
  CHECK(id == identity_relation(a->states()));
  CHECK_THROWS_AS(theta_of_f(a->states(), a->states(), MonotoneMap{0, 1, 2, 0}), NotMonotone);
}

TEST_CASE("composition and units") {
  auto a = calculus_of_domain(poset(test::kChain2));
  auto b = calculus_of_domain(poset(test::kDiamond));
  auto c = calculus_of_domain(poset(test::kFlat3));
  const auto ab = monotone_maps(a->states()->poset, b->states()->poset);
  const auto bc = monotone_maps(b->states()->poset, c->states()->poset);
  for (const MonotoneMap& f : ab) {
    const auto t1 = theta_of_f(a->states(), b->states(), f);
    CHECK(compose(identity_relation(b->states()), t1) == t1);
    CHECK(compose(t1, identity_relation(a->states())) == t1);
    for (const MonotoneMap& g : bc) {
      const auto t2 = theta_of_f(b->states(), c->states(), g);
      const auto both = compose(t2, t1);
      const MonotoneMap fg = f_of_theta(both);
      for (std::size_t s = 0; s < fg.size(); ++s) CHECK(fg[s] == g[f[s]]);
    }
  }
  CHECK(f_of_theta(identity_relation(b->states())) == MonotoneMap{0, 1, 2, 3});
  CHECK_THROWS_AS(compose(identity_relation(a->states()), identity_relation(b->states())), CompositionMismatch);
}

TEST_CASE("Scott maps and consequence relations") {
  auto one = calculus_of_domain(poset(test::kOnePoint));
  const auto unit = scott_to_consequence(*one, *one, MonotoneMap{0});
  CHECK(unit == identity_relation(one->states()));

  auto diamond = calculus_of_domain(poset(test::kDiamond));
  auto chain = calculus_of_domain(poset(test::kChain2));
  const std::size_t cbot = idx(chain->domain(), "bot");
  const auto constant = scott_to_consequence(*diamond, *chain, MonotoneMap(4, cbot));
  for (std::size_t r : constant.table) CHECK(r == 0);

  MonotoneMap embed(2);
  embed[idx(chain->domain(), "bot")] = idx(diamond->domain(), "bot");
  embed[idx(chain->domain(), "a")] = idx(diamond->domain(), "top");
  const auto omega = scott_to_consequence(*chain, *diamond, embed);
  CHECK(omega.table[state(*chain, "a")] == state(*diamond, "top"));
  CHECK(omega.relates(state(*chain, "a"), Formula::atom("up_top")));
  CHECK(consequence_to_scott(*chain, *diamond, omega) == embed);

  MonotoneMap reversed(2);
  reversed[idx(chain->domain(), "bot")] = idx(diamond->domain(), "top");
  reversed[idx(chain->domain(), "a")] = idx(diamond->domain(), "bot");
  CHECK_THROWS_AS(scott_to_consequence(*chain, *diamond, reversed), NotMonotone);

  // Round trips over every monotone map and every valid relation.
  auto m = calculus_of_domain(poset(test::kMPoset));
  FormulaUniverse du(diamond->backend(), 4);
  FormulaUniverse mu(m->backend(), 4);
  RelationChecker checker(diamond->states(), m->states(), du, mu);
  for (const MonotoneMap& h : monotone_maps(diamond->domain(), m->domain())) {
    const auto rel = scott_to_consequence(*diamond, *m, h);
    CHECK(checker.check(rel).ok);
    CHECK(consequence_to_scott(*diamond, *m, rel) == h);
  }
  for (const MonotoneMap& f : monotone_maps(diamond->states()->poset, m->states()->poset)) {
    const auto rel = theta_of_f(diamond->states(), m->states(), f);
    CHECK(scott_to_consequence(*diamond, *m, consequence_to_scott(*diamond, *m, rel)) == rel);
  }
}
