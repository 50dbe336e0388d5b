#include <doctest.h>

#include "helpers.hpp"
#include "ldl/error.hpp"

using namespace ldl;
using test::free_calc;

namespace {

const char* kPQ = "atom p\natom q\naxiom p q\n";

Derivation leaf(Rule r, Sequent s) { return Derivation{r, std::move(s), {}, std::nullopt, std::nullopt}; }

}  // namespace

TEST_CASE("free entailment examples") {
  auto calc = free_calc(kPQ);
  const Formula p = Formula::atom("p");
  const Formula q = Formula::atom("q");
  CHECK(calc.entails({p}, p));
  CHECK(calc.entails({p, q}, Formula::bottom()));
  const Formula pq = parse_formula("p | q", calc);
  CHECK_FALSE(calc.entails({}, pq));
  CHECK(calc.entails({p}, pq));
  CHECK(calc.entails({Formula::bottom()}, q));
  CHECK_FALSE(calc.entails({p}, q));
  CHECK(calc.entails(parse_sequent("T |- T", calc)));
  CHECK_THROWS_AS(calc.entails({Formula::atom("r")}, p), UnknownAtom);
}

TEST_CASE("free irreducibility and witnesses") {
  auto calc = free_calc(kPQ);
  CHECK(calc.is_irreducible(ConjunctionClass{AtomSet::single(0)}));
  CHECK_THROWS_AS(calc.is_irreducible(ConjunctionClass{AtomSet(3)}), NotAConjunction);
  const FlatForm w = calc.expressive_witness(parse_formula("p | q", calc));
  CHECK(print_flat(w, calc) == "p | q");
  auto single = free_calc("atom p\n");
  CHECK(print_flat(single.expressive_witness(Formula::atom("p")), single) == "p");
  CHECK_THROWS_AS(calc.expressive_witness(Formula::top()), PreconditionViolated);
  CHECK(calc.irreducible_conjunctions().size() == 2);
}

TEST_CASE("free irreducibility holds against every flat formula over three atoms") {
  for (const char* basis : {"atom a\natom b\natom c\n", "atom a\natom b\natom c\naxiom a b\n", "atom a\natom b\natom c\naxiom a b\naxiom b c\naxiom a c\n"}) {
    auto calc = free_calc(basis);
    const auto classes = calc.conjunction_classes();
    // Every set of pairwise contradictory classes is a flat formula.
    const std::size_t n = classes.size();
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << n); ++pick) {
      std::vector<AtomSet> flat;
      bool disjoint = true;
      for (std::size_t i = 0; i < n && disjoint; ++i) {
        if (!((pick >> i) & 1U)) continue;
        for (AtomSet prev : flat) disjoint = disjoint && calc.is_contradictory(prev | classes[i].atoms);
        flat.push_back(classes[i].atoms);
      }
      if (!disjoint) continue;
      for (const ConjunctionClass& mu : classes) {
        const AtomSet one[] = {mu.atoms};
        if (!calc.covers(one, flat)) continue;
        bool some = false;
        for (AtomSet nu : flat) some = some || calc.conj_entails(mu.atoms, nu);
        CHECK(some);
      }
    }
  }
}

TEST_CASE("semantic backend on the M-poset") {
  SemanticBackend calc(test::poset(test::kMPoset));
  CHECK(calc.atoms() == std::vector<std::string>{"up_a", "up_b", "up_c", "up_d"});
  const Formula ab = parse_formula("up_a & up_b", calc);
  CHECK(classify(ab, calc) == Classification::Satisfiable);
  const auto idx = [&](const char* n) { return AtomSet::single(calc.atom_index(n)); };
  CHECK_FALSE(calc.is_irreducible(ConjunctionClass{idx("up_a") | idx("up_b")}));
  const FlatForm w = calc.expressive_witness(ab);
  CHECK(print_flat(w, calc) == "up_c | up_d");
  const Formula cd = flat_formula(w, calc);
  CHECK(calc.entails({ab}, cd));
  CHECK(calc.entails({cd}, ab));
  CHECK(calc.entails({Formula::atom("up_c"), Formula::atom("up_d")}, Formula::bottom()));
  // Minimal axioms: only the pair {up_c, up_d}.
  REQUIRE(calc.axioms().size() == 1);
  CHECK(calc.axioms()[0] == (idx("up_c") | idx("up_d")));
}

TEST_CASE("semantic backend on the diamond and small domains") {
  SemanticBackend diamond(test::poset(test::kDiamond));
  const auto a = AtomSet::single(diamond.atom_index("up_a"));
  const auto b = AtomSet::single(diamond.atom_index("up_b"));
  CHECK(diamond.is_irreducible(ConjunctionClass{a | b}));
  CHECK(diamond.entails({parse_formula("up_a & up_b", diamond)}, Formula::atom("up_top")));

  SemanticBackend one(test::poset(test::kOnePoint));
  CHECK(one.atoms().empty());
  CHECK(one.axioms().empty());

  SemanticBackend chain(test::poset(test::kChain2));
  CHECK(chain.atoms() == std::vector<std::string>{"up_a"});
  CHECK(chain.axioms().empty());

  SemanticBackend flat(test::poset(test::kFlat3));
  REQUIRE(flat.axioms().size() == 1);
  CHECK(flat.axioms()[0].size() == 2);

  CHECK_THROWS_AS(SemanticBackend(test::poset("elem bot\nelem a\nelem b\nelem c\nelem d\nelem e\n"
                                               "cover bot a\ncover bot b\ncover a c\ncover a d\ncover b c\ncover b d\n"
                                               "cover c e\ncover d e\n")),
                  NotAnLDomain);
}

TEST_CASE("rule and name tables") {
  for (Rule r : {Rule::Ax, Rule::Id, Rule::Lwk, Rule::Cut, Rule::LF, Rule::RT, Rule::LConj, Rule::RConj, Rule::LDisj, Rule::RDisj}) {
    CHECK(parse_rule_name(rule_name(r)) == r);
  }
  CHECK_FALSE(parse_rule_name("Weaken").has_value());
}

TEST_CASE("check_derivation examples") {
  auto calc = free_calc(kPQ);
  CHECK(check_derivation(calc, leaf(Rule::RT, parse_sequent("|- T", calc))).ok);
  const Verdict bad = check_derivation(calc, leaf(Rule::Id, parse_sequent("p |- q", calc)));
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostic.find("Id requires identical formula") != std::string::npos);

  // Cut(|- T, T |- T) from RT and Id.
  Derivation cut{Rule::Cut, parse_sequent("|- T", calc), {leaf(Rule::RT, parse_sequent("|- T", calc)), leaf(Rule::Id, parse_sequent("T |- T", calc))}, std::nullopt, std::nullopt};
  CHECK(check_derivation(calc, cut).ok);

  CHECK(check_derivation(calc, leaf(Rule::Ax, parse_sequent("p, q |- F", calc))).ok);
  CHECK_FALSE(check_derivation(calc, leaf(Rule::Ax, parse_sequent("p |- F", calc))).ok);

  Derivation rdisj{Rule::RDisj, parse_sequent("p |- p | q", calc), {leaf(Rule::Id, parse_sequent("p |- p", calc))}, std::nullopt, 0};
  CHECK(check_derivation(calc, rdisj).ok);
  rdisj.side_index = 1;
  CHECK_FALSE(check_derivation(calc, rdisj).ok);
}

TEST_CASE("check_derivation connective rules") {
  auto calc = free_calc(kPQ);
  Derivation lconj{Rule::LConj, parse_sequent("p & q |- F", calc), {leaf(Rule::Ax, parse_sequent("p, q |- F", calc))}, std::nullopt, std::nullopt};
  CHECK(check_derivation(calc, lconj).ok);
  Derivation rconj{Rule::RConj, parse_sequent("p, q |- p & q", calc),
                   {leaf(Rule::Id, parse_sequent("p |- p", calc)), leaf(Rule::Id, parse_sequent("q |- q", calc))}, std::nullopt, std::nullopt};
  CHECK(check_derivation(calc, rconj).ok);
  // LDisj over p | q |- q | p.
  Derivation left{Rule::RDisj, parse_sequent("p |- q | p", calc), {leaf(Rule::Id, parse_sequent("p |- p", calc))}, std::nullopt, 1};
  Derivation right{Rule::RDisj, parse_sequent("q |- q | p", calc), {leaf(Rule::Id, parse_sequent("q |- q", calc))}, std::nullopt, 0};
  Derivation ldisj{Rule::LDisj, parse_sequent("p | q |- q | p", calc), {left, right}, std::nullopt, std::nullopt};
  CHECK(check_derivation(calc, ldisj).ok);
  std::swap(ldisj.premises[0], ldisj.premises[1]);
  CHECK_FALSE(check_derivation(calc, ldisj).ok);

  Derivation lwk{Rule::Lwk, parse_sequent("p, q |- p", calc), {leaf(Rule::Id, parse_sequent("p |- p", calc))}, Formula::atom("q"), std::nullopt};
  CHECK(check_derivation(calc, lwk).ok);
  lwk.side_formula = Formula::atom("p");
  CHECK_FALSE(check_derivation(calc, lwk).ok);
  Derivation lf = leaf(Rule::LF, parse_sequent("F |- p & q", calc));
  CHECK(check_derivation(calc, lf).ok);
  Derivation wrong_arity{Rule::RT, parse_sequent("|- T", calc), {leaf(Rule::RT, parse_sequent("|- T", calc))}, std::nullopt, std::nullopt};
  CHECK_FALSE(check_derivation(calc, wrong_arity).ok);
}

TEST_CASE("search_derivation examples") {
  auto calc = free_calc(kPQ);
  auto rt = search_derivation(calc, parse_sequent("|- T", calc), {1});
  REQUIRE(rt);
  CHECK(rt->rule == Rule::RT);
  auto ax = search_derivation(calc, parse_sequent("p, q |- F", calc), {1});
  REQUIRE(ax);
  CHECK(ax->rule == Rule::Ax);
  auto rd = search_derivation(calc, parse_sequent("p |- p | q", calc), {3});
  REQUIRE(rd);
  CHECK(rd->rule == Rule::RDisj);
  CHECK(node_count(*rd) == 2);
  CHECK(check_derivation(calc, *rd).ok);
  CHECK_FALSE(search_derivation(calc, parse_sequent("|- p", calc)));
  CHECK_FALSE(search_derivation(calc, parse_sequent("|- p | q", calc)));
  CHECK_THROWS_AS(search_derivation(calc, parse_sequent("|- T", calc), {0}), PreconditionViolated);
  CHECK_THROWS_AS(search_derivation(calc, parse_sequent("p & q, p | q |- (p | q) & p", calc), {8, 2}), BudgetExceeded);
}

TEST_CASE("search uses cuts on F") {
  auto calc = free_calc("atom p\natom q\naxiom p\n");
  auto d = search_derivation(calc, parse_sequent("p |- q", calc));
  REQUIRE(d);
  CHECK(d->rule == Rule::Cut);
  CHECK(check_derivation(calc, *d).ok);
  CHECK(calc.entails(d->conclusion));
}

TEST_CASE("derivation text round trip") {
  auto calc = free_calc(kPQ);
  auto d = search_derivation(calc, parse_sequent("p & q |- p | q", calc));
  REQUIRE(d);
  const std::string text = print_derivation(*d);
  const Derivation back = parse_derivation(text, calc);
  CHECK(print_derivation(back) == text);
  CHECK(check_derivation(calc, back).ok);
  const Derivation commented = parse_derivation("# a comment\n(RDisj #0 p |- p | q # trailing\n  (Id p |- p))\n", calc);
  CHECK(commented.side_index == 0u);
  CHECK(check_derivation(calc, commented).ok);
  CHECK_THROWS_AS(parse_derivation("(Bogus |- T)", calc), SyntaxError);
  CHECK_THROWS_AS(parse_derivation("(RT |- T", calc), SyntaxError);
  CHECK_THROWS_AS(parse_derivation("(Id [(p] p |- p)", calc), SyntaxError);
}
