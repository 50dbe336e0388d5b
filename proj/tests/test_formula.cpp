#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ldl/error.hpp"
#include "ldl/formula.hpp"

using namespace ldl;
using test::free_calc;

namespace {

const char* kPQ = "atom p\natom q\naxiom p q\n";
const char* kPQR = "atom p\natom q\natom r\naxiom p q\naxiom q r\n";

// Random formula over the atoms of `calc`; disjunctions are attempted and
// dropped when the parts are not disjoint.
Formula random_formula(std::mt19937& rng, const Calculus& calc, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 4);
  const int k = pick(rng);
  const auto& atoms = calc.atoms();
  switch (k) {
    case 0:
      return std::uniform_int_distribution<int>(0, 1)(rng) ? Formula::top() : Formula::bottom();
    case 1:
    case 2:
      if (atoms.empty()) return Formula::top();
      return Formula::atom(atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)]);
    case 3:
      return Formula::conj(random_formula(rng, calc, depth - 1), random_formula(rng, calc, depth - 1));
    default: {
      std::vector<Formula> parts{random_formula(rng, calc, depth - 1), random_formula(rng, calc, depth - 1)};
      try {
        return mk_disj(parts, calc);
      } catch (const DisjointnessViolation&) {
        return parts[0];
      }
    }
  }
}

}  // namespace

TEST_CASE("parse constants and atoms") {
  auto calc = free_calc("atom p\n");
  CHECK(parse_formula("T", calc).is_top());
  CHECK(parse_formula("F", calc).is_bottom());
  const Formula f = parse_formula("F & p", calc);
  REQUIRE(f.is_conj());
  CHECK(f.lhs().is_bottom());
  CHECK(f.rhs() == Formula::atom("p"));
  CHECK(classify(f, calc) == Classification::Contradiction);
}

TEST_CASE("parse disjunction certifies disjointness") {
  auto disjoint = free_calc(kPQ);
  const Formula f = parse_formula("p | q", disjoint);
  REQUIRE(f.is_disj());
  CHECK(f.children().size() == 2);
  auto free = free_calc("atom p\natom q\n");
  CHECK_THROWS_AS(parse_formula("p | q", free), DisjointnessViolation);
}

TEST_CASE("parse errors") {
  auto calc = free_calc(kPQ);
  CHECK_THROWS_AS(parse_formula("p &", calc), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(p", calc), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p q", calc), SyntaxError);
  CHECK_THROWS_AS(parse_formula("r", calc), UnknownAtom);
  try {
    parse_formula("p & $", calc);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("n-ary and nested disjunctions") {
  auto calc = free_calc("atom a\natom b\natom c\naxiom a b\naxiom a c\naxiom b c\n");
  const Formula flat = parse_formula("a | b | c", calc);
  CHECK(flat.children().size() == 3);
  const Formula nested = parse_formula("(a | b) | c", calc);
  CHECK(nested.children().size() == 2);
  CHECK(nested.children()[0].is_disj());
  CHECK(print_formula(nested) == "(a | b) | c");
  CHECK_FALSE(flat == nested);
  CHECK(calc.equivalent(flat, nested));
}

TEST_CASE("printing") {
  auto calc = free_calc(kPQR);
  CHECK(print_formula(Formula::top()) == "T");
  CHECK(print_formula(Formula::conj(Formula::atom("p"), Formula::atom("q"))) == "p & q");
  CHECK(print_formula(parse_formula("p | q", calc)) == "p | q");
  CHECK(print_formula(parse_formula("(p | q) & r", calc)) == "(p | q) & r");
  CHECK(print_formula(parse_formula("p & (q & r)", calc)) == "p & (q & r)");
  CHECK(print_formula(parse_formula("p & q & r", calc)) == "p & q & r");
  CHECK(print_sequent(parse_sequent("q, p |- F", calc)) == "p, q |- F");
  CHECK(print_sequent(parse_sequent("|- T", calc)) == "|- T");
}

TEST_CASE("sequent antecedent is a set") {
  auto calc = free_calc(kPQ);
  const Sequent a = parse_sequent("p, q, p |- F", calc);
  const Sequent b = parse_sequent("q, p |- F", calc);
  CHECK(a == b);
  CHECK(a.antecedent().size() == 2);
}

TEST_CASE("mk_disj") {
  auto calc = free_calc(kPQ);
  const Formula p = Formula::atom("p");
  CHECK(mk_disj({p}, calc) == p);
  CHECK(mk_disj({p, Formula::atom("q")}, calc).is_disj());
  CHECK_THROWS_AS(mk_disj({}, calc), PreconditionViolated);
  const Formula td = mk_disj({Formula::top(), Formula::conj(Formula::bottom(), p)}, calc);
  CHECK(classify(td, calc) == Classification::Tautology);
  try {
    mk_disj({p, Formula::atom("q"), p}, calc);
    FAIL("expected DisjointnessViolation");
  } catch (const DisjointnessViolation& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 2);
  }
}

TEST_CASE("flatten") {
  auto calc = free_calc(kPQR);
  CHECK(flatten(parse_formula("F & p", calc), calc).kind == FlatForm::Kind::ContradictionEquivalent);
  CHECK(flatten(parse_formula("T", calc), calc).kind == FlatForm::Kind::TautologyEquivalent);
  const FlatForm p = flatten(parse_formula("p", calc), calc);
  REQUIRE(p.kind == FlatForm::Kind::Flat);
  CHECK(p.disjuncts == std::vector<ConjunctionClass>{{AtomSet::single(0)}});
  const FlatForm f = flatten(parse_formula("(p | q) & r", calc), calc);
  REQUIRE(f.kind == FlatForm::Kind::Flat);
  CHECK(f.disjuncts == std::vector<ConjunctionClass>{{AtomSet::single(0) | AtomSet::single(2)}});
  CHECK(print_flat(f, calc) == "p & r");
}

TEST_CASE("classify") {
  auto calc = free_calc("atom p\natom q\n");
  CHECK(classify(Formula::bottom(), calc) == Classification::Contradiction);
  CHECK(classify(parse_formula("p & q", calc), calc) == Classification::Satisfiable);
  CHECK(to_string(Classification::Tautology) == "tautology");
}

TEST_CASE("conjunction classes ignore order and repetition") {
  auto calc = free_calc("atom p\natom q\n");
  const auto a = flatten(parse_formula("p & q & p", calc), calc);
  const auto b = flatten(parse_formula("q & p", calc), calc);
  CHECK(a == b);
}

TEST_CASE("basis files") {
  const DisjunctiveBasis b = parse_basis("# demo\natom q p\naxiom q p\n\naxiom p q # again\n");
  CHECK(b.atoms == std::vector<std::string>{"p", "q"});
  REQUIRE(b.axioms.size() == 1);
  CHECK(b.axioms[0] == std::vector<std::string>{"p", "q"});
  CHECK(parse_basis(print_basis(b)).axioms == b.axioms);
  CHECK_THROWS_AS(parse_basis("atom p\naxiom\n"), InputError);
  CHECK_THROWS_AS(parse_basis("atom p\naxiom q\n"), InputError);
  CHECK_THROWS_AS(parse_basis("atom 1p\n"), InputError);
  CHECK_THROWS_AS(parse_basis("atom T\n"), InputError);
  CHECK_THROWS_AS(parse_basis("atoms p\n"), InputError);
}

TEST_CASE("property: parse/print round trip and flatten soundness") {
  std::mt19937 rng(7);
  for (const char* basis : {kPQ, kPQR, "atom p\natom q\n", "atom a\natom b\natom c\naxiom a\naxiom b c\n"}) {
    auto calc = free_calc(basis);
    for (int i = 0; i < 500; ++i) {
      const Formula f = random_formula(rng, calc, 4);
      CHECK(parse_formula(print_formula(f), calc) == f);
      const FlatForm flat = flatten(f, calc);
      const Classification c = classify(f, calc);
      CHECK((flat.kind == FlatForm::Kind::TautologyEquivalent) == (c == Classification::Tautology));
      CHECK((flat.kind == FlatForm::Kind::ContradictionEquivalent) == (c == Classification::Contradiction));
      const Formula g = flat_formula(flat, calc);
      CHECK(calc.entails({f}, g));
      CHECK(calc.entails({g}, f));
      for (std::size_t x = 0; x < flat.disjuncts.size(); ++x) {
        CHECK_FALSE(calc.is_contradictory(flat.disjuncts[x].atoms));
        for (std::size_t y = x + 1; y < flat.disjuncts.size(); ++y) {
          CHECK(calc.is_contradictory(flat.disjuncts[x].atoms | flat.disjuncts[y].atoms));
        }
      }
    }
  }
}
