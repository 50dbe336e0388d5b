#include <doctest.h>

#include "helpers.hpp"
#include "ldl/error.hpp"
#include "ldl/states.hpp"

using namespace ldl;

namespace {

std::shared_ptr<const Calculus> free_ptr(const char* text) { return std::make_shared<FreeCalculus>(parse_basis(text)); }

const char* kPQ = "atom p\natom q\naxiom p q\n";
const char* kFreePQ = "atom p\natom q\n";

LogicalState gen(const std::shared_ptr<const Calculus>& calc, std::initializer_list<const char*> atoms) {
  AtomSet s;
  for (const char* a : atoms) s = s | AtomSet::single(calc->atom_index(a));
  return LogicalState(calc, ConjunctionClass{s});
}

}  // namespace

TEST_CASE("entail_closure examples") {
  auto calc = free_ptr(kPQ);
  const auto tau = entail_closure(*calc, {});
  FormulaUniverse u(calc, 4);
  for (const Formula& f : u.formulas()) CHECK(tau(f) == (classify(f, *calc) == Classification::Tautology));
  const Formula bottom[] = {Formula::bottom()};
  const auto all = entail_closure(*calc, bottom);
  for (const Formula& f : u.formulas()) CHECK(all(f));
  const Formula p[] = {Formula::atom("p")};
  const auto cp = entail_closure(*calc, p);
  CHECK(cp(Formula::atom("p")));
  CHECK(cp(Formula::top()));
  CHECK(cp(parse_formula("p | q", *calc)));
  CHECK_FALSE(cp(Formula::atom("q")));
}

TEST_CASE("state poset examples") {
  auto flat = state_poset(free_ptr(kPQ));
  CHECK(flat->size() == 3);
  CHECK(flat->poset.ids() == std::vector<std::string>{"<T>", "<p>", "<q>"});
  CHECK(flat->poset.covers().size() == 2);
  CHECK(is_l_domain(flat->poset).ok);

  auto diamond = state_poset(free_ptr(kFreePQ));
  CHECK(diamond->size() == 4);
  CHECK(diamond->poset.ids().back() == "<p & q>");
  CHECK(diamond->poset.leq(1, 3));
  CHECK(diamond->poset.leq(2, 3));
  CHECK_FALSE(diamond->poset.leq(1, 2));

  auto empty = state_poset(free_ptr(""));
  CHECK(empty->size() == 1);
  CHECK_THROWS_AS(state_poset(free_ptr(kFreePQ), 3), SizeLimit);
}

TEST_CASE("state poset of a semantic calculus merges equivalent generators") {
  auto calc = std::make_shared<SemanticBackend>(test::poset(test::kDiamond));
  auto space = state_poset(calc);
  CHECK(space->size() == 4);
  // up_a & up_b and up_top denote the same state; the smaller generator wins.
  CHECK(space->poset.ids() == std::vector<std::string>{"<T>", "<up_a>", "<up_b>", "<up_top>"});
}

TEST_CASE("formula universe") {
  auto calc = free_ptr(kPQ);
  FormulaUniverse u(calc, 3);
  CHECK(u.find(Formula::top()).has_value());
  CHECK(u.find(parse_formula("p | q", *calc)).has_value());
  CHECK(u.find(parse_formula("p & q", *calc)).has_value());
  CHECK_FALSE(u.find(parse_formula("p & q & p", *calc)).has_value());
  CHECK(u.is_flat_disjunction(*u.find(parse_formula("p | q", *calc))));
  CHECK_FALSE(u.is_flat_disjunction(*u.find(parse_formula("p | F", *calc))));
  // Classes: T, F, p, q, p | q.
  CHECK(u.class_count() == 5);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(calc->equivalent(u.formula(i), u.formula(u.representative(u.class_of(i)))));
    CHECK(u.formula(i).size() <= 3);
  }
  CHECK_THROWS_AS(FormulaUniverse(calc, 6, 100), SizeLimit);
}

TEST_CASE("is_logical_state examples") {
  auto calc = free_ptr(kPQ);
  FormulaUniverse u(calc, 5);
  CHECK(is_logical_state(LogicalState::tau(calc), u).ok);
  const auto cont = [&](const Formula& f) { return classify(f, *calc) == Classification::Contradiction; };
  const Verdict v = is_logical_state(cont, u);
  CHECK_FALSE(v.ok);
  CHECK(is_logical_state(gen(calc, {"p"}), u).ok);
  // {p | q}[⊢] satisfies (S2) but not (S1).
  const Formula pq[] = {parse_formula("p | q", *calc)};
  const Verdict s1 = is_logical_state(entail_closure(*calc, pq), u);
  CHECK_FALSE(s1.ok);
  CHECK(s1.diagnostic.find("(S1)") != std::string::npos);

  FormulaUniverse small(calc, 2);
  CHECK(is_logical_state(LogicalState::tau(calc), small).ok);
  CHECK_THROWS_AS(is_logical_state(gen(calc, {"p"}), small), UniverseTooSmall);
  auto free = free_ptr(kFreePQ);
  CHECK(is_logical_state(gen(free, {"p", "q"}), FormulaUniverse(free, 2)).ok);
}

TEST_CASE("bracket_closure examples") {
  auto calc = free_ptr(kFreePQ);
  auto space = state_poset(calc);
  const std::size_t pq = *space->index_of(gen(calc, {"p", "q"}));
  CHECK(bracket_closure(*space, {}, pq) == 0);
  const Formula p[] = {Formula::atom("p")};
  CHECK(space->states[bracket_closure(*space, p, pq)].label() == "<p>");
  const Formula g[] = {space->states[pq].generator_formula()};
  CHECK(bracket_closure(*space, g, pq) == pq);
  const std::size_t only_p = *space->index_of(gen(calc, {"p"}));
  const Formula q[] = {Formula::atom("q")};
  CHECK_THROWS_AS(bracket_closure(*space, q, only_p), PreconditionViolated);
}

TEST_CASE("directed_union_check examples") {
  auto calc = free_ptr(kFreePQ);
  auto space = state_poset(calc);
  FormulaUniverse u(calc, 5);
  const std::size_t tau[] = {0};
  CHECK(directed_union_check(*space, tau, u).ok);
  const std::size_t chain[] = {0, *space->index_of(gen(calc, {"p"})), *space->index_of(gen(calc, {"p", "q"}))};
  const Verdict v = directed_union_check(*space, chain, u);
  CHECK(v.ok);
  CHECK(v.diagnostic == "union is <p & q>");

  auto disjoint = free_ptr(kPQ);
  auto dspace = state_poset(disjoint);
  FormulaUniverse du(disjoint, 4);
  const std::size_t apart[] = {1, 2};
  CHECK_THROWS_AS(directed_union_check(*dspace, apart, du), NotDirected);
  CHECK_THROWS_AS(directed_union_check(*dspace, {}, du), NotDirected);
}

TEST_CASE("every state decomposes into its generators") {
  for (const char* basis : {kPQ, kFreePQ, "atom a\natom b\natom c\naxiom a b c\n"}) {
    auto calc = free_ptr(basis);
    auto space = state_poset(calc);
    FormulaUniverse u(calc, 4);
    for (std::size_t s = 0; s < space->size(); ++s) CHECK(decomposition_check(*space, s, u).ok);
  }
}
