#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ldl/states.hpp"
#include "ldl/verify/oracles.hpp"
#include "ldl/verify/suite.hpp"

using namespace ldl;

TEST_CASE("poset enumeration counts") {
  const std::size_t expected[] = {1, 1, 2, 5, 16, 63};
  for (std::size_t n = 0; n <= 5; ++n) CHECK(oracle::posets_up_to_iso(n).size() == expected[n]);
}

TEST_CASE("literal L-domain oracle agrees with is_l_domain") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const FinitePoset& p : oracle::posets_up_to_iso(n)) CHECK(oracle::literal_l_domain(p) == is_l_domain(p).ok);
  }
  CHECK(oracle::literal_l_domain(test::poset(test::kDiamond)));
  CHECK(oracle::literal_l_domain(test::poset(test::kMPoset)));
  // Capping the M-poset breaks the lattice condition inside ↓top.
  CHECK_FALSE(oracle::literal_l_domain(
      test::poset(std::string(test::kMPoset) + "elem top\ncover c top\ncover d top\n")));
}

TEST_CASE("world semantics agrees with entails") {
  for (const char* text : {"atom p q\n", "atom p q\naxiom p q\n", "atom a b c\naxiom a b\naxiom b c\n", "atom a b c\naxiom a b c\n"}) {
    auto calc = std::make_shared<FreeCalculus>(parse_basis(text));
    const auto ws = oracle::worlds(*calc);
    FormulaUniverse u(calc, 4);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    for (int i = 0; i < 2000; ++i) {
      const Formula gamma[] = {u.formula(pick(rng)), u.formula(pick(rng))};
      const Formula phi = u.formula(pick(rng));
      CHECK(oracle::world_entails(*calc, ws, gamma, phi) == calc->entails(gamma, phi));
    }
  }
}

TEST_CASE("random formulas are well formed and bounded") {
  const FreeCalculus calc = test::free_calc("atom p q r\naxiom p q\n");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Formula f = oracle::random_formula(rng, calc, 12);
    CHECK(f.size() <= 12);
    CHECK(parse_formula(print_formula(f), calc) == f);
  }
}

TEST_CASE("budget specifications") {
  verify::SuiteConfig c;
  verify::apply_budget(c, "500");
  CHECK(c.max_states == 500);
  CHECK(c.max_maps == 500);
  verify::apply_budget(c, "maps=7,universe=9");
  CHECK(c.max_maps == 7);
  CHECK(c.max_universe == 9);
  CHECK(c.max_states == 500);
  CHECK_THROWS(verify::apply_budget(c, "speed=3"));
  CHECK_THROWS(verify::apply_budget(c, "0"));
}

TEST_CASE("suite exit codes") {
  std::vector<verify::CriterionResult> rs(2);
  CHECK(verify::suite_exit_code(rs) == 0);
  rs[1].status = verify::Status::Budget;
  CHECK(verify::suite_exit_code(rs) == 3);
  rs[0].status = verify::Status::Fail;
  CHECK(verify::suite_exit_code(rs) == 1);
}
