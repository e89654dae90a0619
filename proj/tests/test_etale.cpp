#include "doctest.h"
#include "noether/error.hpp"
#include "noether/etale.hpp"
#include "oracles/univariate_oracle.hpp"
#include "test_util.hpp"

using namespace noether;

namespace {

std::vector<std::string> inverted_text(const TowerLevel& l) {
  std::vector<std::string> out;
  for (const auto& g : l.ring->inverted()) out.push_back(l.ring->format(g));
  return out;
}

bool check_named(const std::vector<InvariantCheck>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return c.ok;
  FAIL("no check named " << name);
  return false;
}

Polynomial xe(const PolyRing& r, long e, long c) {
  return r.sub(r.monomial(Exponents{std::int32_t(e)}, Coeff(1)), r.constant(r.field().from_int(c)));
}

}  // namespace

TEST_CASE("tower rings") {
  CHECK(inverted_text(tower_ring(0, Field::rationals())) == std::vector<std::string>{"x"});
  CHECK(inverted_text(tower_ring(1, Field::rationals())) == std::vector<std::string>{"x", "x^2 - 2"});
  CHECK(inverted_text(tower_ring(2, Field::prime(5))) ==
        std::vector<std::string>{"x", "x^2 + 3", "x^4 + 3"});
  CHECK(deleted_exponents(3, ExponentRule::power) == std::vector<long>{2, 4, 8});
  CHECK(deleted_exponents(3, ExponentRule::literal) == std::vector<long>{2, 4, 6});
  CHECK(deleted_exponents(0, ExponentRule::literal).empty());
  CHECK_THROWS_AS(tower_ring(1, Field::prime(2)), DomainError);
  CHECK_THROWS_AS(tower_ring(-1, Field::rationals()), DomainError);
  CHECK(parse_exponent_rule("literal") == ExponentRule::literal);
  CHECK_THROWS_AS(parse_exponent_rule("linear"), ParseError);
}

TEST_CASE("verify_cover_map") {
  auto q = Field::rationals();
  auto rep = verify_cover_map(tower_ring(0, q), tower_ring(1, q));
  CHECK(rep.ok());
  CHECK(rep.checks.size() == 3);
  CHECK_THROWS_AS(verify_cover_map(tower_ring(0, q), tower_ring(2, q)), DomainError);
  CHECK_THROWS_AS(verify_cover_map(tower_ring(0, q), tower_ring(1, Field::prime(5))), DomainError);
}

TEST_CASE("pullback_strictness and properness examples") {
  auto q = Field::rationals();
  auto one = pullback_strictness(tower_ring(1, q));
  CHECK(one.ok());
  CHECK(check_named(one.checks, "strict"));
  CHECK(pullback_strictness(tower_ring(3, Field::prime(5))).ok());
  CHECK_THROWS_AS(pullback_strictness(tower_ring(0, q)), DomainError);

  CHECK(properness_and_maximality(tower_ring(1, q)).ok());
  CHECK(properness_and_maximality(tower_ring(4, Field::prime(5))).ok());
  for (int n = 0; n <= 6; ++n) CHECK(check_named(properness_and_maximality(tower_ring(n, q)).checks, "proper"));
}

TEST_CASE("run_tower_suite") {
  for (auto f : {Field::rationals(), Field::prime(5), Field::prime(7)}) {
    CAPTURE(f.to_string());
    auto rep = run_tower_suite(3, f);
    CHECK(rep.passed());
    CHECK(rep.strict_inclusions == 3);
    CHECK(rep.chain.size() == 4);
    CHECK(rep.cover_maps.size() == 3);
    CHECK(rep.strictness.size() == 3);
    CHECK(rep.properness.size() == 4);
  }
  auto q = run_tower_suite(3, Field::rationals());
  CHECK(q.chain == std::vector<std::string>{"(x^8 - 1)", "(x^4 - 1)", "(x^2 - 1)", "(x - 1)"});

  auto empty = run_tower_suite(0, Field::rationals());
  CHECK(empty.passed());
  CHECK(empty.strict_inclusions == 0);
  CHECK_THROWS_AS(run_tower_suite(9, Field::rationals()), ResourceError);
  CHECK_THROWS_AS(run_tower_suite(1, Field::prime(2)), DomainError);
}

TEST_CASE("over F3 the deleted points absorb the chain") {
  // 2 = -1, so x^(2^k) + 1 = x^(2^k) - 2 is inverted and (x^4 - 1) = (x^2 - 1).
  auto f3 = Field::prime(3);
  auto rep = run_tower_suite(3, f3);
  CHECK_FALSE(rep.passed());
  REQUIRE(rep.failed_level);
  CHECK(*rep.failed_level == 3);
  CHECK(rep.cover_maps.size() == 3);
  for (const auto& s : rep.strictness) CHECK(s.ok());
  auto level = tower_ring(3, f3);
  const auto& r = level.ring->poly();
  CHECK(oracle::local_generator(r, {xe(r, 4, 1)}, level.ring->inverted_product()) ==
        r.monic(xe(r, 2, 1)));
}

TEST_CASE("literal exponent rule breaks well-definedness at level 3") {
  for (auto f : {Field::rationals(), Field::prime(5)}) {
    CAPTURE(f.to_string());
    auto rep = run_tower_suite(6, f, ExponentRule::literal);
    CHECK_FALSE(rep.passed());
    REQUIRE(rep.failed_level);
    CHECK(*rep.failed_level == 3);
    CHECK(rep.failure.rfind("well_defined", 0) == 0);

    // Oracle: x^8 - 2 shares no factor with the level-3 inverted product.
    auto level = tower_ring(3, f, ExponentRule::literal);
    const auto& r = level.ring->poly();
    CHECK_FALSE(oracle::unit_in_localization(r, xe(r, 8, 2), level.ring->inverted_product()));
    // Levels up to 2 coincide with the power rule.
    CHECK(verify_cover_map(tower_ring(1, f, ExponentRule::literal),
                           tower_ring(2, f, ExponentRule::literal))
              .ok());
  }
}

TEST_CASE("tower facts agree with the gcd oracle") {
  for (auto f : {Field::rationals(), Field::prime(5)}) {
    for (int n = 1; n <= 6; ++n) {
      CAPTURE(f.to_string());
      CAPTURE(n);
      auto prev = tower_ring(n - 1, f);
      auto level = tower_ring(n, f);
      const auto& r = level.ring->poly();
      Polynomial inv = level.ring->inverted_product();
      for (const auto& g : prev.ring->inverted())
        CHECK(oracle::unit_in_localization(r, pull_back(r, g, 1), inv));
      CHECK(oracle::unit_in_localization(r, r.scale(r.variable(0), Coeff(2)), inv));

      std::vector<Polynomial> pulled;
      for (int m = 0; m < n; ++m) pulled.push_back(xe(r, 1L << (n - m), 1));
      Polynomial x2 = xe(r, 2, 1), x1 = xe(r, 1, 1), xp1 = r.add(r.variable(0), r.one());
      CHECK(oracle::local_generator(r, pulled, inv) == r.monic(x2));
      CHECK_FALSE(oracle::local_member(r, xp1, pulled, inv));
      CHECK(oracle::local_member(r, r.mul(x1, xp1), pulled, inv));
      CHECK_FALSE(oracle::unit_in_localization(r, xp1, inv));
      CHECK_FALSE(oracle::unit_in_localization(r, x1, inv));

      // Divisibility chain: (x^(2^k) - 1) ⊆ (x^(2^j) - 1) for k >= j.
      for (int j = 0; j <= n; ++j)
        for (int k = j; k <= n; ++k) {
          IdealHandle big(level.ring, {xe(r, 1L << j, 1)}), small(level.ring, {xe(r, 1L << k, 1)});
          CHECK(ideal_contains(big, small));
          CHECK(ideal_equal(big, small) == (j == k));
        }
    }
  }
}

TEST_CASE("pullback functoriality") {
  PolyRing r(Field::rationals(), 1);
  Polynomial p = xe(r, 3, 7);
  for (int k = 0; k <= 5; ++k) {
    Polynomial once = r.substitute(p, std::vector<Polynomial>{r.monomial({std::int32_t(1) << k}, Coeff(1))}, r);
    CHECK(pull_back(r, p, k) == once);
  }
}
