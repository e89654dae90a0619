#include <random>

#include "doctest.h"
#include "noether/error.hpp"
#include "noether/parse.hpp"
#include "test_util.hpp"

using namespace noether;
using namespace noether::testing;

TEST_CASE("parse and format") {
  std::vector<std::string> vars{"x", "y", "z1"};
  PolyRing ring(Field::rationals(), 3);
  auto p = parse_polynomial("(x + y)^2 - 2*x*y + 3*z1 - 1/2", vars, ring);
  CHECK(format_polynomial(p, vars) == "x^2 + y^2 + 3*z1 - 1/2");
  CHECK(format_polynomial(ring.zero(), vars) == "0");
  CHECK(format_polynomial(parse_polynomial("-x", vars, ring), vars) == "-x");
  CHECK(format_polynomial(parse_polynomial("  7 ", vars, ring), vars) == "7");
}

TEST_CASE("parse diagnostics") {
  std::vector<std::string> vars{"x", "y"};
  PolyRing ring(Field::rationals(), 2);
  try {
    parse_polynomial("x + w", vars, ring);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string what = e.what();
    CHECK(what.find("unknown variable 'w'") != std::string::npos);
    CHECK(what.find("column 5") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_polynomial("", vars, ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x y", vars, ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x + 1", vars, ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x/2", vars, ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x^-1", vars, ring), ParseError);
}

TEST_CASE("prime field coefficients reduce") {
  std::vector<std::string> vars{"x"};
  PolyRing ring(Field::prime(5), 1);
  auto p = parse_polynomial("x - 1 + 7*x^2", vars, ring);
  CHECK(format_polynomial(p, vars) == "2*x^2 + x + 4");
  CHECK(parse_polynomial("5*x", vars, ring).is_zero());
  CHECK_THROWS_AS(parse_polynomial("1/5", vars, ring), DomainError);
  CHECK_THROWS_AS(Field::prime(9), DomainError);
}

TEST_CASE("monomial orders") {
  auto dr = MonomialOrder::degrevlex();
  auto lx = MonomialOrder::lex();
  auto bl = MonomialOrder::block(1);
  // x*z vs y^2 in three variables
  Exponents xz{1, 0, 1}, y2{0, 2, 0}, x{1, 0, 0}, y3{0, 3, 0};
  CHECK(dr.compare(y2, xz) > 0);
  CHECK(lx.compare(xz, y2) > 0);
  CHECK(dr.compare(y3, x) > 0);
  CHECK(bl.compare(x, y3) > 0);
}

TEST_CASE("format output reparses to the same polynomial") {
  std::mt19937 rng(7);
  std::vector<std::string> vars{"x", "y", "z"};
  for (const Field& f : {Field::rationals(), Field::prime(7)}) {
    PolyRing ring(f, 3);
    for (int i = 0; i < 200; ++i) {
      auto p = ring.scale(random_poly(rng, ring, 4, 5), f.from_rational(mpq_class(2, 3)));
      CHECK(parse_polynomial(format_polynomial(p, vars), vars, ring) == p);
    }
  }
}

TEST_CASE("univariate gcd and division") {
  std::vector<std::string> vars{"x"};
  PolyRing ring(Field::rationals(), 1);
  auto a = parse_polynomial("x^4 - 1", vars, ring);
  auto b = parse_polynomial("x^3 - x^2 + x - 1", vars, ring);
  CHECK(format_polynomial(ring.gcd_univariate(a, b), vars) == "x^3 - x^2 + x - 1");
  Polynomial q;
  REQUIRE(ring.divide_exact(a, parse_polynomial("x - 1", vars, ring), q));
  CHECK(format_polynomial(q, vars) == "x^3 + x^2 + x + 1");
  CHECK_FALSE(ring.divide_exact(a, parse_polynomial("x - 2", vars, ring), q));
}
