#include <doctest.h>

#include "torusx/text.hpp"

#include <random>

using namespace torusx;

TEST_CASE("parse examples") {
  auto w = parse_poly("x1 + x2 + x3 - 1");
  CHECK(w.num_vars() == 3);
  CHECK(w.size() == 4);
  CHECK(to_string(w) == "x1 + x2 + x3 - 1");

  auto w0 = parse_poly("x1 + 2*x2 + x3 - 1");
  CHECK(w0.terms().at(Exponent{0, 1, 0}) == CycloNumber(2));

  auto m = parse_poly("zeta6*x1^-1");
  CHECK(m.size() == 1);
  CHECK(m.terms().at(Exponent{-1}) == CycloNumber::root_of_unity(6, 1));

  auto g = parse_poly("zeta6^2*x1 - x2^-1");
  CHECK(g.num_vars() == 2);
  CHECK(g.terms().at(Exponent{1, 0}) == CycloNumber::root_of_unity(3, 1));

  CHECK(parse_poly("x1 + x3").num_vars() == 3);
  CHECK(parse_poly("x1 + x3", 5).num_vars() == 5);
  CHECK(parse_poly("-x1 + 3/6").terms().at(Exponent{0}) == CycloNumber(Rational(1, 2)));
  CHECK(parse_poly("x1 - x1").is_zero());
  CHECK(parse_poly(" x1 *\n x2 ").size() == 1);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_poly("x1 +"), ParseError);
  CHECK_THROWS_AS(parse_poly("zeta0*x1"), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0*x1"), ParseError);
  CHECK_THROWS_AS(parse_poly("x0"), ParseError);
  CHECK_THROWS_AS(parse_poly("x1 + x3", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("y1"), ParseError);
  try {
    parse_poly("x1 +\n  ?");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("cyclotomic text") {
  CHECK(to_string(parse_cyclo("1 - zeta6")) == "1 - zeta6");
  CHECK(parse_cyclo("1 - zeta6") == CycloNumber::root_of_unity(6, 5));
  CHECK(to_string(CycloNumber(Rational(-2, 3))) == "-2/3");
  CHECK(to_string(CycloNumber(0)) == "0");
  CHECK_THROWS_AS(parse_cyclo("x1"), ParseError);
}

TEST_CASE("printer and parser round trip") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> e(-3, 3), c(-5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 4;
    LaurentPoly f(n);
    std::size_t terms = rng() % 6;
    for (std::size_t t = 0; t < terms; ++t) {
      Exponent u(n);
      for (auto& x : u) x = e(rng);
      CycloNumber coeff = Rational(c(rng), 1 + rng() % 4);
      if (rng() % 3 == 0) coeff = coeff * CycloNumber::root_of_unity(1 + rng() % 12, e(rng)) + Rational(c(rng));
      f.add_term(u, coeff);
    }
    CHECK(parse_poly(to_string(f), n) == f);
  }
}
