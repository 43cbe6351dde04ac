#include <doctest.h>

#include "torusx/laurent.hpp"
#include "torusx/lp.hpp"
#include "torusx/text.hpp"

#include <cmath>
#include <random>

using namespace torusx;

namespace {

CycloNumber zeta(unsigned long m, long k = 1) { return CycloNumber::root_of_unity(m, k); }

LaurentPoly random_poly(std::mt19937_64& rng, std::size_t n, std::size_t terms, long emin, long emax) {
  std::uniform_int_distribution<long> e(emin, emax), c(-3, 3);
  LaurentPoly f(n);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent u(n);
    for (auto& x : u) x = e(rng);
    long v = c(rng);
    f.add_term(u, CycloNumber(v == 0 ? 1 : v));
  }
  return f;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == IntVector{-1, 1});
  CHECK(cyclotomic_polynomial(6) == IntVector{1, -1, 1});
  CHECK(cyclotomic_polynomial(4) == IntVector{1, 0, 1});
  CHECK(cyclotomic_polynomial(12) == IntVector{1, 0, -1, 0, 1});
  for (unsigned long m = 1; m <= 30; ++m) CHECK(cyclotomic_polynomial(m).size() == euler_phi(m) + 1);
}

TEST_CASE("cyclotomic arithmetic") {
  CHECK(zeta(6) * zeta(6) == zeta(6) - CycloNumber(1));
  auto a = CycloNumber(3) + zeta(4);
  CHECK(a * a.inverse() == CycloNumber(1));
  CHECK(CycloNumber(1) - zeta(6) == zeta(6, 5));
  CHECK(zeta(2) == CycloNumber(-1));
  CHECK(zeta(12, 4) == zeta(3));
  CHECK(zeta(3) * zeta(4) == zeta(12, 7));
  CHECK_THROWS_AS(CycloNumber(0).inverse(), std::domain_error);
  CHECK(zeta(5).pow(-2) == zeta(5, 3));
  CHECK(zeta(6).pow(6) == CycloNumber(1));
}

TEST_CASE("cyclotomic arithmetic embeds consistently") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    auto rnd = [&] {
      unsigned long m = 1 + rng() % 12;
      RatVector v(euler_phi(m));
      for (auto& x : v) x = Rational(c(rng), 1 + rng() % 3), x.canonicalize();
      return CycloNumber::from_coeffs(m, v);
    };
    CycloNumber a = rnd(), b = rnd();
    auto za = a.to_complex(), zb = b.to_complex();
    CHECK(std::abs((a + b).to_complex() - (za + zb)) < 1e-10);
    CHECK(std::abs((a * b).to_complex() - (za * zb)) < 1e-10);
    if (!b.is_zero()) {
      CHECK(std::abs((a / b).to_complex() - (za / zb)) < 1e-9 * (1 + std::abs(za / zb)));
      CHECK(b * b.inverse() == CycloNumber(1));
    }
  }
}

TEST_CASE("initial form examples") {
  auto f = parse_poly("x1 + x2 + x3 - 1");
  RatVector g0{0, 0, 0}, g1{1, 1, 0}, g2{-1, 0, 0};
  CHECK(initial_form(f, g0) == f);
  CHECK(initial_form(f, g1) == parse_poly("x3 - 1"));
  CHECK(initial_form(f, g2) == parse_poly("x1", 3));
  CHECK_THROWS(initial_form(LaurentPoly(3), g0));
}

TEST_CASE("initial form is multiplicative") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> w(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 3;
    auto f = random_poly(rng, n, 1 + rng() % 4, -2, 2);
    auto g = random_poly(rng, n, 1 + rng() % 4, -2, 2);
    RatVector gamma(n);
    for (auto& x : gamma) x = w(rng);
    auto h = f * g;
    if (h.is_zero()) continue;
    CHECK(initial_form(h, gamma) == initial_form(f, gamma) * initial_form(g, gamma));
    RatVector zero(n);
    CHECK(initial_form(f, zero) == f);
    for (const auto& u : initial_form(f, gamma).support()) CHECK(f.terms().count(u) == 1);
  }
}

TEST_CASE("monomial substitution examples") {
  auto f = parse_poly("x1 + x2 + x3 - 1");
  std::vector<CycloNumber> z{Rational(2, 3), Rational(1, 3), 1};
  auto g = substitute_monomial(f, z, IntMatrix::from_rows({{0}, {0}, {1}}));
  CHECK(g == parse_poly("x1"));

  auto f0 = parse_poly("x1 + 2*x2 + x3 - 1");
  std::vector<CycloNumber> z0{zeta(4), 1, 1};
  g = substitute_monomial(f0, z0, IntMatrix::from_rows({{1}, {1}, {0}}));
  CHECK(g == parse_poly("zeta4*x1 + 2*x1"));

  std::vector<CycloNumber> ones(3, CycloNumber(1));
  CHECK(substitute_monomial(f, ones, IntMatrix::identity(3)) == f);

  std::vector<CycloNumber> bad{0, 1, 1};
  CHECK_THROWS(substitute_monomial(f, bad, IntMatrix::identity(3)));
}

TEST_CASE("monomial substitution agrees with evaluation") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> e(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 3, d = 1 + rng() % 2;
    auto f = random_poly(rng, n, 1 + rng() % 5, -2, 2);
    IntMatrix B(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) B(i, k) = e(rng);
    std::vector<CycloNumber> z(n);
    for (auto& c : z) c = (rng() % 3 == 0) ? zeta(1 + rng() % 8, e(rng)) : CycloNumber(Rational(1 + rng() % 5, 1 + rng() % 4));
    auto g = substitute_monomial(f, z, B);
    std::vector<std::complex<double>> t(d);
    for (auto& x : t) x = std::complex<double>(Rational(1 + rng() % 7, 1 + rng() % 5).get_d(), 0);
    std::vector<std::complex<double>> pt(n);
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = z[i].to_complex();
      for (std::size_t k = 0; k < d; ++k) pt[i] *= std::pow(t[k], static_cast<int>(B(i, k).get_si()));
    }
    auto lhs = g.evaluate(std::span<const std::complex<double>>(t));
    auto rhs = f.evaluate(std::span<const std::complex<double>>(pt));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("stabilizer lattice") {
  CHECK(stabilizer_lattice(parse_poly("x1 + 2*x2 + x3 - 1")).rank() == 0);
  auto s = stabilizer_lattice(parse_poly("x1*x2 - 1"));
  CHECK(s.rank() == 1);
  CHECK(s.contains(std::vector<long>{1, -1}));
  CHECK(stabilizer_lattice(parse_poly("x1^2*x2")) == IntLattice::full(2));

  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> e(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 3;
    auto f = random_poly(rng, n, 1 + rng() % 4, -1, 1);
    if (f.is_zero()) continue;
    Exponent shift(n);
    for (auto& x : shift) x = e(rng);
    CHECK(stabilizer_lattice(f.shifted(shift)) == stabilizer_lattice(f));
  }
}

TEST_CASE("newton polytope") {
  auto p = newton_polytope(parse_poly("x1 + x2 + x3 - 1"));
  CHECK(p.vertices.size() == 4);
  CHECK(newton_polytope(parse_poly("3*x1^2*x2")).vertices.size() == 1);
  p = newton_polytope(parse_poly("x1^2 + x1 + 1"));
  CHECK(p.vertices == std::vector<Exponent>{{0}, {2}});
  p = newton_polytope(parse_poly("x1*x2 + x1 + x2 + 1 + x1^2*x2^2"));
  CHECK(p.vertices == std::vector<Exponent>{{0, 0}, {0, 1}, {1, 0}, {2, 2}});
}

TEST_CASE("is_monomial") {
  CHECK(is_monomial(parse_poly("3*x1^2*x2^-1")));
  CHECK_FALSE(is_monomial(parse_poly("x1 - 1")));
  CHECK_FALSE(is_monomial(LaurentPoly(2)));
}

TEST_CASE("linear programs") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.add_le({1, 1}, 4);
  lp.add_le({1, 0}, 3);
  lp.add_le({-1, 0}, 0);
  lp.add_le({0, -1}, 0);
  lp.objective = {1, 2};
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.value == 8);

  lp.add_le({-1, -1}, -5);
  CHECK(solve(lp).status == LpStatus::infeasible);

  LinearProgram un;
  un.num_vars = 1;
  un.add_le({-1}, 0);
  un.objective = {1};
  CHECK(solve(un).status == LpStatus::unbounded);

  LinearProgram eq;
  eq.num_vars = 3;
  eq.add_eq({1, 1, 1}, 1);
  eq.add_eq({2, 2, 2}, 2);
  eq.add_le({0, 0, -1}, Rational(-1, 2));
  eq.objective = {1, 0, 0};
  eq.add_le({-1, 0, 0}, 0);
  eq.add_le({0, -1, 0}, 0);
  s = solve(eq);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.value == Rational(1, 2));
}
