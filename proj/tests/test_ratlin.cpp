#include <doctest.h>

#include "oracles.hpp"
#include "torusx/ratlin.hpp"

#include <algorithm>
#include <random>

using namespace torusx;

namespace {

RatMatrix rat(std::initializer_list<std::initializer_list<long>> rows) { return RatMatrix::from_rows(rows); }
IntMatrix intm(std::initializer_list<std::initializer_list<long>> rows) { return IntMatrix::from_rows(rows); }

bool is_diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (d(i, i) < 0) return false;
    if (d(i, i) == 0) {
      if (d(i + 1, i + 1) != 0) return false;
      continue;
    }
    if (d(i + 1, i + 1) % d(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(RatMatrix::identity(3)) == 3);
  CHECK(rank(RatMatrix(2, 4)) == 0);
  CHECK(rank(rat({{1, 1, 1}, {2, 2, 2}})) == 1);
  CHECK(rank(intm({{1, 2}, {3, 4}})) == 2);
}

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.D == IntMatrix::identity(3));

  auto m = intm({{2, 4}, {6, 8}});
  s = smith_normal_form(m);
  CHECK(s.D == intm({{2, 0}, {0, 4}}));
  CHECK(s.U * m * s.V == s.D);

  s = smith_normal_form(intm({{0}}));
  CHECK(s.D == intm({{0}}));
}

TEST_CASE("smith normal form against determinantal divisors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = oracle::random_int_matrix(rng, r, c, -6, 6);
    auto s = smith_normal_form(m);
    REQUIRE(s.U * m * s.V == s.D);
    CHECK(abs(oracle::det(s.U)) == 1);
    CHECK(abs(oracle::det(s.V)) == 1);
    CHECK(is_diagonal_chain(s.D));
    Integer prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prod *= s.D(k - 1, k - 1);
      CHECK(prod == oracle::minor_gcd(m, k));
    }
  }
}

TEST_CASE("kernel lattice examples") {
  auto k = kernel_lattice(intm({{1, 1, 1}}));
  CHECK(k.rank() == 2);
  CHECK(k.is_saturated());
  CHECK(k.contains(std::vector<long>{1, -1, 0}));
  CHECK(k.contains(std::vector<long>{0, 1, -1}));

  CHECK(kernel_lattice(IntMatrix::identity(3)).rank() == 0);

  k = kernel_lattice(intm({{2, -1}}));
  CHECK(k.rank() == 1);
  CHECK(k.contains(std::vector<long>{1, 2}));
  CHECK_FALSE(k.contains(std::vector<long>{1, 1}));
}

TEST_CASE("kernel lattice properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = oracle::random_int_matrix(rng, r, c, -5, 5);
    auto k = kernel_lattice(m);
    CHECK(k.rank() + rank(m) == c);
    CHECK(k.is_saturated());
    CHECK(saturate(k) == k);
    for (std::size_t i = 0; i < k.rank(); ++i) {
      auto v = k.basis().row(i);
      for (std::size_t a = 0; a < r; ++a) CHECK(dot(m.row(a), v) == 0);
    }
  }
}

TEST_CASE("saturate examples") {
  auto l = IntLattice::from_generators(2, intm({{2, -2}}));
  CHECK_FALSE(l.is_saturated());
  auto s = saturate(l);
  CHECK(s.is_saturated());
  CHECK(s == IntLattice::from_generators(2, intm({{1, -1}})));
  CHECK(saturate(s) == s);
  CHECK(saturate(IntLattice(3)).rank() == 0);
}

TEST_CASE("sum_dim examples and properties") {
  auto a = RatSubspace::span(3, rat({{1, -1, 0}, {0, 1, -1}}));
  auto b = RatSubspace::span(3, rat({{1, 1, 1}}));
  CHECK(sum_dim(a, b) == 3);
  CHECK(sum_dim(a, a) == 2);
  CHECK(sum_dim(a, RatSubspace(3)) == 2);
  CHECK_THROWS_AS(sum_dim(a, RatSubspace(2)), std::invalid_argument);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    auto ga = oracle::random_int_matrix(rng, rng() % 4, n, -2, 2);
    auto gb = oracle::random_int_matrix(rng, rng() % 4, n, -2, 2);
    auto sa = RatSubspace::span(n, to_rational(ga));
    auto sb = RatSubspace::span(n, to_rational(gb));
    CHECK(sum_dim(sa, sb) + sa.intersect(sb).dim() == sa.dim() + sb.dim());
    IntMatrix stacked(0, n);
    for (std::size_t i = 0; i < ga.rows(); ++i) stacked.append_row(ga.row(i));
    for (std::size_t i = 0; i < gb.rows(); ++i) stacked.append_row(gb.row(i));
    CHECK(sum_dim(sa, sb) == oracle::rank_by_minors(stacked));
  }
}

TEST_CASE("l1 shortest vector examples") {
  // {u : u1 + 2 u2 = 0 mod 5} = kernel of [1 2 5] projected to the first two coordinates
  auto l = IntLattice::from_generators(2, intm({{1, 2}, {0, 5}}));
  auto v = l1_shortest_nonzero(l, 5);
  REQUIRE(v.has_value());
  CHECK(std::labs((*v)[0]) + std::labs((*v)[1]) == 3);

  v = l1_shortest_nonzero(IntLattice::full(3), 4);
  REQUIRE(v.has_value());
  CHECK(std::labs((*v)[0]) + std::labs((*v)[1]) + std::labs((*v)[2]) == 1);

  CHECK_FALSE(l1_shortest_nonzero(IntLattice(3), 10).has_value());
  CHECK_FALSE(l1_shortest_nonzero(l, 2).has_value());
}

TEST_CASE("l1 shortest vector matches brute force") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 3;
    auto gens = oracle::random_int_matrix(rng, 1 + rng() % n, n, -4, 4);
    auto l = IntLattice::from_generators(n, gens);
    const long bound = 6;
    std::optional<long> best;
    oracle::l1_ball(n, bound, [&](const std::vector<long>& u) {
      long norm = 0;
      for (long x : u) norm += std::labs(x);
      if (norm == 0 || !l.contains(u)) return;
      if (!best || norm < *best) best = norm;
    });
    auto v = l1_shortest_nonzero(l, bound);
    REQUIRE(v.has_value() == best.has_value());
    if (!v) continue;
    long norm = 0;
    for (long x : *v) norm += std::labs(x);
    CHECK(norm == *best);
    CHECK(l.contains(*v));
  }
}

TEST_CASE("hermite normal form spans the same lattice") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + rng() % 4;
    auto g = oracle::random_int_matrix(rng, 1 + rng() % 4, n, -6, 6);
    auto h = hermite_normal_form(g);
    auto lh = IntLattice::from_generators(n, h);
    auto lg = IntLattice::from_generators(n, g);
    for (std::size_t i = 0; i < g.rows(); ++i) CHECK(lh.contains(g.row(i)));
    for (std::size_t i = 0; i < h.rows(); ++i) CHECK(lg.contains(h.row(i)));
    CHECK(h.rows() == rank(g));
  }
}

TEST_CASE("rational subspace operations") {
  auto a = RatSubspace::span(3, rat({{1, 0, 0}, {0, 1, 0}}));
  auto c = a.orthogonal_complement();
  CHECK(c == RatSubspace::span(3, rat({{0, 0, 5}})));
  CHECK(a.contains(RatVector{3, 4, 0}));
  CHECK_FALSE(a.contains(RatVector{0, 0, 1}));
  CHECK((a + c) == RatSubspace::full(3));
  CHECK(a.intersect(c).dim() == 0);
  CHECK(RatSubspace::kernel_of(rat({{1, 1, 1}})).dim() == 2);
}
