#include <doctest.h>

#include "corpus.hpp"
#include "torusx/amoeba.hpp"
#include "torusx/intersect.hpp"
#include "torusx/text.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace torusx;
using cd = std::complex<double>;

namespace {

RatSubspace line(std::vector<long> v) {
  RatVector r(v.begin(), v.end());
  return RatSubspace::span(v.size(), std::vector<RatVector>{r});
}

bool contains_root(const std::vector<cd>& roots, cd r, double tol) {
  for (const auto& x : roots)
    if (std::abs(x - r) <= tol) return true;
  return false;
}

// Sample sizes for the covering checks, by ambient dimension.
std::size_t covering_samples(std::size_t n) { return n <= 2 ? 2000 : (n == 3 ? 4000 : 100000); }

PointCloud covering_cloud(const LaurentPoly& f, std::uint64_t seed) {
  AmoebaOptions o;
  o.policy = SolvePolicy::round_robin;
  return sample_amoeba(f, covering_samples(f.num_vars()), 8.0, seed, o);
}

}  // namespace

TEST_CASE("univariate roots") {
  auto r = univariate_roots({1.0, 0.0, 1.0});
  REQUIRE(r.size() == 2);
  CHECK(contains_root(r, cd(0, 1), 1e-10));
  CHECK(contains_root(r, cd(0, -1), 1e-10));

  r = univariate_roots({6.0, -5.0, 1.0});
  CHECK(contains_root(r, 2.0, 1e-10));
  CHECK(contains_root(r, 3.0, 1e-10));

  r = univariate_roots({-1.0, 0.0, 0.0, 1.0});
  REQUIRE(r.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(contains_root(r, std::polar(1.0, 2 * M_PI * k / 3), 1e-10));

  // (t - 1)^2 (t + 2): the double root loses half the digits.
  r = univariate_roots({2.0, -3.0, 0.0, 1.0});
  CHECK(contains_root(r, -2.0, 1e-10));
  CHECK(contains_root(r, 1.0, 1e-6));

  CHECK_THROWS_AS(univariate_roots({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(univariate_roots({1.0, 2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("univariate roots against a product oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = 1 + trial % 6;
    std::vector<cd> want;
    for (std::size_t i = 0; i < d; ++i) want.emplace_back(u(rng), u(rng));
    std::vector<cd> coeffs{1.0};
    for (const auto& w : want) {
      std::vector<cd> next(coeffs.size() + 1, 0.0);
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k];
        next[k] -= w * coeffs[k];
      }
      coeffs = next;
    }
    auto got = univariate_roots(coeffs);
    REQUIRE(got.size() == d);
    for (const auto& w : want) CHECK(contains_root(got, w, 1e-6));
  }
}

TEST_CASE("amoeba residual invariant and -Log convention") {
  for (const auto& e : corpus::entries()) {
    CAPTURE(e.text);
    auto f = corpus::poly(e);
    auto c = sample_amoeba(f, 300, 5.0, 17);
    REQUIRE(c.points.size() == 300);
    CHECK(c.meta.count == 300);
    CHECK(c.meta.residual_tol == 1e-8);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      CHECK(residual(f, c.witnesses[i]) <= 1e-8);
      for (std::size_t j = 0; j < f.num_vars(); ++j) CHECK(c.points[i][j] == -std::log(std::abs(c.witnesses[i][j])));
    }
  }
}

TEST_CASE("amoeba of x + y - 1 avoids the region where both |x|, |y| < 1/2") {
  auto f = parse_poly("x1 + x2 - 1");
  for (std::uint64_t seed : {1, 2, 3}) {
    auto c = sample_amoeba(f, 2000, 6.0, seed);
    for (const auto& p : c.points) CHECK_FALSE((p[0] > std::log(2.0) && p[1] > std::log(2.0)));
  }
}

TEST_CASE("amoeba of xy - 1 is the antidiagonal") {
  auto f = parse_poly("x1*x2 - 1");
  auto c = sample_amoeba(f, 500, 6.0, 5);
  for (const auto& p : c.points) CHECK(std::abs(p[0] + p[1]) <= 1e-8);
  auto fan = tropical_hypersurface(f);
  for (double s : {1.0, 3.0, 10.0}) CHECK(trop_consistency(sample_amoeba(f, 200, s, 9), fan, s) <= 1e-8);
}

TEST_CASE("solve variable choice") {
  // x2 is absent, so x1 is solved for.
  auto f = parse_poly("x1 - 1", 2);
  for (const auto& p : sample_amoeba(f, 10, 2.0, 1).points) CHECK(std::abs(p[0]) <= 1e-12);
  CHECK_THROWS_AS(sample_amoeba(parse_poly("x1*x2"), 10, 2.0, 1), std::invalid_argument);
}

TEST_CASE("sampling is deterministic in the seed") {
  auto f = parse_poly("x1 + 2*x2 + x3 - 1");
  auto a = sample_amoeba(f, 200, 4.0, 42);
  auto b = sample_amoeba(f, 200, 4.0, 42);
  auto c = sample_amoeba(f, 200, 4.0, 43);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK(to_csv(a) == to_csv(b));
}

TEST_CASE("distance to the fan support") {
  auto fan = tropical_hypersurface(parse_poly("x1*x2 - 1"));
  CHECK(distance_to_support(fan, {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance_to_support(fan, {3.0, -3.0}) == doctest::Approx(0.0));

  // x + y - 1, min convention: rays (-1,-1), (1,0), (0,1).
  auto tri = tropical_hypersurface(parse_poly("x1 + x2 - 1"));
  CHECK(distance_to_support(tri, {-5.0, -5.0}) == doctest::Approx(0.0));
  CHECK(distance_to_support(tri, {5.0, 0.0}) == doctest::Approx(0.0));
  CHECK(distance_to_support(tri, {2.0, 2.0}) == doctest::Approx(2.0));
  CHECK(distance_to_support(tri, {1.0, -1.0}) == doctest::Approx(1.0));
  CHECK(distance_to_support(tri, {-1.0, 0.0}) == doctest::Approx(std::sqrt(0.5)));

  PointCloud empty;
  empty.ambient_dim = 2;
  CHECK(trop_consistency(empty, tri, 3.0) == 0.0);
}

TEST_CASE("trop_consistency shrinks with scale") {
  auto f = parse_poly("x1 + x2 - 1");
  auto fan = tropical_hypersurface(f);
  std::vector<double> v;
  for (double s : {2.0, 5.0, 10.0, 20.0}) v.push_back(trop_consistency(sample_amoeba(f, 500, s, 7), fan, s));
  CHECK(v[1] < v[0]);
  CHECK(v[2] < v[1]);
  CHECK(v[3] < v[2]);

  for (const auto& e : corpus::entries()) {
    CAPTURE(e.text);
    auto g = corpus::poly(e);
    auto gf = tropical_hypersurface(g);
    double prev = -1;
    for (double s : {2.0, 5.0, 10.0, 20.0}) {
      double t = trop_consistency(sample_amoeba(g, 300, s, 7), gf, s);
      if (prev >= 0) CHECK(t <= 1.1 * prev + 1e-12);
      prev = t;
    }
  }
}

TEST_CASE("covering deficiency examples") {
  auto f = parse_poly("x1 + x2 + x3 - 1");
  AmoebaOptions rr;
  rr.policy = SolvePolicy::round_robin;
  auto c = sample_amoeba(f, 2000, 8.0, 1, rr);
  CHECK(covering_deficiency(c, RatSubspace::full(3), 4, 0.5, 0.5) == 0.0);
  CHECK(covering_deficiency(c, line({1, 1, 1}), 4, 0.5, 0.5) <= 0.05);

  auto g = parse_poly("x1*x2 - 1");
  auto cg = sample_amoeba(g, 2000, 8.0, 1);
  CHECK(covering_deficiency(cg, line({1, -1}), 4, 0.5, 0.5) >= 0.5);
}

TEST_CASE("covering deficiency agrees with the fan test on the corpus") {
  for (const auto& e : corpus::entries()) {
    CAPTURE(e.text);
    auto f = corpus::poly(e);
    const std::size_t n = f.num_vars();
    auto fan = tropical_hypersurface(f);
    std::vector<RatSubspace> Ls;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> v(n, 0);
      v[i] = 1;
      Ls.push_back(line(v));
    }
    Ls.push_back(line(std::vector<long>(n, 1)));
    auto st = stabilizer_lattice(f);
    for (std::size_t i = 0; i < st.rank(); ++i) {
      std::vector<long> v;
      for (const auto& x : st.basis().row(i)) v.push_back(x.get_si());
      Ls.push_back(line(v));
    }
    for (std::uint64_t seed : {11, 12}) {
      auto c = covering_cloud(f, seed);
      for (const auto& L : Ls) {
        double d = covering_deficiency(c, L, 4, 0.5, 0.5);
        if (exists_full_sum(fan, L))
          CHECK(d <= 0.05);
        else
          CHECK(d >= 0.3);
      }
    }
  }
}

TEST_CASE("csv output") {
  auto c = sample_amoeba(parse_poly("x1 + x2 - 1"), 5, 3.0, 2);
  std::istringstream in(to_csv(c));
  std::string lineText;
  std::size_t rows = 0;
  while (std::getline(in, lineText)) {
    double a = 0, b = 0;
    char comma = 0;
    std::istringstream ls(lineText);
    ls >> a >> comma >> b;
    CHECK(comma == ',');
    CHECK(a == c.points[rows][0]);
    CHECK(b == c.points[rows][1]);
    ++rows;
  }
  CHECK(rows == 5);
}
