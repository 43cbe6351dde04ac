// Small brute-force helpers used as independent references in tests.
#pragma once

#include "torusx/ratlin.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using torusx::Integer;
using torusx::IntMatrix;
using torusx::Rational;
using torusx::RatMatrix;

// Laplace expansion; fine for n <= 5.
inline Integer det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Integer d = a[0][j] * det(minor);
    s += (j % 2 == 0) ? d : Integer(-d);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// gcd of all k x k minors (the k-th determinantal divisor).
inline Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  subsets(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
    subsets(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
      std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rs[i], cs[j]);
      Integer d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Rank as the largest k with a nonzero k x k minor.
inline std::size_t rank_by_minors(const IntMatrix& m) {
  std::size_t r = 0;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k)
    if (minor_gcd(m, k) != 0) r = k;
  return r;
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

inline Integer det(const IntMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return det(a);
}

// Enumerates every integer vector with L1 norm <= bound, in no particular order.
inline void l1_ball(std::size_t n, long bound, const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> v(n);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == n) {
      fn(v);
      return;
    }
    for (long x = -left; x <= left; ++x) {
      v[i] = x;
      rec(i + 1, left - std::labs(x));
    }
  };
  rec(0, bound);
}

}  // namespace oracle
