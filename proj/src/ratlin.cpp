#include "torusx/ratlin.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace torusx {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntVector clear_denominators(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
  IntVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Rational s = v[j] * Rational(l);
    out[j] = s.get_num();
  }
  return out;
}

IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    auto z = clear_denominators(r);
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = z[j];
  }
  return out;
}

IntVector primitive(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  IntVector out(v.begin(), v.end());
  if (g == 0) return out;
  for (auto& x : out) x /= g;
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t rank(const IntMatrix& m) {
  // Bareiss: every intermediate entry is a minor of m, so divisions are exact.
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::size_t rank(const RatMatrix& m) { return rank(clear_denominators(m)); }

RatMatrix rref(const RatMatrix& m) {
  RatMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  RatMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

RatMatrix rational_kernel(const RatMatrix& m) {
  const std::size_t cols = m.cols();
  RatMatrix e = rref(m);
  std::vector<std::size_t> pivot_col;
  for (std::size_t i = 0; i < e.rows(); ++i) {
    std::size_t c = 0;
    while (e(i, c) == 0) ++c;
    pivot_col.push_back(c);
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  RatMatrix k(0, cols);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows(); ++i) v[pivot_col[i]] = -e(i, f);
    k.append_row(v);
  }
  return k;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_dst += f * row_src
void add_row(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) += f * a(src, c);
}

void add_col(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, dst) += f * a(r, src);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& D = s.D;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Pivot on the entry of least absolute value in the trailing block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (D(i, j) == 0) continue;
          if (pi == rows || abs(D(i, j)) < abs(D(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) return s;
      swap_rows(D, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = -floor_div(D(i, t), D(t, t));
        add_row(D, i, t, q);
        add_row(s.U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = -floor_div(D(t, j), D(t, t));
        add_col(D, j, t, q);
        add_col(s.V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and start over.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (D(i, j) % D(t, t) != 0) {
            add_row(D, t, i, Integer(1));
            add_row(s.U, t, i, Integer(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) D(t, c) = -D(t, c);
      for (std::size_t c = 0; c < rows; ++c) s.U(t, c) = -s.U(t, c);
    }
  }
  return s;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    swap_rows(a, r, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(),
                 a(i, c).get_mpz_t());
      Integer x = a(r, c) / g, y = a(i, c) / g;
      for (std::size_t j = 0; j < cols; ++j) {
        Integer top = s * a(r, j) + t * a(i, j);
        Integer bottom = y * a(r, j) - x * a(i, j);
        a(r, j) = std::move(top);
        a(i, j) = std::move(bottom);
      }
    }
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(a(i, c), a(r, c));
      if (q != 0) add_row(a, i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

// ---------------------------------------------------------------------------

RatSubspace::RatSubspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

RatSubspace RatSubspace::span(std::size_t ambient_dim, const RatMatrix& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient_dim)
    throw std::invalid_argument("RatSubspace::span: generator length does not match ambient dimension");
  RatSubspace s(ambient_dim);
  if (generators.rows() > 0) s.basis_ = rref(generators);
  return s;
}

RatSubspace RatSubspace::span(std::size_t ambient_dim, const std::vector<RatVector>& generators) {
  return span(ambient_dim, RatMatrix::from_rows(generators, ambient_dim));
}

RatSubspace RatSubspace::full(std::size_t ambient_dim) {
  return span(ambient_dim, RatMatrix::identity(ambient_dim));
}

RatSubspace RatSubspace::kernel_of(const RatMatrix& m) {
  return span(m.cols(), rational_kernel(m));
}

bool RatSubspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("RatSubspace::contains: dimension mismatch");
  RatMatrix stacked = basis_;
  stacked.append_row(RatVector(v.begin(), v.end()));
  return torusx::rank(stacked) == dim();
}

bool RatSubspace::contains(const RatSubspace& other) const { return sum_dim(*this, other) == dim(); }

RatSubspace RatSubspace::orthogonal_complement() const {
  if (dim() == 0) return full(ambient_dim_);
  return kernel_of(basis_);
}

RatSubspace RatSubspace::intersect(const RatSubspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("RatSubspace::intersect: dimension mismatch");
  RatSubspace sum_perp = orthogonal_complement() + other.orthogonal_complement();
  return sum_perp.orthogonal_complement();
}

RatSubspace RatSubspace::operator+(const RatSubspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw std::invalid_argument("RatSubspace::operator+: dimension mismatch");
  RatMatrix stacked = basis_;
  for (std::size_t i = 0; i < other.basis_.rows(); ++i) stacked.append_row(other.basis_.row(i));
  return span(ambient_dim_, stacked);
}

std::size_t sum_dim(const RatSubspace& a, const RatSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum_dim: ambient dimension mismatch");
  RatMatrix stacked = a.basis();
  for (std::size_t i = 0; i < b.basis().rows(); ++i) stacked.append_row(b.basis().row(i));
  return rank(stacked);
}

// ---------------------------------------------------------------------------

IntLattice::IntLattice(std::size_t ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

IntLattice IntLattice::from_generators(std::size_t ambient_dim, const IntMatrix& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient_dim)
    throw std::invalid_argument("IntLattice::from_generators: generator length does not match ambient dimension");
  IntLattice l(ambient_dim);
  if (generators.rows() == 0) return l;
  l.basis_ = hermite_normal_form(generators);
  if (l.basis_.rows() == 0) l.basis_ = IntMatrix(0, ambient_dim);
  // Saturated iff all invariant factors are 1.
  SmithForm s = smith_normal_form(l.basis_);
  l.saturated_ = true;
  for (std::size_t i = 0; i < l.basis_.rows(); ++i)
    if (s.D(i, i) != 1) l.saturated_ = false;
  return l;
}

IntLattice IntLattice::full(std::size_t ambient_dim) {
  return from_generators(ambient_dim, IntMatrix::identity(ambient_dim));
}

bool IntLattice::contains(std::span<const Integer> v) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("IntLattice::contains: dimension mismatch");
  IntVector w(v.begin(), v.end());
  std::size_t c = 0;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    while (basis_(i, c) == 0) {
      if (w[c] != 0) return false;
      ++c;
    }
    if (w[c] % basis_(i, c) != 0) return false;
    Integer q = w[c] / basis_(i, c);
    for (std::size_t j = c; j < ambient_dim_; ++j) w[j] -= q * basis_(i, j);
    ++c;
  }
  for (; c < ambient_dim_; ++c)
    if (w[c] != 0) return false;
  return true;
}

bool IntLattice::contains(std::span<const long> v) const {
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i];
  return contains(std::span<const Integer>(w));
}

RatSubspace IntLattice::rational_span() const { return RatSubspace::span(ambient_dim_, to_rational(basis_)); }

IntLattice kernel_lattice(const IntMatrix& m) {
  const std::size_t n = m.cols();
  SmithForm s = smith_normal_form(m);
  std::size_t r = 0;
  while (r < std::min(m.rows(), n) && s.D(r, r) != 0) ++r;
  IntMatrix gens(n - r, n);
  for (std::size_t k = r; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) gens(k - r, i) = s.V(i, k);
  return IntLattice::from_generators(n, gens);
}

IntLattice saturate(const IntLattice& l) {
  if (l.rank() == 0 || l.is_saturated()) return l;
  IntLattice perp = kernel_lattice(l.basis());
  IntMatrix eqs = perp.rank() == 0 ? IntMatrix(0, l.ambient_dim()) : perp.basis();
  return kernel_lattice(eqs);
}

namespace {

// Calls visit(v) for every v in Z^n with |v|_1 == norm, in lexicographic
// order; stops early when visit returns true.
bool for_each_of_norm(std::size_t n, long norm, const std::function<bool(const std::vector<long>&)>& visit) {
  std::vector<long> v(n, 0);
  std::function<bool(std::size_t, long)> rec = [&](std::size_t i, long left) -> bool {
    if (i + 1 == n) {
      if (left == 0) {
        v[i] = 0;
        return visit(v);
      }
      v[i] = -left;
      if (visit(v)) return true;
      v[i] = left;
      return visit(v);
    }
    for (long x = -left; x <= left; ++x) {
      v[i] = x;
      if (rec(i + 1, left - (x < 0 ? -x : x))) return true;
    }
    return false;
  };
  if (n == 0) return false;
  return rec(0, norm);
}

}  // namespace

std::optional<std::vector<long>> l1_shortest_nonzero(const IntLattice& l, long bound) {
  if (bound < 1) throw std::invalid_argument("l1_shortest_nonzero: bound must be at least 1");
  if (l.rank() == 0) return std::nullopt;
  std::optional<std::vector<long>> found;
  for (long k = 1; k <= bound && !found; ++k) {
    for_each_of_norm(l.ambient_dim(), k, [&](const std::vector<long>& v) {
      if (l.contains(std::span<const long>(v))) {
        found = v;
        return true;
      }
      return false;
    });
  }
  return found;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace torusx
