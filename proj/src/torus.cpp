#include "torusx/torus.hpp"

#include <numeric>
#include <stdexcept>

namespace torusx {

namespace {

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in a machine word");
  return z.get_si();
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Subtorus Subtorus::from_equations(std::size_t n, const IntMatrix& rows) {
  if (rows.rows() > 0 && rows.cols() != n) throw std::invalid_argument("Subtorus: equations have the wrong width");
  Subtorus h;
  h.n_ = n;
  h.A_ = saturate(IntLattice::from_generators(n, rows.rows() == 0 ? IntMatrix(0, n) : rows));
  IntMatrix A = h.A_.rank() == 0 ? IntMatrix(0, n) : h.A_.basis();
  IntLattice K = kernel_lattice(A);
  h.B_ = K.rank() == 0 ? IntMatrix(n, 0) : K.basis().transpose();
  return h;
}

Subtorus Subtorus::from_parametrization(const IntMatrix& B) {
  const std::size_t n = B.rows();
  if (B.cols() == 0) return from_equations(n, IntMatrix::identity(n));
  IntLattice A = kernel_lattice(B.transpose());
  return from_equations(n, A.rank() == 0 ? IntMatrix(0, n) : A.basis());
}

Subtorus Subtorus::from_direction(std::span<const long> v) {
  IntMatrix B(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) B(i, 0) = v[i];
  return from_parametrization(B);
}

void Coset::validate() const {
  if (base.size() != torus.ambient_dim()) throw std::invalid_argument("Coset: base point has the wrong dimension");
  for (const auto& c : base)
    if (c.is_zero()) throw std::invalid_argument("Coset: base point has a zero coordinate");
}

TorsionPoint TorsionPoint::make(unsigned long m, std::vector<long> angles) {
  if (m == 0) throw std::invalid_argument("TorsionPoint: order must be positive");
  const long M = static_cast<long>(m);
  long g = M;
  for (auto& a : angles) {
    a = mod(a, M);
    g = std::gcd(g, a);
  }
  TorsionPoint p;
  p.order = static_cast<unsigned long>(M / g);
  for (auto& a : angles) a /= g;
  p.angles = std::move(angles);
  return p;
}

std::vector<CycloNumber> TorsionPoint::coordinates() const {
  std::vector<CycloNumber> z;
  z.reserve(angles.size());
  for (long a : angles) z.push_back(CycloNumber::root_of_unity(order, a));
  return z;
}

TorsionPoint TorsionPoint::inverse() const {
  std::vector<long> neg(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) neg[i] = -angles[i];
  return make(order, neg);
}

Subtorus j_tau(const Cone& c) {
  const std::size_t n = c.ambient_dim();
  if (c.equalities().empty()) return Subtorus::from_equations(n, IntMatrix(0, n));
  return Subtorus::from_equations(n, clear_denominators(RatMatrix::from_rows(c.equalities(), n)));
}

IntLattice relation_lattice(const TorsionPoint& zeta) {
  const std::size_t n = zeta.angles.size();
  IntMatrix row(1, n + 1);
  for (std::size_t j = 0; j < n; ++j) row(0, j) = zeta.angles[j];
  row(0, n) = static_cast<long>(zeta.order);
  IntLattice K = kernel_lattice(row);
  IntMatrix gens(K.rank(), n);
  for (std::size_t i = 0; i < K.rank(); ++i)
    for (std::size_t j = 0; j < n; ++j) gens(i, j) = K.basis()(i, j);
  return IntLattice::from_generators(n, gens);
}

std::optional<long> script_n(const TorsionPoint& zeta, std::optional<long> bound) {
  const long n = static_cast<long>(zeta.angles.size());
  long b = bound.value_or(std::max<long>(1, n * static_cast<long>(zeta.order)));
  if (b < 1) throw std::invalid_argument("script_n: bound must be at least 1");
  auto v = l1_shortest_nonzero(relation_lattice(zeta), b);
  if (!v) return std::nullopt;
  long norm = 0;
  for (long x : *v) norm += std::labs(x);
  return norm;
}

std::optional<RootOfUnity> is_root_of_unity(const CycloNumber& c) {
  if (c.is_zero()) throw std::invalid_argument("is_root_of_unity: zero");
  if (c.is_rational()) {
    if (c.rational_value() == 1) return RootOfUnity{1, 0};
    if (c.rational_value() == -1) return RootOfUnity{2, 1};
    return std::nullopt;
  }
  const unsigned long M = std::lcm(2UL, c.conductor());
  for (unsigned long j = 0; j < M; ++j) {
    if (c == CycloNumber::root_of_unity(M, static_cast<long>(j))) {
      unsigned long g = std::gcd(M, j);
      return RootOfUnity{M / g, j / g};
    }
  }
  return std::nullopt;
}

TorsionEnumerator::TorsionEnumerator(std::size_t n, unsigned long max_order)
    : n_(n), max_order_(max_order), angles_(n, 0) {
  if (max_order == 0) throw std::invalid_argument("TorsionEnumerator: max_order must be at least 1");
}

bool TorsionEnumerator::advance() {
  for (std::size_t i = n_; i-- > 0;) {
    if (++angles_[i] < static_cast<long>(order_)) return true;
    angles_[i] = 0;
  }
  ++order_;
  return order_ <= max_order_;
}

std::optional<TorsionPoint> TorsionEnumerator::next() {
  if (done_) return std::nullopt;
  for (;;) {
    if (!started_) {
      started_ = true;
    } else if (!advance()) {
      done_ = true;
      return std::nullopt;
    }
    long g = static_cast<long>(order_);
    for (long a : angles_) g = std::gcd(g, a);
    if (g == 1) return TorsionPoint{order_, angles_};
  }
}

std::vector<TorsionPoint> enumerate_torsion(std::size_t n, unsigned long max_order) {
  std::vector<TorsionPoint> out;
  TorsionEnumerator e(n, max_order);
  while (auto p = e.next()) out.push_back(*p);
  return out;
}

std::vector<TorsionPoint> component_representatives(const IntMatrix& A) {
  const std::size_t n = A.cols();
  SmithForm s = smith_normal_form(A);
  std::vector<long> d;
  for (std::size_t i = 0; i < std::min(A.rows(), n); ++i)
    if (s.D(i, i) != 0) d.push_back(to_long(s.D(i, i)));
  long M = 1;
  for (long di : d) M = std::lcm(M, di);
  std::vector<TorsionPoint> out;
  std::vector<long> k(d.size(), 0);
  for (;;) {
    std::vector<long> a(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      Integer acc = 0;
      for (std::size_t i = 0; i < d.size(); ++i) acc += s.V(j, i) * k[i] * (M / d[i]);
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(M));
      a[j] = r.get_si();
    }
    out.push_back(TorsionPoint::make(static_cast<unsigned long>(M), a));
    std::size_t i = d.size();
    while (i > 0) {
      --i;
      if (++k[i] < d[i]) break;
      k[i] = 0;
      if (i == 0) return out;
    }
    if (d.empty()) return out;
  }
}

}  // namespace torusx
