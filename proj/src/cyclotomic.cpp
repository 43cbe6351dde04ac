#include "torusx/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace torusx {

unsigned long euler_phi(unsigned long m) {
  if (m == 0) throw std::invalid_argument("euler_phi: m must be positive");
  unsigned long result = m, r = m;
  for (unsigned long p = 2; p * p <= r; ++p) {
    if (r % p != 0) continue;
    while (r % p == 0) r /= p;
    result -= result / p;
  }
  if (r > 1) result -= result / r;
  return result;
}

namespace {

// Exact division of integer polynomials by a monic divisor.
IntVector divide_monic(IntVector num, const IntVector& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntVector q(num.size() - dd);
  for (std::size_t k = num.size(); k-- > dd;) {
    Integer c = num[k];
    q[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
  }
  return q;
}

std::mutex cache_mutex;
std::map<unsigned long, IntVector>& cache() {
  static std::map<unsigned long, IntVector> c;
  return c;
}

}  // namespace

const IntVector& cyclotomic_polynomial(unsigned long m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache().find(m);
    if (it != cache().end()) return it->second;
  }
  IntVector num(m + 1);
  num[0] = -1;
  num[m] = 1;
  for (unsigned long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = divide_monic(std::move(num), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(cache_mutex);
  return cache().emplace(m, std::move(num)).first->second;
}

RatVector reduce_mod_cyclotomic(RatVector poly, unsigned long m) {
  const IntVector& phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k] == 0) continue;
    Rational c = poly[k];
    for (std::size_t i = 0; i <= deg; ++i) poly[k - deg + i] -= c * phi[i];
  }
  poly.resize(deg);
  return poly;
}

CycloNumber CycloNumber::from_coeffs(unsigned long m, RatVector coeffs) {
  if (m == 0) throw std::invalid_argument("CycloNumber: conductor must be positive");
  for (auto& q : coeffs) q.canonicalize();
  CycloNumber c(m, reduce_mod_cyclotomic(std::move(coeffs), m));
  c.normalize();
  return c;
}

CycloNumber CycloNumber::root_of_unity(unsigned long m, long k) {
  if (m == 0) throw std::invalid_argument("CycloNumber: conductor must be positive");
  long r = k % static_cast<long>(m);
  if (r < 0) r += static_cast<long>(m);
  RatVector p(static_cast<std::size_t>(r) + 1);
  p[static_cast<std::size_t>(r)] = 1;
  return from_coeffs(m, std::move(p));
}

void CycloNumber::normalize() {
  if (conductor_ == 1) return;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return;
  Rational c0 = coeffs_.empty() ? Rational(0) : coeffs_[0];
  conductor_ = 1;
  coeffs_ = {c0};
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

CycloNumber CycloNumber::lift(unsigned long M) const {
  if (M % conductor_ != 0) throw std::invalid_argument("CycloNumber::lift: conductor must divide target");
  if (M == conductor_) return *this;
  const unsigned long step = M / conductor_;
  RatVector p(coeffs_.size() == 0 ? 1 : (coeffs_.size() - 1) * step + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) p[k * step] = coeffs_[k];
  // Keep the lifted form even if it is rational-looking; callers combine it immediately.
  return CycloNumber(M, reduce_mod_cyclotomic(std::move(p), M));
}

namespace {

unsigned long lcm_ul(unsigned long a, unsigned long b) { return std::lcm(a, b); }

RatVector poly_add(const RatVector& a, const RatVector& b, const Rational& sign) {
  RatVector r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  return r;
}

RatVector poly_mul(const RatVector& a, const RatVector& b) {
  if (a.empty() || b.empty()) return {};
  RatVector r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

void trim(RatVector& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Division with remainder in Q[x]; b must be nonzero after trimming.
std::pair<RatVector, RatVector> poly_divmod(RatVector a, RatVector b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) return {{}, a};
  RatVector q(a.size() - b.size() + 1);
  const Rational lead_inv = 1 / b.back();
  const std::size_t shift = b.size() - 1;
  for (std::size_t k = a.size() - 1;; --k) {
    Rational c = a[k] * lead_inv;
    q[k - shift] = c;
    if (c != 0)
      for (std::size_t i = 0; i < b.size(); ++i) a[k - shift + i] -= c * b[i];
    if (k == shift) break;
  }
  a.resize(b.size() - 1);
  trim(a);
  return {q, a};
}

}  // namespace

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor_ == 1 && b.conductor_ == 1) return CycloNumber(a.coeffs_[0] + b.coeffs_[0]);
  const unsigned long M = lcm_ul(a.conductor_, b.conductor_);
  CycloNumber la = a.lift(M), lb = b.lift(M);
  CycloNumber r(M, poly_add(la.coeffs_, lb.coeffs_, 1));
  r.normalize();
  return r;
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor_ == 1 && b.conductor_ == 1) return CycloNumber(a.coeffs_[0] - b.coeffs_[0]);
  const unsigned long M = lcm_ul(a.conductor_, b.conductor_);
  CycloNumber la = a.lift(M), lb = b.lift(M);
  CycloNumber r(M, poly_add(la.coeffs_, lb.coeffs_, -1));
  r.normalize();
  return r;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor_ == 1 && b.conductor_ == 1) return CycloNumber(a.coeffs_[0] * b.coeffs_[0]);
  if (a.conductor_ == 1 || b.conductor_ == 1) {
    const CycloNumber& s = a.conductor_ == 1 ? a : b;
    CycloNumber r = a.conductor_ == 1 ? b : a;
    for (auto& c : r.coeffs_) c *= s.coeffs_[0];
    r.normalize();
    return r;
  }
  const unsigned long M = lcm_ul(a.conductor_, b.conductor_);
  CycloNumber la = a.lift(M), lb = b.lift(M);
  return CycloNumber::from_coeffs(M, poly_mul(la.coeffs_, lb.coeffs_));
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  return (a - b).is_zero();
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("CycloNumber::inverse: division by zero");
  if (conductor_ == 1) return CycloNumber(1 / coeffs_[0]);
  // Extended Euclid on (a, Phi_m): s*a + t*Phi = gcd = nonzero constant.
  const IntVector& phi_int = cyclotomic_polynomial(conductor_);
  RatVector phi(phi_int.begin(), phi_int.end());
  RatVector r0 = phi, r1 = coeffs_;
  RatVector s0, s1{Rational(1)};
  trim(r1);
  while (r1.size() > 1) {
    auto [q, r] = poly_divmod(r0, r1);
    RatVector s2 = poly_add(s0, poly_mul(q, s1), -1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    trim(r1);
  }
  // r1 is a nonzero constant because Phi_m is irreducible and a != 0.
  Rational c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  return from_coeffs(conductor_, std::move(s1));
}

CycloNumber CycloNumber::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CycloNumber result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::complex<double> CycloNumber::to_complex() const {
  std::complex<double> s = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(conductor_);
    s += coeffs_[k].get_d() * std::polar(1.0, angle);
  }
  return s;
}

std::vector<std::pair<Rational, unsigned long>> CycloNumber::terms() const {
  std::vector<std::pair<Rational, unsigned long>> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) out.emplace_back(coeffs_[k], k);
  return out;
}

}  // namespace torusx
