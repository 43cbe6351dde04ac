// Arithmetic in cyclotomic fields Q(zeta_m).
#pragma once

#include "torusx/ratlin.hpp"

#include <complex>

namespace torusx {

unsigned long euler_phi(unsigned long m);

/// Phi_m with ascending integer coefficients, via
/// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d. Cached; thread-safe.
const IntVector& cyclotomic_polynomial(unsigned long m);

/// Element of Q(zeta_m), stored in the power basis 1, zeta, ..., zeta^(phi(m)-1).
///
/// Values whose only nonzero coordinate is the constant one are kept at
/// conductor 1, so plain rationals always look like rationals. Operations on
/// different conductors lift both operands to the lcm. Equality compares
/// values, not representations.
class CycloNumber {
 public:
  CycloNumber() : conductor_(1), coeffs_(1) {}
  CycloNumber(const Rational& q) : conductor_(1), coeffs_{q} { coeffs_[0].canonicalize(); }  // NOLINT(implicit)
  CycloNumber(long q) : conductor_(1), coeffs_{Rational(q)} {}  // NOLINT(implicit)

  /// Coefficients may have any length; they are reduced modulo Phi_m.
  static CycloNumber from_coeffs(unsigned long m, RatVector coeffs);
  /// zeta_m^k for any integer k.
  static CycloNumber root_of_unity(unsigned long m, long k);

  unsigned long conductor() const { return conductor_; }
  const RatVector& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  const Rational& rational_value() const { return coeffs_[0]; }

  /// Same value expressed over Q(zeta_M); requires conductor() | M.
  CycloNumber lift(unsigned long M) const;

  CycloNumber inverse() const;  // throws std::domain_error on zero
  CycloNumber pow(long k) const;

  CycloNumber operator-() const;
  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);

  /// Image under zeta_m -> exp(2 pi i / m).
  std::complex<double> to_complex() const;

  /// (rational, k) pairs meaning sum of rational * zeta_m^k, k ascending.
  std::vector<std::pair<Rational, unsigned long>> terms() const;

 private:
  CycloNumber(unsigned long m, RatVector coeffs) : conductor_(m), coeffs_(std::move(coeffs)) {}
  void normalize();

  unsigned long conductor_;
  RatVector coeffs_;
};

/// Reduces an ascending polynomial over Q modulo Phi_m, returning phi(m) coefficients.
RatVector reduce_mod_cyclotomic(RatVector poly, unsigned long m);

}  // namespace torusx
