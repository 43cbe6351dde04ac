// Laurent polynomials with cyclotomic coefficients.
#pragma once

#include "torusx/cyclotomic.hpp"
#include "torusx/ratlin.hpp"

#include <complex>
#include <map>
#include <span>

namespace torusx {

using Exponent = std::vector<long>;

/// Finite sum of c_u x^u over u in Z^n. Terms are kept in a sorted map with
/// no zero coefficients, so two polynomials are equal iff their maps are.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, CycloNumber>;

  explicit LaurentPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static LaurentPoly monomial(std::size_t num_vars, Exponent u, CycloNumber c);
  static LaurentPoly constant(std::size_t num_vars, CycloNumber c);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c x^u, merging with an existing term and dropping zeros.
  void add_term(const Exponent& u, const CycloNumber& c);

  std::vector<Exponent> support() const;
  /// lcm of the coefficient conductors (1 for the zero polynomial).
  unsigned long conductor() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const CycloNumber& c, const LaurentPoly& f);
  bool operator==(const LaurentPoly& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }

  /// Multiplies by x^shift.
  LaurentPoly shifted(const Exponent& shift) const;

  /// Exact evaluation; every coordinate must be nonzero.
  CycloNumber evaluate(std::span<const CycloNumber> point) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

struct Polytope {
  std::size_t ambient_dim = 0;
  std::vector<Exponent> vertices;  // sorted
};

/// Sub-sum of the terms minimizing <u, gamma> (constant-coefficient initial form).
LaurentPoly initial_form(const LaurentPoly& f, std::span<const Rational> gamma);

/// g(t) = f(z * t^B): exponents u^T B, coefficients c_u z^u. B is n x d.
LaurentPoly substitute_monomial(const LaurentPoly& f, std::span<const CycloNumber> z, const IntMatrix& B);

/// Saturated kernel of the exponent differences u - u0: the character data
/// of the connected stabilizer of V(f).
IntLattice stabilizer_lattice(const LaurentPoly& f);

/// Convex hull of the support, extreme points only (exact LP test).
Polytope newton_polytope(const LaurentPoly& f);

/// Exactly one term. The zero polynomial is not a monomial.
bool is_monomial(const LaurentPoly& f);

Rational pairing(const Exponent& u, std::span<const Rational> gamma);
long pairing(const Exponent& u, std::span<const long> v);

}  // namespace torusx
