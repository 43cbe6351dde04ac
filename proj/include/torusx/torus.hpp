// Subtori, cosets and torsion points of G_m^n.
#pragma once

#include "torusx/cyclotomic.hpp"
#include "torusx/fan.hpp"
#include "torusx/ratlin.hpp"

#include <optional>
#include <vector>

namespace torusx {

/// Connected subtorus H = {t^B} = identity component of {x : x^a = 1 for a in A}.
class Subtorus {
 public:
  Subtorus() = default;

  /// Rows are characters a with x^a = 1 on H. The row lattice is saturated
  /// first, which picks the identity component.
  static Subtorus from_equations(std::size_t ambient_dim, const IntMatrix& rows);
  /// Columns of B span the cocharacter lattice (saturated on the way in).
  static Subtorus from_parametrization(const IntMatrix& B);
  static Subtorus from_direction(std::span<const long> v);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return B_.cols(); }
  const IntLattice& char_lattice() const { return A_; }
  /// n x d; columns are a basis of the cocharacter lattice.
  const IntMatrix& param() const { return B_; }

  bool operator==(const Subtorus& o) const { return n_ == o.n_ && A_ == o.A_; }

 private:
  std::size_t n_ = 0;
  IntLattice A_;
  IntMatrix B_;
};

struct Coset {
  Subtorus torus;
  std::vector<CycloNumber> base;

  /// Throws if the base has the wrong length or a zero coordinate.
  void validate() const;
};

/// Point of mu_infinity^n: coordinate j is zeta_order^angles[j].
struct TorsionPoint {
  unsigned long order = 1;
  std::vector<long> angles;

  /// Reduces angles mod m and divides out gcd(m, angles) so that `order` is
  /// the exact order of the point.
  static TorsionPoint make(unsigned long m, std::vector<long> angles);

  std::vector<CycloNumber> coordinates() const;
  TorsionPoint inverse() const;
  bool operator==(const TorsionPoint&) const = default;
};

/// J_tau: the subtorus whose character lattice is the saturated lattice of
/// integer equations cutting out lin(tau).
Subtorus j_tau(const Cone& c);

/// Minimal L1 norm of a nonzero u with zeta^u = 1, if at most `bound`.
/// The default bound n * order always suffices.
std::optional<long> script_n(const TorsionPoint& zeta, std::optional<long> bound = std::nullopt);

/// The lattice {u : sum u_j a_j = 0 mod m} of relations of zeta.
IntLattice relation_lattice(const TorsionPoint& zeta);

struct RootOfUnity {
  unsigned long order;
  unsigned long exponent;  // coprime to order
};

/// The roots of unity in Q(zeta_m) are exactly the +-zeta_m^j, so a finite
/// comparison decides the question. Throws on zero.
std::optional<RootOfUnity> is_root_of_unity(const CycloNumber& c);

/// Torsion points of exact order 1, 2, ..., max_order; within one order the
/// angle vectors come in lexicographic order. Restartable by copying.
class TorsionEnumerator {
 public:
  TorsionEnumerator(std::size_t n, unsigned long max_order);
  std::optional<TorsionPoint> next();

 private:
  bool advance();
  std::size_t n_;
  unsigned long max_order_;
  unsigned long order_ = 1;
  std::vector<long> angles_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<TorsionPoint> enumerate_torsion(std::size_t n, unsigned long max_order);

/// Representatives zeta_k of the components of {x : x^A = 1}; the first is
/// the identity. There is one per element of the torsion of Z^n / (row
/// lattice of A), i.e. the product of the nonzero invariant factors.
std::vector<TorsionPoint> component_representatives(const IntMatrix& A);

}  // namespace torusx
