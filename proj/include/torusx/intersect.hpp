// Decisions about hypersurfaces W = V(f) in G_m^n meeting cosets of subtori.
//
// Everything rests on one fact: a Laurent polynomial over an algebraically
// closed field has no zero on the torus iff it is a unit of the Laurent
// ring, i.e. a single monomial. (If g has two terms, clear denominators in
// one variable t_i that appears with two different exponents; the result is
// a polynomial of positive degree in t_i with nonzero constant term for a
// generic choice of the other coordinates, so it has a nonzero root.)
// Hence W meets z.H iff g(t) = f(z t^B) is not a nonzero monomial.
#pragma once

#include "torusx/fan.hpp"
#include "torusx/laurent.hpp"
#include "torusx/torus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torusx {

enum class IntersectionStatus { Empty, NonEmpty, CosetContained };

struct IntersectionVerdict {
  IntersectionStatus status = IntersectionStatus::NonEmpty;
  LaurentPoly g;  // f(z t^B), in dim H variables
};

IntersectionVerdict coset_intersects(const LaurentPoly& f, const Coset& c);

/// Trivial connected stabilizer. Throws on zero or monomial input.
/// Irreducibility of f is not checked.
bool is_geometrically_non_degenerate(const LaurentPoly& f);

/// Some cone tau of Trop(f) has lin(tau) + L = Q^n. Throws if L = 0.
bool is_rotund_product(const LaurentPoly& f, const RatSubspace& L);
bool is_rotund_product(const Fan& trop, const RatSubspace& L);

/// The cocharacters of J_tau are constant on supp(in_gamma f), gamma in relint(tau).
bool check_j_tau_stabilizes(const LaurentPoly& f, const Cone& tau);
bool check_j_tau_stabilizes(const LaurentPoly& f, const Fan& trop, const Cone& tau);

/// p_e(z) = sum over <u, v> = e of c_u z^u; zero groups are omitted.
std::map<long, LaurentPoly> group_polynomials(const LaurentPoly& f, std::span<const long> v);

struct SearchEffort {
  long height = 8;                 // rational grid: |p|, q <= height
  unsigned long root_order = 12;   // roots of unity of order <= this
  std::vector<unsigned long> primes = {5, 7, 11, 13};
  std::size_t grid_budget = 4000;  // candidate points per search stage
  std::size_t max_components = 256;

  static SearchEffort quick() {
    SearchEffort e;
    e.height = 2;
    e.root_order = 4;
    e.primes = {};
    e.grid_budget = 200;
    return e;
  }
};

enum class SurjectivityStatus { Surjective, NotSurjective, Unknown };

struct SurjectivityVerdict {
  SurjectivityStatus status = SurjectivityStatus::Unknown;
  std::string reason;
  std::vector<long> kernel;                   // primitive v spanning ker A (rank n-1 only)
  std::vector<TorsionPoint> components;       // representatives of {x^A = 1} modulo its identity component
  std::map<long, LaurentPoly> groups;
  /// NotSurjective with rank A = n-1: every component coset z.zeta_k.{t^v}
  /// misses W.
  std::optional<std::vector<CycloNumber>> witness;
  /// NotSurjective with rank A < n-1: a target y outside the image, with the
  /// character c (c A = 0) certifying y^c != 1.
  std::optional<std::vector<Rational>> target;
  std::optional<std::vector<long>> target_character;
  /// Surjective: (a, b) where group a is a single term. Either group b is a
  /// single term too, or (component_system) p_b cannot vanish on every
  /// component at once because the linear system sum_u c_u zeta_k^u X_u = 0
  /// forces some X_u = 0.
  std::optional<std::pair<long, long>> certificate;
  bool component_system = false;
};

/// True if no z in the torus has p(z * zeta_k) = 0 for every k, shown by the
/// linear system in the monomial values forcing one of them to vanish.
bool vanishing_on_all_components_impossible(const LaurentPoly& p, const std::vector<TorsionPoint>& components);

/// Is x -> x^A surjective from W onto G_m^d, for A of size (n-1) x n?
SurjectivityVerdict surjectivity_decide(const LaurentPoly& f, const IntMatrix& A,
                                        const SearchEffort& effort = {});

/// Searches for z such that for every component zeta_k, exactly one group
/// polynomial is nonzero at z * zeta_k. Returned points are exactly verified.
std::optional<std::vector<CycloNumber>> find_empty_fiber_witness(const std::map<long, LaurentPoly>& groups,
                                                                 const std::vector<TorsionPoint>& components,
                                                                 std::size_t n, const SearchEffort& effort);

struct DensityReport {
  long N = 0;
  std::size_t total = 0;
  std::size_t surjective = 0;
  std::size_t not_surjective = 0;
  std::size_t unknown = 0;
  std::uint64_t seed = 0;
  std::size_t fiber_samples = 0;  // 0 for exhaustive runs, else the sample count
  bool exhaustive = true;
};

struct DensityOptions {
  bool exhaustive = true;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t exhaustive_cap = 2000000;
  SearchEffort effort;
};

/// Tallies surjectivity_decide over integer (n-1) x n matrices with entries
/// in [-N, N]. Results do not depend on the worker count.
DensityReport density_estimate(const LaurentPoly& f, long N, const DensityOptions& opts);

/// The matrix decided for index `i` of a density run.
IntMatrix density_matrix(std::size_t n, long N, bool exhaustive, std::uint64_t seed, std::uint64_t i);

struct BadSubtorus {
  Subtorus torus;  // one-dimensional, {t^v}
  std::vector<long> direction;
  Coset witness;   // verified: coset_intersects(f, witness) == Empty
};

/// Primitive directions v with max|v_i| <= bound (first nonzero entry
/// positive) admitting a coset z.{t^v} disjoint from W. Throws
/// std::domain_error if f is geometrically degenerate.
std::vector<BadSubtorus> bad_subtorus_search(const LaurentPoly& f, long norm_bound, const SearchEffort& effort = {});

struct TorsionCosetHit {
  TorsionPoint point;
  std::optional<Subtorus> coset_torus;  // zeta.H inside W, if one was found
};

struct TorsionCaps {
  std::size_t max_vars = 4;
  unsigned long max_order = 30;
};

/// Torsion points of order <= max_order on W, each with the largest found
/// subtorus H (spanned by primitive directions with max|v_i| <= direction_bound)
/// such that zeta.H lies in W.
std::vector<TorsionCosetHit> torsion_cosets_on_hypersurface(const LaurentPoly& f, unsigned long max_order,
                                                            long direction_bound, const TorsionCaps& caps = {});

/// Primitive integer vectors with max|v_i| <= bound and first nonzero entry positive.
std::vector<std::vector<long>> primitive_directions(std::size_t n, long bound);

std::string to_string(IntersectionStatus s);
std::string to_string(SurjectivityStatus s);

}  // namespace torusx
