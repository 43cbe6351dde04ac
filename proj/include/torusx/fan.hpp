// Rational polyhedral cones and fans, and tropical hypersurfaces.
//
// Cones are kept in H-representation: equalities <a, x> = 0 and
// inequalities <a, x> <= 0. After construction the equalities are an RREF
// basis of all implicit equalities, and every inequality is a facet normal
// reduced modulo the equalities and scaled to a primitive integer vector.
// That makes the representation canonical, so two cones are equal iff their
// constraint lists are.
#pragma once

#include "torusx/laurent.hpp"
#include "torusx/ratlin.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torusx {

class Cone {
 public:
  Cone() = default;

  static Cone from_constraints(std::size_t ambient_dim, const std::vector<RatVector>& equalities,
                               const std::vector<RatVector>& inequalities, std::string label = {});

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RatVector>& equalities() const { return equalities_; }
  const std::vector<RatVector>& inequalities() const { return inequalities_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  std::size_t dim() const { return ambient_dim_ - equalities_.size(); }

  /// A point in the relative interior.
  const RatVector& relint_point() const { return relint_; }

  /// For cones of a tropical hypersurface: indices into the support of the
  /// terms attaining the minimum on the relative interior. Empty otherwise.
  const std::vector<std::size_t>& tie_set() const { return tie_; }

  bool contains(std::span<const Rational> x) const;
  bool relint_contains(std::span<const Rational> x) const;

  bool same_point_set(const Cone& o) const {
    return ambient_dim_ == o.ambient_dim_ && equalities_ == o.equalities_ && inequalities_ == o.inequalities_;
  }

 private:
  friend class FanBuilder;
  std::size_t ambient_dim_ = 0;
  std::vector<RatVector> equalities_;
  std::vector<RatVector> inequalities_;
  RatVector relint_;
  std::vector<std::size_t> tie_;
  std::string label_;
};

/// Span of the cone; for a cone this is the solution space of its equalities.
RatSubspace lin_space(const Cone& c);

bool relint_contains(const Cone& c, std::span<const Rational> x);

struct Fan {
  std::size_t ambient_dim = 0;
  std::vector<Cone> cones;  // dimension descending, then tie set
  std::vector<std::pair<std::string, std::string>> incidence;  // (face, cone), proper faces only
  std::vector<Exponent> support;  // support of f for tropical fans

  std::optional<std::size_t> find(const std::string& label) const;
  std::optional<std::size_t> find(const Cone& c) const;
  std::size_t dim() const;
  std::vector<std::size_t> maximal_cones() const;
  /// Indices of the cones having cones[i] as a face, including i itself.
  std::vector<std::size_t> cones_containing(std::size_t i) const;
  bool support_contains(std::span<const Rational> x) const;
};

/// Trop(V(f)) with constant coefficients: the locus where min_u <u, x> over
/// supp(f) is attained at least twice. Throws on a monomial or zero f.
Fan tropical_hypersurface(const LaurentPoly& f);

/// Cones sigma + lin(tau) for sigma containing tau; labels are kept.
Fan star(const Fan& fan, const Cone& tau);
Fan star(const Fan& fan, const std::string& tau_label);

/// Label of the first cone with dim(lin(tau) + L) = n.
std::optional<std::string> exists_full_sum(const Fan& fan, const RatSubspace& L);

/// Exact test for x in tau + L.
bool in_cone_plus_subspace(const Cone& tau, const RatSubspace& L, std::span<const Rational> x);

struct CoverageResult {
  std::size_t hits = 0;
  std::size_t total = 0;
  double fraction() const { return total == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(total); }
};

/// Samples points box * k / 1024 with k uniform in [-1024, 1024] per
/// coordinate, and counts those lying in the union of tau + L.
CoverageResult covering_check_sampled(const Fan& fan, const RatSubspace& L, std::size_t samples,
                                      const Rational& box, std::uint64_t seed);

/// max over cones of rank(P restricted to lin(cone)).
std::size_t project_support_dim(const Fan& fan, const RatMatrix& P);

/// true iff min_u <u, x> over the support is attained at least twice.
bool min_attained_twice(const std::vector<Exponent>& support, std::span<const Rational> x);

}  // namespace torusx
