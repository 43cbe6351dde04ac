#include "torusx/fan.hpp"

#include "torusx/lp.hpp"
#include "torusx/random.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace torusx {

namespace {

struct RelintResult {
  RatVector point;
  std::vector<bool> implicit;  // per inequality: tight on the whole cone
};

// maximize sum t_i  s.t.  <a_i, x> + t_i <= 0,  0 <= t_i <= 1,  equalities.
// Because the cone is closed under scaling, every inequality that is not an
// implicit equality reaches t_i = 1 at the optimum.
RelintResult relint_lp(std::size_t n, const std::vector<RatVector>& eqs, const std::vector<RatVector>& ineqs) {
  const std::size_t m = ineqs.size();
  RelintResult r;
  r.implicit.assign(m, false);
  if (m == 0) {
    r.point.assign(n, Rational(0));
    return r;
  }
  LinearProgram lp;
  lp.num_vars = n + m;
  for (const auto& a : eqs) {
    RatVector row(n + m);
    std::copy(a.begin(), a.end(), row.begin());
    lp.add_eq(std::move(row), 0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    RatVector row(n + m);
    std::copy(ineqs[i].begin(), ineqs[i].end(), row.begin());
    row[n + i] = 1;
    lp.add_le(std::move(row), 0);
    RatVector up(n + m), low(n + m);
    up[n + i] = 1;
    low[n + i] = -1;
    lp.add_le(std::move(up), 1);
    lp.add_le(std::move(low), 0);
  }
  lp.objective.assign(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) lp.objective[n + i] = 1;
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal) throw std::logic_error("relint_lp: cone LP not optimal");
  r.point.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < m; ++i) r.implicit[i] = dot(ineqs[i], r.point) == 0;
  return r;
}

RatVector reduce_mod(const RatMatrix& rref_eqs, RatVector a) {
  for (std::size_t i = 0; i < rref_eqs.rows(); ++i) {
    std::size_t p = 0;
    while (rref_eqs(i, p) == 0) ++p;
    if (a[p] == 0) continue;
    Rational c = a[p];
    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= c * rref_eqs(i, j);
  }
  return a;
}

RatVector primitive_direction(const RatVector& a) {
  IntVector v = primitive(clear_denominators(a));
  return RatVector(v.begin(), v.end());
}

std::vector<RatVector> canonical_inequalities(const RatMatrix& rref_eqs, const std::vector<RatVector>& ineqs) {
  std::set<RatVector> out;
  for (const auto& a : ineqs) {
    RatVector r = primitive_direction(reduce_mod(rref_eqs, a));
    bool zero = std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; });
    if (!zero) out.insert(std::move(r));
  }
  return {out.begin(), out.end()};
}

RatVector diff(const Exponent& a, const Exponent& b) {
  RatVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace

Cone Cone::from_constraints(std::size_t n, const std::vector<RatVector>& equalities,
                            const std::vector<RatVector>& inequalities, std::string label) {
  for (const auto& a : equalities)
    if (a.size() != n) throw std::invalid_argument("Cone: equality has wrong length");
  for (const auto& a : inequalities)
    if (a.size() != n) throw std::invalid_argument("Cone: inequality has wrong length");

  RelintResult rel = relint_lp(n, equalities, inequalities);
  std::vector<RatVector> all_eqs = equalities;
  std::vector<RatVector> strict;
  for (std::size_t i = 0; i < inequalities.size(); ++i)
    (rel.implicit[i] ? all_eqs : strict).push_back(inequalities[i]);
  RatMatrix E = rref(RatMatrix::from_rows(all_eqs, n));

  std::vector<RatVector> cand = canonical_inequalities(E, strict);
  // Drop redundant inequalities one at a time: a_i is needed iff
  // max <a_i, x> over the other constraints (capped at 1) is positive.
  std::vector<bool> keep(cand.size(), true);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    LinearProgram lp;
    lp.num_vars = n;
    for (std::size_t r = 0; r < E.rows(); ++r) lp.add_eq(E.row(r), 0);
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (j != i && keep[j]) lp.add_le(cand[j], 0);
    lp.add_le(cand[i], 1);
    lp.objective = cand[i];
    LpSolution s = solve(lp);
    if (s.status == LpStatus::optimal && s.value <= 0) keep[i] = false;
  }

  Cone c;
  c.ambient_dim_ = n;
  c.equalities_ = E.row_list();
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (keep[i]) c.inequalities_.push_back(cand[i]);
  c.relint_ = rel.point;
  c.label_ = std::move(label);
  return c;
}

bool Cone::contains(std::span<const Rational> x) const {
  if (x.size() != ambient_dim_) throw std::invalid_argument("Cone::contains: dimension mismatch");
  for (const auto& a : equalities_)
    if (dot(a, x) != 0) return false;
  for (const auto& a : inequalities_)
    if (dot(a, x) > 0) return false;
  return true;
}

bool Cone::relint_contains(std::span<const Rational> x) const {
  if (x.size() != ambient_dim_) throw std::invalid_argument("Cone::relint_contains: dimension mismatch");
  for (const auto& a : equalities_)
    if (dot(a, x) != 0) return false;
  for (const auto& a : inequalities_)
    if (dot(a, x) >= 0) return false;
  return true;
}

bool relint_contains(const Cone& c, std::span<const Rational> x) { return c.relint_contains(x); }

RatSubspace lin_space(const Cone& c) {
  return RatSubspace::kernel_of(RatMatrix::from_rows(c.equalities(), c.ambient_dim()));
}

std::optional<std::size_t> Fan::find(const std::string& label) const {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i].label() == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> Fan::find(const Cone& c) const {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i].same_point_set(c)) return i;
  return std::nullopt;
}

std::size_t Fan::dim() const {
  std::size_t d = 0;
  for (const auto& c : cones) d = std::max(d, c.dim());
  return d;
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::set<std::string> faces;
  for (const auto& [face, cone] : incidence) faces.insert(face);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!faces.count(cones[i].label())) out.push_back(i);
  return out;
}

std::vector<std::size_t> Fan::cones_containing(std::size_t i) const {
  std::set<std::string> above;
  for (const auto& [face, cone] : incidence)
    if (face == cones[i].label()) above.insert(cone);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cones.size(); ++j)
    if (j == i || above.count(cones[j].label())) out.push_back(j);
  return out;
}

bool Fan::support_contains(std::span<const Rational> x) const {
  for (std::size_t i : maximal_cones())
    if (cones[i].contains(x)) return true;
  return false;
}

bool min_attained_twice(const std::vector<Exponent>& support, std::span<const Rational> x) {
  std::optional<Rational> best;
  int count = 0;
  for (const auto& u : support) {
    Rational w = pairing(u, x);
    if (!best || w < *best) {
      best = w;
      count = 1;
    } else if (w == *best) {
      ++count;
    }
  }
  return count >= 2;
}

class FanBuilder {
 public:
  explicit FanBuilder(const LaurentPoly& f) : n_(f.num_vars()), supp_(f.support()) {}

  Fan build() {
    const std::size_t s = supp_.size();
    std::deque<std::vector<std::size_t>> queue;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) enqueue(closure({i, j}), queue);

    while (!queue.empty()) {
      auto E = queue.front();
      queue.pop_front();
      Info& info = info_[E];
      for (std::size_t k = 0; k < s; ++k) {
        if (std::binary_search(E.begin(), E.end(), k)) continue;
        auto Ek = E;
        Ek.insert(std::upper_bound(Ek.begin(), Ek.end(), k), k);
        auto F = closure(Ek);
        enqueue(F, queue);
        if (info_[F].dim + 1 == info_[E].dim) info.facet_ks.push_back(k);
      }
    }

    std::vector<std::vector<std::size_t>> order;
    for (const auto& [E, info] : info_) order.push_back(E);
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      if (info_[a].dim != info_[b].dim) return info_[a].dim > info_[b].dim;
      return a < b;
    });

    Fan fan;
    fan.ambient_dim = n_;
    fan.support = supp_;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      const auto& E = order[idx];
      const Info& info = info_[E];
      Cone c;
      c.ambient_dim_ = n_;
      RatMatrix eqs = rref(RatMatrix::from_rows(tie_equalities(E), n_));
      c.equalities_ = eqs.row_list();
      std::vector<RatVector> facets;
      for (std::size_t k : info.facet_ks) facets.push_back(diff(supp_[E[0]], supp_[k]));
      c.inequalities_ = canonical_inequalities(eqs, facets);
      c.relint_ = info.relint;
      c.tie_ = E;
      c.label_ = "c" + std::to_string(idx);
      fan.cones.push_back(std::move(c));
    }
    for (const auto& face : fan.cones)
      for (const auto& cone : fan.cones) {
        const auto& a = face.tie_;
        const auto& b = cone.tie_;
        if (a.size() > b.size() && std::includes(a.begin(), a.end(), b.begin(), b.end()))
          fan.incidence.emplace_back(face.label_, cone.label_);
      }
    return fan;
  }

 private:
  struct Info {
    std::size_t dim = 0;
    RatVector relint;
    std::vector<std::size_t> facet_ks;
    bool queued = false;
  };

  std::vector<RatVector> tie_equalities(const std::vector<std::size_t>& E) const {
    std::vector<RatVector> eqs;
    for (std::size_t t = 1; t < E.size(); ++t) eqs.push_back(diff(supp_[E[t]], supp_[E[0]]));
    return eqs;
  }

  // Tie set of the relative interior of {x : E ties and is minimal}.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& E) {
    auto hit = closure_cache_.find(E);
    if (hit != closure_cache_.end()) return hit->second;
    std::vector<RatVector> ineqs;
    for (std::size_t k = 0; k < supp_.size(); ++k)
      if (!std::binary_search(E.begin(), E.end(), k)) ineqs.push_back(diff(supp_[E[0]], supp_[k]));
    RelintResult rel = relint_lp(n_, tie_equalities(E), ineqs);
    std::vector<Rational> w(supp_.size());
    for (std::size_t k = 0; k < supp_.size(); ++k) w[k] = pairing(supp_[k], rel.point);
    Rational best = *std::min_element(w.begin(), w.end());
    std::vector<std::size_t> F;
    for (std::size_t k = 0; k < supp_.size(); ++k)
      if (w[k] == best) F.push_back(k);
    if (!info_.count(F)) {
      Info info;
      info.relint = rel.point;
      info.dim = n_ - rank(RatMatrix::from_rows(tie_equalities(F), n_));
      info_.emplace(F, std::move(info));
    }
    closure_cache_.emplace(E, F);
    return F;
  }

  void enqueue(const std::vector<std::size_t>& E, std::deque<std::vector<std::size_t>>& queue) {
    Info& info = info_[E];
    if (info.queued) return;
    info.queued = true;
    queue.push_back(E);
  }

  std::size_t n_;
  std::vector<Exponent> supp_;
  std::map<std::vector<std::size_t>, Info> info_;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> closure_cache_;
};

Fan tropical_hypersurface(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("tropical_hypersurface: zero polynomial");
  if (is_monomial(f)) throw std::invalid_argument("tropical_hypersurface: monomial has empty tropical variety");
  return FanBuilder(f).build();
}

Fan star(const Fan& fan, const Cone& tau) {
  auto idx = fan.find(tau);
  if (!idx) throw std::invalid_argument("star: cone is not in the fan");
  const Cone& t = fan.cones[*idx];
  Fan out;
  out.ambient_dim = fan.ambient_dim;
  out.support = fan.support;
  std::set<std::string> kept;
  for (std::size_t j : fan.cones_containing(*idx)) {
    const Cone& sigma = fan.cones[j];
    std::vector<RatVector> active;
    for (const auto& a : sigma.inequalities())
      if (dot(a, t.relint_point()) == 0) active.push_back(a);
    out.cones.push_back(Cone::from_constraints(fan.ambient_dim, sigma.equalities(), active, sigma.label()));
    kept.insert(sigma.label());
  }
  for (const auto& [face, cone] : fan.incidence)
    if (kept.count(face) && kept.count(cone)) out.incidence.emplace_back(face, cone);
  return out;
}

Fan star(const Fan& fan, const std::string& tau_label) {
  auto idx = fan.find(tau_label);
  if (!idx) throw std::invalid_argument("star: no cone labelled " + tau_label);
  return star(fan, fan.cones[*idx]);
}

std::optional<std::string> exists_full_sum(const Fan& fan, const RatSubspace& L) {
  if (L.ambient_dim() != fan.ambient_dim) throw std::invalid_argument("exists_full_sum: dimension mismatch");
  for (const auto& c : fan.cones)
    if (sum_dim(lin_space(c), L) == fan.ambient_dim) return c.label();
  return std::nullopt;
}

bool in_cone_plus_subspace(const Cone& tau, const RatSubspace& L, std::span<const Rational> x) {
  const std::size_t n = tau.ambient_dim();
  if (L.ambient_dim() != n || x.size() != n) throw std::invalid_argument("in_cone_plus_subspace: dimension mismatch");
  if (L.dim() == 0) return tau.contains(x);
  if (L.dim() == n) return true;
  if (L.dim() == 1) {
    // x - lambda * l in tau: every constraint is affine in lambda.
    RatVector l = L.basis().row(0);
    std::optional<Rational> lo, hi;
    auto restrict_le = [&](const Rational& c0, const Rational& c1) {  // c0 - lambda c1 <= 0
      if (c1 == 0) return c0 <= 0;
      Rational bound = c0 / c1;
      if (c1 > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
      return true;
    };
    for (const auto& a : tau.equalities()) {
      Rational c0 = dot(a, x), c1 = dot(a, l);
      if (!restrict_le(c0, c1) || !restrict_le(-c0, -c1)) return false;
    }
    for (const auto& a : tau.inequalities())
      if (!restrict_le(dot(a, x), dot(a, l))) return false;
    return !lo || !hi || *lo <= *hi;
  }
  RatMatrix P = L.orthogonal_complement().basis();
  LinearProgram lp;
  lp.num_vars = n;
  for (const auto& a : tau.equalities()) lp.add_eq(a, 0);
  for (const auto& a : tau.inequalities()) lp.add_le(a, 0);
  for (std::size_t i = 0; i < P.rows(); ++i) lp.add_eq(P.row(i), dot(P.row(i), x));
  return solve(lp).status != LpStatus::infeasible;
}

CoverageResult covering_check_sampled(const Fan& fan, const RatSubspace& L, std::size_t samples,
                                      const Rational& box, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("covering_check_sampled: samples must be positive");
  const std::size_t n = fan.ambient_dim;
  const auto maximal = fan.maximal_cones();
  Rng rng(seed);
  CoverageResult r;
  RatVector x(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& c : x) c = box * make_rational(rng.uniform_int(-1024, 1024), 1024);
    ++r.total;
    for (std::size_t i : maximal)
      if (in_cone_plus_subspace(fan.cones[i], L, x)) {
        ++r.hits;
        break;
      }
  }
  return r;
}

std::size_t project_support_dim(const Fan& fan, const RatMatrix& P) {
  if (P.cols() != fan.ambient_dim) throw std::invalid_argument("project_support_dim: P has the wrong width");
  std::size_t best = 0;
  for (const auto& c : fan.cones) {
    RatMatrix B = lin_space(c).basis();
    best = std::max(best, rank(P * B.transpose()));
  }
  return best;
}

}  // namespace torusx
