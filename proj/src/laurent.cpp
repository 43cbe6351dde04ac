#include "torusx/laurent.hpp"

#include "torusx/lp.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>

namespace torusx {

LaurentPoly LaurentPoly::monomial(std::size_t num_vars, Exponent u, CycloNumber c) {
  LaurentPoly f(num_vars);
  f.add_term(u, c);
  return f;
}

LaurentPoly LaurentPoly::constant(std::size_t num_vars, CycloNumber c) {
  return monomial(num_vars, Exponent(num_vars, 0), std::move(c));
}

void LaurentPoly::add_term(const Exponent& u, const CycloNumber& c) {
  if (u.size() != num_vars_) throw std::invalid_argument("LaurentPoly::add_term: exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(u, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::vector<Exponent> LaurentPoly::support() const {
  std::vector<Exponent> s;
  s.reserve(terms_.size());
  for (const auto& [u, c] : terms_) s.push_back(u);
  return s;
}

unsigned long LaurentPoly::conductor() const {
  unsigned long m = 1;
  for (const auto& [u, c] : terms_) m = std::lcm(m, c.conductor());
  return m;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(num_vars_);
  for (const auto& [u, c] : terms_) r.terms_.emplace(u, -c);
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("LaurentPoly: variable count mismatch");
  LaurentPoly r = a;
  for (const auto& [u, c] : b.terms_) r.add_term(u, c);
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("LaurentPoly: variable count mismatch");
  LaurentPoly r(a.num_vars_);
  Exponent w(a.num_vars_);
  for (const auto& [u, c] : a.terms_)
    for (const auto& [v, d] : b.terms_) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = u[i] + v[i];
      r.add_term(w, c * d);
    }
  return r;
}

LaurentPoly operator*(const CycloNumber& s, const LaurentPoly& f) {
  LaurentPoly r(f.num_vars_);
  for (const auto& [u, c] : f.terms_) r.add_term(u, s * c);
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exponent& shift) const {
  if (shift.size() != num_vars_) throw std::invalid_argument("LaurentPoly::shifted: length mismatch");
  LaurentPoly r(num_vars_);
  for (const auto& [u, c] : terms_) {
    Exponent w = u;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += shift[i];
    r.terms_.emplace(std::move(w), c);
  }
  return r;
}

CycloNumber LaurentPoly::evaluate(std::span<const CycloNumber> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("LaurentPoly::evaluate: dimension mismatch");
  for (const auto& z : point)
    if (z.is_zero()) throw std::invalid_argument("LaurentPoly::evaluate: zero coordinate");
  std::vector<std::map<long, CycloNumber>> powers(num_vars_);
  auto power = [&](std::size_t j, long e) -> const CycloNumber& {
    auto it = powers[j].find(e);
    if (it == powers[j].end()) it = powers[j].emplace(e, point[j].pow(e)).first;
    return it->second;
  };
  CycloNumber s;
  for (const auto& [u, c] : terms_) {
    CycloNumber t = c;
    for (std::size_t j = 0; j < num_vars_; ++j)
      if (u[j] != 0) t *= power(j, u[j]);
    s += t;
  }
  return s;
}

std::complex<double> LaurentPoly::evaluate(std::span<const std::complex<double>> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("LaurentPoly::evaluate: dimension mismatch");
  std::complex<double> s = 0;
  for (const auto& [u, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t j = 0; j < num_vars_; ++j)
      if (u[j] != 0) t *= std::pow(point[j], static_cast<int>(u[j]));
    s += t;
  }
  return s;
}

Rational pairing(const Exponent& u, std::span<const Rational> gamma) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) s += gamma[i] * u[i];
  return s;
}

long pairing(const Exponent& u, std::span<const long> v) {
  long s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

LaurentPoly initial_form(const LaurentPoly& f, std::span<const Rational> gamma) {
  if (f.is_zero()) throw std::invalid_argument("initial_form: zero polynomial");
  if (gamma.size() != f.num_vars()) throw std::invalid_argument("initial_form: weight length mismatch");
  std::optional<Rational> best;
  for (const auto& [u, c] : f.terms()) {
    Rational w = pairing(u, gamma);
    if (!best || w < *best) best = w;
  }
  LaurentPoly r(f.num_vars());
  for (const auto& [u, c] : f.terms())
    if (pairing(u, gamma) == *best) r.add_term(u, c);
  return r;
}

LaurentPoly substitute_monomial(const LaurentPoly& f, std::span<const CycloNumber> z, const IntMatrix& B) {
  const std::size_t n = f.num_vars();
  if (z.size() != n) throw std::invalid_argument("substitute_monomial: base point dimension mismatch");
  if (B.rows() != n) throw std::invalid_argument("substitute_monomial: B must have one row per variable");
  for (const auto& c : z)
    if (c.is_zero()) throw std::invalid_argument("substitute_monomial: zero coordinate in base point");
  const std::size_t d = B.cols();
  std::vector<std::vector<long>> Bl(n, std::vector<long>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (!B(i, k).fits_slong_p()) throw std::overflow_error("substitute_monomial: exponent too large");
      Bl[i][k] = B(i, k).get_si();
    }
  std::vector<std::map<long, CycloNumber>> powers(n);
  LaurentPoly g(d);
  for (const auto& [u, c] : f.terms()) {
    Exponent e(d, 0);
    CycloNumber coef = c;
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t k = 0; k < d; ++k) e[k] += u[i] * Bl[i][k];
      auto it = powers[i].find(u[i]);
      if (it == powers[i].end()) it = powers[i].emplace(u[i], z[i].pow(u[i])).first;
      coef *= it->second;
    }
    g.add_term(e, coef);
  }
  return g;
}

IntLattice stabilizer_lattice(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("stabilizer_lattice: zero polynomial");
  const std::size_t n = f.num_vars();
  auto supp = f.support();
  IntMatrix diffs(supp.size() - 1, n);
  for (std::size_t i = 1; i < supp.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) diffs(i - 1, j) = supp[i][j] - supp[0][j];
  return kernel_lattice(diffs);
}

Polytope newton_polytope(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("newton_polytope: zero polynomial");
  const std::size_t n = f.num_vars();
  auto supp = f.support();
  Polytope p{n, {}};
  for (std::size_t k = 0; k < supp.size(); ++k) {
    // Is supp[k] a convex combination of the other support points?
    const std::size_t m = supp.size() - 1;
    LinearProgram lp;
    lp.num_vars = m;
    for (std::size_t j = 0; j < n; ++j) {
      RatVector row;
      for (std::size_t i = 0; i < supp.size(); ++i)
        if (i != k) row.emplace_back(supp[i][j]);
      lp.add_eq(std::move(row), Rational(supp[k][j]));
    }
    lp.add_eq(RatVector(m, Rational(1)), Rational(1));
    for (std::size_t i = 0; i < m; ++i) {
      RatVector row(m);
      row[i] = -1;
      lp.add_le(std::move(row), Rational(0));
    }
    if (m == 0 || solve(lp).status == LpStatus::infeasible) p.vertices.push_back(supp[k]);
  }
  return p;
}

bool is_monomial(const LaurentPoly& f) { return f.size() == 1; }

}  // namespace torusx
