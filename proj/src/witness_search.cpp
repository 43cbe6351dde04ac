// Search for points z at which exactly one group polynomial is nonzero on
// every component of the fiber. Nothing here proves anything: candidates
// are accepted only after exact re-evaluation in characteristic zero.
#include "torusx/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <numeric>

namespace torusx {

namespace {

std::vector<CycloNumber> grid_values(const SearchEffort& effort) {
  std::vector<CycloNumber> values;
  for (long h = 1; h <= effort.height; ++h) {
    // reduced p/q with max(|p|, q) = h, ordered by q, then |p|, positive first
    for (long q = 1; q <= h; ++q) {
      std::vector<long> ps;
      if (q < h) {
        ps.push_back(h);
      } else {
        for (long p = 1; p <= h; ++p) ps.push_back(p);
      }
      for (long p : ps) {
        if (std::gcd(p, q) != 1) continue;
        values.emplace_back(make_rational(p, q));
        values.emplace_back(make_rational(-p, q));
      }
    }
  }
  for (unsigned long m = 3; m <= effort.root_order; ++m)
    for (unsigned long k = 1; k < m; ++k)
      if (std::gcd(k, m) == 1) values.push_back(CycloNumber::root_of_unity(m, static_cast<long>(k)));
  return values;
}

// Visits index tuples in [0, L)^r shell by shell (by largest index), each
// shell in lexicographic order. Stops after `budget` tuples or when `fn`
// returns true.
bool for_each_shell_tuple(std::size_t r, std::size_t L, std::size_t budget,
                          const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t(r, 0);
  if (r == 0) return budget > 0 && fn(t);
  std::size_t used = 0;
  for (std::size_t s = 0; s < L; ++s) {
    std::fill(t.begin(), t.end(), 0);
    for (;;) {
      bool on_shell = std::find(t.begin(), t.end(), s) != t.end();
      if (on_shell) {
        if (used++ >= budget) return false;
        if (fn(t)) return true;
      }
      std::size_t i = r;
      while (i > 0) {
        --i;
        if (++t[i] <= s) break;
        t[i] = 0;
        if (i == 0) goto next_shell;
      }
    }
  next_shell:;
  }
  return false;
}

long mod_pow(long base, long exp, long q) {
  exp %= (q - 1);
  if (exp < 0) exp += q - 1;
  long r = 1;
  base %= q;
  while (exp > 0) {
    if (exp & 1) r = r * base % q;
    base = base * base % q;
    exp >>= 1;
  }
  return r;
}

class WitnessSearch {
 public:
  WitnessSearch(const std::map<long, LaurentPoly>& groups, const std::vector<TorsionPoint>& components, std::size_t n,
                const SearchEffort& effort)
      : groups_(groups), n_(n), effort_(effort) {
    for (const auto& c : components) comps_.push_back(c.coordinates());
    if (comps_.empty()) comps_.push_back(std::vector<CycloNumber>(n, CycloNumber(1)));
  }

  std::optional<std::vector<CycloNumber>> run() {
    values_ = grid_values(effort_);
    if (auto z = solve_stage()) return z;
    if (auto z = grid_stage()) return z;
    if (auto z = finite_field_stage()) return z;
    return std::nullopt;
  }

  bool is_witness(const std::vector<CycloNumber>& z) const {
    for (const auto& c : z)
      if (c.is_zero()) return false;
    std::vector<CycloNumber> w(n_);
    for (const auto& zeta : comps_) {
      for (std::size_t j = 0; j < n_; ++j) w[j] = z[j] * zeta[j];
      int nonzero = 0;
      for (const auto& [e, p] : groups_) {
        if (!p.evaluate(w).is_zero() && ++nonzero > 1) return false;
      }
      if (nonzero != 1) return false;
    }
    return true;
  }

 private:
  // Pick a target group; all other groups must vanish. When the vanishing
  // group with fewest terms is linear in some coordinate, solve for it.
  std::optional<std::vector<CycloNumber>> solve_stage() const {
    for (const auto& [target, tp] : groups_) {
      const LaurentPoly* p = nullptr;
      bool hopeless = false;
      for (const auto& [e, q] : groups_) {
        if (e == target) continue;
        if (q.size() == 1) hopeless = true;  // a monomial never vanishes
        if (!p || q.size() < p->size()) p = &q;
      }
      if (hopeless || !p) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        std::set<long> ex;
        for (const auto& [u, c] : p->terms()) ex.insert(u[j]);
        if (ex.size() != 2 || *ex.rbegin() != *ex.begin() + 1) continue;
        const long k0 = *ex.begin();
        LaurentPoly a(n_), b(n_);
        for (const auto& [u, c] : p->terms()) {
          Exponent w = u;
          w[j] = 0;
          (u[j] == k0 ? a : b).add_term(w, c);
        }
        std::optional<std::vector<CycloNumber>> found;
        std::vector<CycloNumber> z(n_, CycloNumber(1));
        for_each_shell_tuple(n_ - 1, values_.size(), effort_.grid_budget, [&](const std::vector<std::size_t>& t) {
          for (std::size_t i = 0, k = 0; i < n_; ++i) z[i] = i == j ? CycloNumber(1) : values_[t[k++]];
          CycloNumber bv = b.evaluate(z);
          if (bv.is_zero()) return false;
          CycloNumber zj = -(a.evaluate(z) / bv);
          if (zj.is_zero()) return false;
          z[j] = zj;
          if (!is_witness(z)) return false;
          found = z;
          return true;
        });
        if (found) return found;
        break;  // one coordinate per target is enough
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<CycloNumber>> grid_stage() const {
    std::optional<std::vector<CycloNumber>> found;
    std::vector<CycloNumber> z(n_);
    for_each_shell_tuple(n_, values_.size(), effort_.grid_budget, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i < n_; ++i) z[i] = values_[t[i]];
      if (!is_witness(z)) return false;
      found = z;
      return true;
    });
    return found;
  }

  // Screening over (F_q^*)^n: points where exactly one group vanishes not
  // are lifted to symmetric integer representatives and re-checked exactly.
  std::optional<std::vector<CycloNumber>> finite_field_stage() const {
    for (const auto& [e, p] : groups_)
      for (const auto& [u, c] : p.terms())
        if (!c.is_rational()) return std::nullopt;
    for (unsigned long qu : effort_.primes) {
      const long q = static_cast<long>(qu);
      double count = std::pow(static_cast<double>(q - 1), static_cast<double>(n_));
      if (count > 200000) continue;
      struct Term {
        long coef;
        const Exponent* u;
      };
      std::vector<std::vector<Term>> reduced;
      bool ok = true;
      for (const auto& [e, p] : groups_) {
        std::vector<Term> ts;
        for (const auto& [u, c] : p.terms()) {
          const Rational& r = c.rational_value();
          Integer num = r.get_num() % q, den = r.get_den() % q;
          if (den == 0) {
            ok = false;
            break;
          }
          Integer inv;
          mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(q).get_mpz_t());
          Integer v = (num * inv) % q;
          if (v < 0) v += q;
          ts.push_back({v.get_si(), &u});
        }
        reduced.push_back(std::move(ts));
      }
      if (!ok) continue;
      std::vector<long> z(n_, 1);
      std::size_t exact_checks = 0;
      for (;;) {
        int nonzero = 0;
        for (const auto& ts : reduced) {
          long s = 0;
          for (const auto& t : ts) {
            long m = t.coef;
            for (std::size_t j = 0; j < n_; ++j)
              if ((*t.u)[j] != 0) m = m * mod_pow(z[j], (*t.u)[j], q) % q;
            s = (s + m) % q;
          }
          if (s != 0) ++nonzero;
        }
        if (nonzero == 1 && exact_checks < 500) {
          ++exact_checks;
          std::vector<CycloNumber> lift(n_);
          for (std::size_t j = 0; j < n_; ++j) lift[j] = CycloNumber(z[j] <= q / 2 ? z[j] : z[j] - q);
          if (is_witness(lift)) return lift;
        }
        std::size_t i = n_;
        while (i > 0) {
          --i;
          if (++z[i] < q) break;
          z[i] = 1;
          if (i == 0) goto next_prime;
        }
        if (n_ == 0) break;
      }
    next_prime:;
    }
    return std::nullopt;
  }

  const std::map<long, LaurentPoly>& groups_;
  std::size_t n_;
  SearchEffort effort_;
  std::vector<std::vector<CycloNumber>> comps_;
  std::vector<CycloNumber> values_;
};

}  // namespace

std::optional<std::vector<CycloNumber>> find_empty_fiber_witness(const std::map<long, LaurentPoly>& groups,
                                                                 const std::vector<TorsionPoint>& components,
                                                                 std::size_t n, const SearchEffort& effort) {
  if (groups.empty()) return std::nullopt;
  return WitnessSearch(groups, components, n, effort).run();
}

}  // namespace torusx
