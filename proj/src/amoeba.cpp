#include "torusx/amoeba.hpp"

#include "torusx/random.hpp"
#include "torusx/text.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

namespace torusx {

namespace {

using cld = std::complex<long double>;

template <class T>
std::complex<T> horner(const std::vector<std::complex<T>>& c, std::complex<T> t) {
  std::complex<T> s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * t + c[k];
  return s;
}

template <class T>
std::vector<std::complex<T>> roots_impl(const std::vector<std::complex<T>>& coeffs, T tol, int max_iter) {
  using C = std::complex<T>;
  if (coeffs.size() < 2) throw std::invalid_argument("univariate_roots: degree must be at least 1");
  const std::size_t deg = coeffs.size() - 1;
  if (coeffs.back() == C(0)) throw std::invalid_argument("univariate_roots: leading coefficient is zero");
  std::vector<C> a(coeffs.size());
  for (std::size_t k = 0; k <= deg; ++k) a[k] = coeffs[k] / coeffs.back();

  T bound = 0;  // Cauchy bound
  for (std::size_t k = 0; k < deg; ++k) bound = std::max(bound, std::abs(a[k]));
  bound += 1;
  std::vector<C> z(deg);
  const C seed(T(0.4), T(0.9));
  C w = 1;
  for (std::size_t k = 0; k < deg; ++k) {
    z[k] = bound * T(0.5) * w;
    w *= seed;
  }
  const T eps = std::numeric_limits<T>::epsilon();
  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    T change = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      C den = 1;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) den *= z[i] - z[j];
      if (den == C(0)) den = C(eps, eps);
      C step = horner(a, z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
    }
    converged = change <= 16 * eps;
  }

  std::vector<C> da(deg);
  for (std::size_t k = 1; k <= deg; ++k) da[k - 1] = a[k] * T(k);
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      C d = horner(da, r);
      if (d == C(0)) break;
      C step = horner(a, r) / d;
      if (!std::isfinite(std::abs(step))) break;
      r -= step;
    }
    T scale = 0, p = 1;
    for (std::size_t k = 0; k <= deg; ++k, p *= std::abs(r)) scale += std::abs(coeffs[k]) * p;
    if (!(std::abs(horner(coeffs, r)) <= tol * (1 + scale)))
      throw std::runtime_error("univariate_roots: no convergence within the iteration cap");
  }
  return z;
}

struct Term {
  Exponent u;
  cld c;
};

std::vector<Term> complex_terms(const LaurentPoly& f) {
  std::vector<Term> ts;
  for (const auto& [u, c] : f.terms()) {
    auto z = c.to_complex();
    ts.push_back({u, cld(z.real(), z.imag())});
  }
  return ts;
}

cld ipow(cld x, long k) {
  if (k < 0) return cld(1) / ipow(x, -k);
  cld r = 1;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

long double residual_ld(const std::vector<Term>& ts, const std::vector<std::complex<double>>& w) {
  cld s = 0;
  for (const auto& t : ts) {
    cld m = t.c;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (t.u[j] != 0) m *= ipow(cld(w[j].real(), w[j].imag()), t.u[j]);
    s += m;
  }
  return std::abs(s);
}

RatMatrix invert(RatMatrix m) {
  const std::size_t k = m.rows();
  RatMatrix inv = RatMatrix::identity(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (m(p, c) == 0) ++p;
    for (std::size_t j = 0; j < k; ++j) {
      std::swap(m(c, j), m(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    Rational s = 1 / m(c, c);
    for (std::size_t j = 0; j < k; ++j) {
      m(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < k; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Orthogonal projections onto the spans of the cones. The nearest point of
// the support lies in the relative interior of some cone, where it is the
// projection onto that cone's span; so it suffices to try every cone.
class FanProjector {
 public:
  explicit FanProjector(const Fan& fan) : fan_(fan) {
    for (const auto& c : fan.cones) {
      RatMatrix B = lin_space(c).basis();
      const std::size_t n = fan.ambient_dim;
      if (B.rows() == 0) {
        proj_.emplace_back(n, n);
        continue;
      }
      RatMatrix G = B * B.transpose();
      proj_.push_back(B.transpose() * invert(G) * B);
    }
  }

  double distance(const std::vector<double>& x) const {
    const std::size_t n = fan_.ambient_dim;
    RatVector xr(n);
    for (std::size_t j = 0; j < n; ++j) xr[j] = Rational(x[j]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fan_.cones.size(); ++i) {
      RatVector y(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (proj_[i](r, c) != 0) y[r] += proj_[i](r, c) * xr[c];
      if (!fan_.cones[i].contains(y)) continue;
      Rational d2 = 0;
      for (std::size_t j = 0; j < n; ++j) d2 += (xr[j] - y[j]) * (xr[j] - y[j]);
      best = std::min(best, std::sqrt(d2.get_d()));
    }
    return best;
  }

 private:
  const Fan& fan_;
  std::vector<RatMatrix> proj_;
};

// Orthonormal basis (Gram-Schmidt) of the rational subspace, in doubles.
std::vector<std::vector<double>> orthonormal(const RatSubspace& L) {
  std::vector<std::vector<double>> q;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    std::vector<double> v(L.ambient_dim());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = L.basis()(i, j).get_d();
    for (const auto& e : q) {
      double d = 0;
      for (std::size_t j = 0; j < v.size(); ++j) d += v[j] * e[j];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= d * e[j];
    }
    double nrm = 0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    q.push_back(std::move(v));
  }
  return q;
}

}  // namespace

std::vector<std::complex<double>> univariate_roots(const std::vector<std::complex<double>>& coeffs, double tol,
                                                   int max_iter) {
  return roots_impl<double>(coeffs, tol, max_iter);
}

std::vector<std::complex<long double>> univariate_roots(const std::vector<std::complex<long double>>& coeffs,
                                                        long double tol, int max_iter) {
  return roots_impl<long double>(coeffs, tol, max_iter);
}

double residual(const LaurentPoly& f, const std::vector<std::complex<double>>& w) {
  if (w.size() != f.num_vars()) throw std::invalid_argument("residual: point has the wrong dimension");
  return static_cast<double>(residual_ld(complex_terms(f), w));
}

PointCloud sample_amoeba(const LaurentPoly& f, std::size_t count, double log_box, std::uint64_t seed,
                         const AmoebaOptions& opts) {
  const std::size_t n = f.num_vars();
  if (f.is_zero() || is_monomial(f)) throw std::invalid_argument("sample_amoeba: f must have at least two terms");
  if (!(log_box >= 0)) throw std::invalid_argument("sample_amoeba: log_box must be nonnegative");
  std::vector<std::size_t> solvable;
  for (std::size_t j = 0; j < n; ++j) {
    const long e0 = f.terms().begin()->first[j];
    for (const auto& [u, c] : f.terms())
      if (u[j] != e0) {
        solvable.push_back(j);
        break;
      }
  }
  if (solvable.empty()) throw std::invalid_argument("sample_amoeba: f depends on no variable");

  const auto terms = complex_terms(f);
  PointCloud cloud;
  cloud.ambient_dim = n;
  cloud.meta = PointCloudMeta{to_string(f), seed, count, log_box, opts.residual_tol, opts.policy, 0, 0};
  const std::size_t max_draws = opts.max_draws_factor * std::max<std::size_t>(count, 1) + 100;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;

  for (std::uint64_t i = 0; cloud.points.size() < count; ++i) {
    if (i >= max_draws) throw std::runtime_error("sample_amoeba: too many rejected draws");
    ++cloud.meta.draws;
    Rng rng(seed ^ i);
    const std::size_t s = opts.policy == SolvePolicy::highest ? solvable.back() : solvable[i % solvable.size()];
    std::vector<cld> w(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == s) continue;
      long double rho = rng.uniform(-log_box, log_box);
      long double theta = two_pi * rng.uniform01();
      w[j] = std::polar(std::exp(rho), theta);
    }
    long lo = 0, hi = 0;
    bool first = true;
    for (const auto& t : terms) {
      lo = first ? t.u[s] : std::min(lo, t.u[s]);
      hi = first ? t.u[s] : std::max(hi, t.u[s]);
      first = false;
    }
    std::vector<cld> a(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& t : terms) {
      cld m = t.c;
      for (std::size_t j = 0; j < n; ++j)
        if (j != s && t.u[j] != 0) m *= ipow(w[j], t.u[j]);
      a[static_cast<std::size_t>(t.u[s] - lo)] += m;
    }
    while (a.size() > 1 && a.back() == cld(0)) a.pop_back();
    std::size_t start = 0;
    while (start < a.size() && a[start] == cld(0)) ++start;
    a.erase(a.begin(), a.begin() + static_cast<long>(start));
    if (a.size() < 2) continue;

    std::vector<cld> roots;
    try {
      roots = univariate_roots(a, 1e-15L);
    } catch (const std::runtime_error&) {
      ++cloud.meta.rejected;
      continue;
    }
    for (const auto& r : roots) {
      if (cloud.points.size() == count) break;
      std::vector<std::complex<double>> wd(n);
      for (std::size_t j = 0; j < n; ++j) {
        cld x = j == s ? r : w[j];
        wd[j] = std::complex<double>(static_cast<double>(x.real()), static_cast<double>(x.imag()));
      }
      bool finite = true;
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = -std::log(std::abs(wd[j]));
        finite = finite && std::isfinite(p[j]);
      }
      if (!finite || !(residual_ld(terms, wd) <= opts.residual_tol)) {
        ++cloud.meta.rejected;
        continue;
      }
      cloud.points.push_back(std::move(p));
      cloud.witnesses.push_back(std::move(wd));
    }
  }
  return cloud;
}

double covering_deficiency(const PointCloud& cloud, const RatSubspace& L, double half_width, double step,
                           double radius) {
  if (!(radius > 0)) throw std::invalid_argument("covering_deficiency: radius must be positive");
  if (!(step > 0)) throw std::invalid_argument("covering_deficiency: step must be positive");
  const std::size_t n = cloud.ambient_dim;
  if (L.ambient_dim() != n) throw std::invalid_argument("covering_deficiency: ambient dimension mismatch");
  const auto Q = orthonormal(L);
  auto reduce = [&](std::vector<double> v) {
    for (const auto& e : Q) {
      double d = 0;
      for (std::size_t j = 0; j < n; ++j) d += v[j] * e[j];
      for (std::size_t j = 0; j < n; ++j) v[j] -= d * e[j];
    }
    return v;
  };
  // bucket the reduced cloud by cells of side `radius`; a hit is always in
  // one of the 3^n neighbouring cells
  auto cell_of = [&](const std::vector<double>& v) {
    std::vector<long> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = static_cast<long>(std::floor(v[j] / radius));
    return c;
  };
  std::map<std::vector<long>, std::vector<std::vector<double>>> buckets;
  for (const auto& p : cloud.points) {
    auto v = reduce(p);
    buckets[cell_of(v)].push_back(std::move(v));
  }
  const double r2 = radius * radius;
  auto covered = [&](const std::vector<double>& g) {
    const auto c0 = cell_of(g);
    std::vector<long> off(n, -1);
    for (;;) {
      std::vector<long> c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = c0[j] + off[j];
      auto it = buckets.find(c);
      if (it != buckets.end()) {
        for (const auto& p : it->second) {
          double d2 = 0;
          for (std::size_t j = 0; j < n && d2 <= r2; ++j) d2 += (g[j] - p[j]) * (g[j] - p[j]);
          if (d2 <= r2) return true;
        }
      }
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++off[i] <= 1) break;
        off[i] = -1;
        if (i == 0) return false;
      }
      if (n == 0) return false;
    }
  };

  const long K = static_cast<long>(std::floor(half_width / step + 1e-9));
  std::vector<long> k(n, -K);
  std::size_t total = 0, missed = 0;
  for (;;) {
    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = static_cast<double>(k[j]) * step;
    ++total;
    missed += !covered(reduce(g));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++k[i] <= K) break;
      k[i] = -K;
      if (i == 0) return static_cast<double>(missed) / static_cast<double>(total);
    }
    if (n == 0) return static_cast<double>(missed) / static_cast<double>(total);
  }
}

double distance_to_support(const Fan& fan, const std::vector<double>& x) {
  if (x.size() != fan.ambient_dim) throw std::invalid_argument("distance_to_support: dimension mismatch");
  return FanProjector(fan).distance(x);
}

double trop_consistency(const PointCloud& cloud, const Fan& fan, double scale) {
  if (!(scale > 0)) throw std::invalid_argument("trop_consistency: scale must be positive");
  if (cloud.ambient_dim != fan.ambient_dim && !cloud.points.empty())
    throw std::invalid_argument("trop_consistency: dimension mismatch");
  FanProjector proj(fan);
  double worst = 0;
  for (const auto& p : cloud.points) {
    std::vector<double> x(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) x[j] = p[j] / scale;
    worst = std::max(worst, proj.distance(x));
  }
  return worst;
}

std::string to_csv(const PointCloud& cloud) {
  std::string out;
  char buf[40];
  for (const auto& p : cloud.points) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.16e", p[j]);
      if (j) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string to_string(SolvePolicy p) { return p == SolvePolicy::highest ? "highest" : "round_robin"; }

}  // namespace torusx
