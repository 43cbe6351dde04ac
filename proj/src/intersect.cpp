#include "torusx/intersect.hpp"

#include "torusx/random.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace torusx {

namespace {

void require_non_monomial(const LaurentPoly& f, const char* who) {
  if (f.is_zero()) throw std::invalid_argument(std::string(who) + ": polynomial is zero");
  if (is_monomial(f)) throw std::invalid_argument(std::string(who) + ": polynomial is a monomial");
}

std::vector<long> to_longs(std::span<const Integer> v) {
  std::vector<long> out;
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in a machine word");
    out.push_back(x.get_si());
  }
  return out;
}

// first nonzero entry positive
void orient(std::vector<long>& v) {
  for (long x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    return;
  }
}

Rational power_of_two(long e) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(std::labs(e)));
  return e >= 0 ? Rational(p) : make_rational(1, p);
}

}  // namespace

IntersectionVerdict coset_intersects(const LaurentPoly& f, const Coset& c) {
  if (f.is_zero()) throw std::invalid_argument("coset_intersects: polynomial is zero");
  c.validate();
  if (f.num_vars() != c.torus.ambient_dim())
    throw std::invalid_argument("coset_intersects: ambient dimension mismatch");
  IntersectionVerdict v;
  v.g = substitute_monomial(f, c.base, c.torus.param());
  if (v.g.is_zero())
    v.status = IntersectionStatus::CosetContained;
  else if (is_monomial(v.g))
    v.status = IntersectionStatus::Empty;
  else
    v.status = IntersectionStatus::NonEmpty;
  return v;
}

bool is_geometrically_non_degenerate(const LaurentPoly& f) {
  require_non_monomial(f, "is_geometrically_non_degenerate");
  return stabilizer_lattice(f).rank() == 0;
}

bool is_rotund_product(const Fan& trop, const RatSubspace& L) {
  if (L.ambient_dim() != trop.ambient_dim) throw std::invalid_argument("is_rotund_product: ambient dimension mismatch");
  if (L.dim() == 0) throw std::invalid_argument("is_rotund_product: L is trivial");
  return exists_full_sum(trop, L).has_value();
}

bool is_rotund_product(const LaurentPoly& f, const RatSubspace& L) {
  require_non_monomial(f, "is_rotund_product");
  if (L.dim() == 0) throw std::invalid_argument("is_rotund_product: L is trivial");
  return is_rotund_product(tropical_hypersurface(f), L);
}

bool check_j_tau_stabilizes(const LaurentPoly& f, const Fan& trop, const Cone& tau) {
  if (!trop.find(tau)) throw std::invalid_argument("check_j_tau_stabilizes: cone is not in the fan");
  Subtorus J = j_tau(tau);
  LaurentPoly in = initial_form(f, tau.relint_point());
  auto supp = in.support();
  for (std::size_t k = 0; k < J.dim(); ++k) {
    auto v = to_longs(J.param().col(k));
    const long e0 = pairing(supp.front(), v);
    for (const auto& u : supp)
      if (pairing(u, v) != e0) return false;
  }
  return true;
}

bool check_j_tau_stabilizes(const LaurentPoly& f, const Cone& tau) {
  return check_j_tau_stabilizes(f, tropical_hypersurface(f), tau);
}

std::map<long, LaurentPoly> group_polynomials(const LaurentPoly& f, std::span<const long> v) {
  if (v.size() != f.num_vars()) throw std::invalid_argument("group_polynomials: direction has the wrong length");
  if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }))
    throw std::invalid_argument("group_polynomials: direction is zero");
  std::map<long, LaurentPoly> groups;
  for (const auto& [u, c] : f.terms()) groups.try_emplace(pairing(u, v), f.num_vars()).first->second.add_term(u, c);
  return groups;
}

SurjectivityVerdict surjectivity_decide(const LaurentPoly& f, const IntMatrix& A, const SearchEffort& effort) {
  const std::size_t n = f.num_vars();
  if (n == 0) throw std::invalid_argument("surjectivity_decide: no variables");
  if (A.cols() != n || A.rows() != n - 1)
    throw std::invalid_argument("surjectivity_decide: A must be (n-1) x n");
  require_non_monomial(f, "surjectivity_decide");
  SurjectivityVerdict out;

  if (rank(A) < n - 1) {
    // image lies in {y^c = 1}; y_i = 2^{c_i} gives y^c = 2^{|c|^2} != 1
    IntLattice left = kernel_lattice(A.transpose());
    auto c = to_longs(left.basis().row(0));
    std::vector<Rational> y;
    for (long ci : c) y.push_back(power_of_two(ci));
    out.status = SurjectivityStatus::NotSurjective;
    out.reason = "rank of A is below n-1; the image lies in a proper subtorus";
    out.target = std::move(y);
    out.target_character = std::move(c);
    return out;
  }

  out.kernel = to_longs(kernel_lattice(A).basis().row(0));
  orient(out.kernel);
  out.components = component_representatives(A);
  out.groups = group_polynomials(f, out.kernel);
  if (out.components.size() > effort.max_components) {
    out.status = SurjectivityStatus::Unknown;
    out.reason = "too many components in the fiber";
    return out;
  }

  std::vector<long> singles;
  for (const auto& [e, p] : out.groups)
    if (p.size() == 1) singles.push_back(e);
  if (out.groups.size() > 1 && singles.size() >= 2) {
    auto is_constant = [&](long e) {
      const auto& u = out.groups.at(e).terms().begin()->first;
      return std::all_of(u.begin(), u.end(), [](long x) { return x == 0; });
    };
    auto first = std::find_if(singles.begin(), singles.end(), is_constant);
    long a = first != singles.end() ? *first : singles[0];
    long b = a == singles[0] ? singles[1] : singles[0];
    out.status = SurjectivityStatus::Surjective;
    out.reason = "two groups are single terms and never vanish";
    out.certificate = std::make_pair(a, b);
    return out;
  }

  // With a single-term group present, every other group has to vanish on
  // all components of an empty fiber.
  if (out.groups.size() > 1 && singles.size() == 1) {
    for (const auto& [e, p] : out.groups) {
      if (e == singles[0] || !vanishing_on_all_components_impossible(p, out.components)) continue;
      out.status = SurjectivityStatus::Surjective;
      out.reason = "a group cannot vanish on every component while another is a single term";
      out.certificate = std::make_pair(singles[0], e);
      out.component_system = true;
      return out;
    }
  }

  auto z = find_empty_fiber_witness(out.groups, out.components, n, effort);
  if (z) {
    // every component coset must miss W
    Subtorus H = Subtorus::from_direction(out.kernel);
    bool ok = true;
    for (const auto& zeta : out.components) {
      auto zc = zeta.coordinates();
      std::vector<CycloNumber> base(n);
      for (std::size_t j = 0; j < n; ++j) base[j] = (*z)[j] * zc[j];
      if (coset_intersects(f, Coset{H, base}).status != IntersectionStatus::Empty) {
        ok = false;
        break;
      }
    }
    if (!ok) throw std::logic_error("surjectivity_decide: witness failed re-verification");
    out.status = SurjectivityStatus::NotSurjective;
    out.reason = out.groups.size() == 1 ? "the kernel direction stabilizes W" : "found a fiber disjoint from W";
    out.witness = std::move(z);
    return out;
  }
  out.status = SurjectivityStatus::Unknown;
  out.reason = "no witness found within the search effort";
  return out;
}

bool vanishing_on_all_components_impossible(const LaurentPoly& p, const std::vector<TorsionPoint>& components) {
  if (p.is_zero()) return false;
  if (p.size() == 1) return true;
  // rows: components; columns: monomials of p
  std::vector<std::vector<CycloNumber>> m;
  for (const auto& zeta : components) {
    auto zc = zeta.coordinates();
    std::vector<CycloNumber> row;
    for (const auto& [u, c] : p.terms()) {
      CycloNumber x = c;
      for (std::size_t j = 0; j < u.size(); ++j) x *= zc[j].pow(u[j]);
      row.push_back(x);
    }
    m.push_back(std::move(row));
  }
  const std::size_t cols = p.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    CycloNumber inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      CycloNumber k = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= k * m[r][j];
    }
    ++r;
  }
  // a unit vector lies in the row space iff it is a row of the RREF
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t nz = 0;
    for (const auto& x : m[i]) nz += !x.is_zero();
    if (nz == 1) return true;
  }
  return false;
}

IntMatrix density_matrix(std::size_t n, long N, bool exhaustive, std::uint64_t seed, std::uint64_t i) {
  if (n == 0) throw std::invalid_argument("density_matrix: no variables");
  const std::size_t d = n - 1;
  IntMatrix A(d, n);
  if (exhaustive) {
    const std::uint64_t base = static_cast<std::uint64_t>(2 * N + 1);
    // last entry varies fastest
    for (std::size_t k = d * n; k-- > 0;) {
      A(k / n, k % n) = static_cast<long>(i % base) - N;
      i /= base;
    }
  } else {
    Rng rng(splitmix64(seed ^ i));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < n; ++c) A(r, c) = rng.uniform_int(-N, N);
  }
  return A;
}

DensityReport density_estimate(const LaurentPoly& f, long N, const DensityOptions& opts) {
  const std::size_t n = f.num_vars();
  if (n == 0) throw std::invalid_argument("density_estimate: no variables");
  if (N < 0) throw std::invalid_argument("density_estimate: N must be nonnegative");
  require_non_monomial(f, "density_estimate");
  DensityReport rep;
  rep.N = N;
  rep.seed = opts.seed;
  rep.exhaustive = opts.exhaustive;
  if (opts.exhaustive) {
    const std::size_t entries = (n - 1) * n;
    const std::uint64_t base = static_cast<std::uint64_t>(2 * N + 1);
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < entries; ++k) {
      if (total > opts.exhaustive_cap / base) throw std::length_error("density_estimate: exhaustive cap exceeded");
      total *= base;
    }
    rep.total = total;
  } else {
    rep.total = opts.samples;
    rep.fiber_samples = opts.samples;
  }

  // The verdict depends only on the row lattice of A, so HNF is a sound key.
  std::mutex mu;
  std::map<std::vector<std::string>, SurjectivityStatus> cache;
  auto key_of = [](const IntMatrix& A) {
    IntMatrix H = hermite_normal_form(A);
    std::vector<std::string> key{std::to_string(H.rows())};
    for (std::size_t r = 0; r < H.rows(); ++r)
      for (std::size_t c = 0; c < H.cols(); ++c) key.push_back(H(r, c).get_str());
    return key;
  };

  const unsigned workers = std::max(1u, opts.workers);
  std::vector<std::array<std::size_t, 3>> tallies(workers, {0, 0, 0});
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < rep.total; i += workers) {
        IntMatrix A = density_matrix(n, N, opts.exhaustive, opts.seed, i);
        auto key = key_of(A);
        std::optional<SurjectivityStatus> st;
        {
          std::lock_guard<std::mutex> lock(mu);
          auto it = cache.find(key);
          if (it != cache.end()) st = it->second;
        }
        if (!st) {
          st = surjectivity_decide(f, A, opts.effort).status;
          std::lock_guard<std::mutex> lock(mu);
          cache.emplace(std::move(key), *st);
        }
        ++tallies[w][static_cast<std::size_t>(*st)];
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& t : tallies) {
    rep.surjective += t[static_cast<std::size_t>(SurjectivityStatus::Surjective)];
    rep.not_surjective += t[static_cast<std::size_t>(SurjectivityStatus::NotSurjective)];
    rep.unknown += t[static_cast<std::size_t>(SurjectivityStatus::Unknown)];
  }
  return rep;
}

std::vector<std::vector<long>> primitive_directions(std::size_t n, long bound) {
  if (bound < 1) throw std::invalid_argument("primitive_directions: bound must be at least 1");
  std::vector<std::vector<long>> out;
  if (n == 0) return out;
  std::vector<long> v(n, -bound);
  for (;;) {
    long g = 0;
    for (long x : v) g = std::gcd(g, x);
    auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
    if (g == 1 && *first > 0) out.push_back(v);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++v[i] <= bound) break;
      v[i] = -bound;
      if (i == 0) return out;
    }
  }
}

std::vector<BadSubtorus> bad_subtorus_search(const LaurentPoly& f, long norm_bound, const SearchEffort& effort) {
  if (norm_bound < 1) throw std::invalid_argument("bad_subtorus_search: bound must be at least 1");
  if (!is_geometrically_non_degenerate(f))
    throw std::domain_error("bad_subtorus_search: f is geometrically degenerate (nontrivial stabilizer)");
  const std::size_t n = f.num_vars();
  std::vector<BadSubtorus> out;
  const std::vector<TorsionPoint> identity{TorsionPoint{1, std::vector<long>(n, 0)}};
  for (const auto& v : primitive_directions(n, norm_bound)) {
    auto groups = group_polynomials(f, v);
    auto z = find_empty_fiber_witness(groups, identity, n, effort);
    if (!z) continue;
    Coset c{Subtorus::from_direction(v), *z};
    if (coset_intersects(f, c).status != IntersectionStatus::Empty)
      throw std::logic_error("bad_subtorus_search: witness failed re-verification");
    out.push_back(BadSubtorus{c.torus, v, std::move(c)});
  }
  return out;
}

std::vector<TorsionCosetHit> torsion_cosets_on_hypersurface(const LaurentPoly& f, unsigned long max_order,
                                                            long direction_bound, const TorsionCaps& caps) {
  const std::size_t n = f.num_vars();
  if (f.is_zero()) throw std::invalid_argument("torsion_cosets_on_hypersurface: polynomial is zero");
  if (n == 0 || n > caps.max_vars) throw std::length_error("torsion_cosets_on_hypersurface: variable cap exceeded");
  if (max_order > caps.max_order) throw std::length_error("torsion_cosets_on_hypersurface: order cap exceeded");
  auto dirs = primitive_directions(n, direction_bound);
  std::vector<TorsionCosetHit> out;
  TorsionEnumerator it(n, max_order);
  while (auto p = it.next()) {
    auto z = p->coordinates();
    if (!f.evaluate(z).is_zero()) continue;
    std::vector<const std::vector<long>*> inside;
    for (const auto& v : dirs) {
      IntMatrix B(n, 1);
      for (std::size_t j = 0; j < n; ++j) B(j, 0) = v[j];
      if (substitute_monomial(f, z, B).is_zero()) inside.push_back(&v);
    }
    TorsionCosetHit hit{*p, std::nullopt};
    if (!inside.empty()) {
      IntMatrix gens(inside.size(), n);
      for (std::size_t i = 0; i < inside.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) gens(i, j) = (*inside[i])[j];
      IntLattice span = saturate(IntLattice::from_generators(n, gens));
      Subtorus H = Subtorus::from_direction(*inside.front());
      if (span.rank() > 1) {
        Subtorus big = Subtorus::from_parametrization(span.basis().transpose());
        if (substitute_monomial(f, z, big.param()).is_zero()) H = big;
      }
      hit.coset_torus = H;
    }
    out.push_back(std::move(hit));
  }
  return out;
}

std::string to_string(IntersectionStatus s) {
  switch (s) {
    case IntersectionStatus::Empty: return "Empty";
    case IntersectionStatus::NonEmpty: return "NonEmpty";
    case IntersectionStatus::CosetContained: return "CosetContained";
  }
  return "?";
}

std::string to_string(SurjectivityStatus s) {
  switch (s) {
    case SurjectivityStatus::Surjective: return "Surjective";
    case SurjectivityStatus::NotSurjective: return "NotSurjective";
    case SurjectivityStatus::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace torusx
