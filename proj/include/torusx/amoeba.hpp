// Floating-point amoebas. The amoeba of W is the image of W(C) under
//   -Log : (w_1, ..., w_n) -> (-log|w_1|, ..., -log|w_n|),
// note the sign, which matches the min convention used for tropical fans.
#pragma once

#include "torusx/fan.hpp"
#include "torusx/laurent.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace torusx {

/// Roots of sum_k coeffs[k] t^k by Durand-Kerner iteration followed by a
/// Newton polish. Each root r satisfies |p(r)| <= tol * (1 + sum_k |c_k||r|^k).
/// Throws std::invalid_argument on degree < 1 or a zero leading coefficient,
/// std::runtime_error if the iteration cap is hit.
std::vector<std::complex<double>> univariate_roots(const std::vector<std::complex<double>>& coeffs, double tol = 1e-12,
                                                   int max_iter = 1000);
std::vector<std::complex<long double>> univariate_roots(const std::vector<std::complex<long double>>& coeffs,
                                                        long double tol, int max_iter = 1000);

enum class SolvePolicy {
  highest,      // the highest-index variable f depends on
  round_robin,  // cycle over the variables f depends on, one per draw
};

struct AmoebaOptions {
  double residual_tol = 1e-8;
  SolvePolicy policy = SolvePolicy::highest;
  std::size_t max_draws_factor = 50;  // give up after this many draws per requested point
};

struct PointCloudMeta {
  std::string polynomial;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  double log_box = 0;
  double residual_tol = 0;
  SolvePolicy policy = SolvePolicy::highest;
  std::size_t draws = 0;
  std::size_t rejected = 0;  // roots dropped for exceeding residual_tol
};

struct PointCloud {
  std::size_t ambient_dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<std::vector<std::complex<double>>> witnesses;  // points[i] = -Log|witnesses[i]|
  PointCloudMeta meta;
};

/// |f(w)| in extended precision.
double residual(const LaurentPoly& f, const std::vector<std::complex<double>>& w);

/// Draws the non-solve coordinates as exp(rho + i theta) with rho uniform in
/// [-log_box, log_box], solves for the remaining one, and keeps every root
/// whose witness passes the residual check. Draw i uses its own stream
/// seeded from seed ^ i.
PointCloud sample_amoeba(const LaurentPoly& f, std::size_t count, double log_box, std::uint64_t seed,
                         const AmoebaOptions& opts = {});

/// Fraction of grid points g in [-w, w]^n (spacing `step`) whose distance to
/// cloud + L exceeds `radius`.
double covering_deficiency(const PointCloud& cloud, const RatSubspace& L, double half_width, double step,
                           double radius);

/// Largest distance from p / scale to the support of the fan, over the cloud.
double trop_consistency(const PointCloud& cloud, const Fan& fan, double scale);

/// Euclidean distance from x to the support of the fan. The projection onto
/// each cone's span is exact (x is read as a rational); only the final
/// length is rounded.
double distance_to_support(const Fan& fan, const std::vector<double>& x);

/// One point per line, coordinates in %.16e, comma separated.
std::string to_csv(const PointCloud& cloud);

std::string to_string(SolvePolicy p);

}  // namespace torusx
