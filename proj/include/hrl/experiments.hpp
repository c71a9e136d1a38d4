#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hrl/grid.hpp"
#include "hrl/ratefit.hpp"
#include "hrl/rational.hpp"
#include "hrl/spectral.hpp"
#include "hrl/window.hpp"

namespace hrl {

// Summability thresholds, kept in exact rational arithmetic so the
// threshold identities hold with zero tolerance.
struct ExponentTable {
  int d = 1;
  Rat p, q;
  Rat delta_dp;                // max(d|1/p - 1/2| - 1/2, 0)
  Rat gamma_dp;                // -1/(3p) + (d/3)(1/2 - 1/p)
  Rat p0_d;                    // 2(3d+2)/(3d-2) even d, 2(3d+1)/(3d-3) odd;
                               // infinite at d = 1
  Rat counterexample_exponent; // -1/(3p) + (d/6)(1 - 1/p - 1/q)
};

ExponentTable exponent_table(int d, const Rat& p, const Rat& q);

// Lower-bound test function data for one eigenvalue: the cube Q (two slabs
// in x_1, a coarse box transversally), the near-turning anchor x_star, the
// index set J (coordinates 2..d windowed to [lambda^{1/3}/d, 2 lambda^{1/3}/d]),
// and the point x_tilde maximizing sum_{alpha in J} Phi_alpha^2 over the
// search slab, found by seeded multistart coordinate ascent. The bump
// g = sum g_coeffs[i] Phi_{J[i]} and f_lambda = chi_Q Pi_lambda(x0, .) are
// described by (J, g_coeffs) and (x0, Q) rather than materialized.
struct CounterexampleBundle {
  double lambda = 0;
  int d = 1;
  int k = 0;
  double q_inner = 0;      // lambda^{1/2}/200
  double q_outer = 0;      // lambda^{1/2}/100
  double q_halfwidth = 0;  // 10^2 lambda^{1/6}
  Eigen::VectorXd x_star, x_tilde, x0;
  std::vector<MultiIndex> J;
  std::vector<double> g_coeffs;  // Phi_alpha(x_tilde) in J order
  double sum_sq = 0;             // sum of squares, the mass at x_tilde
  double window_lo = 0, window_hi = 0;  // x_1 search interval
  std::uint64_t seed = 0;
};

CounterexampleBundle build_counterexample(double lambda, int d,
                                          std::uint64_t seed);

// One row per eigenvalue: {lambda, ratio, norm_q, norm_p} with
// ratio = |Pi_lambda f_lambda|_q / |f_lambda|_p.
struct RateExperiment {
  RateFit fit;
  double expected = 0;  // counterexample_exponent as a double
  std::vector<std::array<double, 4>> rows;
  bool under_resolved = false;
};

// Measures the operator ratio of the lower-bound family over a ladder of
// eigenvalues (>= 5, each on the spectrum) and fits the growth exponent.
// Scan and quadrature steps resolve points_per_osc nodes per oscillation;
// under_resolved flags points_per_osc < 4 or a ladder spanning less than a
// factor of 8. Dimensions 1 and 2 are supported; the transverse index
// enumeration makes d >= 3 impractical here.
RateExperiment projection_rate_experiment(int d, const Rat& p, const Rat& q,
                                          std::span<const double> lambda_list,
                                          double points_per_osc = 8.0);

enum class ScanRegion {
  fixed_box,        // |x| <= 2: expected growth d/2 - 1
  turning_annulus,  // ||x| - sqrt(lambda)| <= 10^3 lambda^{-1/6}: (d-2)/6
};

// Slope of sup |Pi_lambda(x, y)| over the region against lambda. The kernel
// is an orthogonal projection, so the sup sits on the diagonal x = y by
// Cauchy-Schwarz, and the diagonal is radial; only radii are scanned.
RateFit kernel_sup_scan(int d, std::span<const double> lambda_list,
                        ScanRegion region, double points_per_osc = 8.0);

struct DecayReport {
  std::vector<std::pair<double, double>> samples;  // (lambda, modulus)
  RateFit fit;                  // over samples above the floor; n = 0 if < 2
  double floor = 1e-14;
  bool all_below_floor = false;
  int verified_order = 0;       // largest N with measured decay >= N
};

// Decay of |window-localized kernel| in lambda for one pair (x, y). The
// window support must stay at least min_gap away from both critical times
// of the pair's phase; pass min_gap = 0 to measure deliberately overlapping
// windows (they decay at the slow stationary rate instead).
DecayReport nonstationary_decay_check(const WindowFunction& w,
                                      double amplitude_scale,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y,
                                      std::span<const double> lambda_list,
                                      double min_gap = 0.05);

using KernelSampler = std::function<std::complex<double>(
    std::span<const double>, std::span<const double>)>;

// Lower bound on |chi_E T chi_F|_{p -> p} from a seeded family of mollified
// point masses and modulated Gaussians, plus power iteration when p = 2.
// Trapezoid weights discretize the norms; the result is a lower bound only,
// up to quadrature error.
double operator_norm_estimate(const KernelSampler& kernel, const Grid& domain_e,
                              const Grid& domain_f, double p,
                              std::uint64_t seed);

}  // namespace hrl
