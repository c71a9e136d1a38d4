#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "hrl/util.hpp"

namespace hrl {

// Pair region D(c0) = { |x| <= 1-c0, |y| <= 1-c0, disc(x,y) > c0^2 } together
// with an optional dilation sqrt(lambda) mapping members to the spectral scale.
struct RegionSpec {
  double c0 = 0.1;
  int d = 1;
  double lambda = 1.0;

  void validate() const;
  bool contains(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double dilation() const;  // sqrt(lambda)
  Eigen::VectorXd dilate(const Eigen::VectorXd& p) const;
};

// Everything the geometry of one pair (x, y) yields: discriminant, critical
// times, the a/b vectors, the stationary phase value, both curvature matrices,
// the reduced eigenvalues, and the Carleson-Sjolin verdict (filled by
// phase_report; curvature_eigen_report leaves the cs_* fields defaulted).
struct PhaseReportH {
  double D = 0.0;
  double S_c = 0.0;
  double S_star = 0.0;
  Eigen::VectorXd a_vec;
  Eigen::VectorXd b_vec;
  double Phi = 0.0;
  Eigen::MatrixXd mixed_hessian;
  Eigen::MatrixXd M;
  std::vector<double> eigenvalues;  // reduced (d-1)x(d-1) block, ascending
  int cs_rank_c1 = -1;
  int cs_rank_c2 = -1;
  bool cs_c1 = false;
  bool cs_c2 = false;
  bool cs_c3 = false;
  bool cs_indeterminate = false;
  bool conditioning_warning = false;
};

double discriminant(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// (S_c, S_star) = (arccos(<x,y> + sqrt(D)), arccos(<x,y> - sqrt(D))).
// Requires D > 0; both cosines are clamped at +-1 within 1e-12 and rejected
// beyond.  sin S_c is checked internally against the closed form in |x-y|.
std::pair<double, double> critical_times(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y);

// P_H(t,x,y) and its first two t-derivatives; t must stay off pi Z.
double phase_H(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double dphase_H(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
// Same derivative written through the roots: -(cos t - cos S_c)(cos t - cos S_*)
// / (2 sin^2 t).  Requires D >= 0.
double dphase_H_factored(double t, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y);
double d2phase_H(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// a = cos(S_c) x - y, b = x - cos(S_c) y.
std::pair<Eigen::VectorXd, Eigen::VectorXd> vectors_ab(const Eigen::VectorXd& x,
                                                       const Eigen::VectorXd& y);

// Phi_H = P_H(S_c, x, y), evaluated through the diagonal-stable form
// (S_c - cos(S_*) sin(S_c)) / 2.
double phase_value_Phi(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// d_y d_x^T Phi_H = (a b^T - <a,b> I) / (sin^3(S_c) sqrt(D)).  Right null
// vector a, left null vector b, rank d-1.  When the pair sits within 1e-6 of
// either diagonal x = +-y the entries blow up like |x -+ y|^{-1}; *warning is
// set instead of failing.
Eigen::MatrixXd mixed_hessian_H(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y,
                                bool* warning = nullptr);

// M = (<a,b> I - a b^T)(b a^T - cos(S_c) a a^T - <a,b> I) / (w <a,b>) with
// w = sqrt((1-|x|^2) D) sin^4(S_c): the second fundamental form of the level
// surface of z -> Phi_H(x, z) seen from the normal a/|a|.  Symmetric, kills b.
Eigen::MatrixXd curvature_matrix_M(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y,
                                   bool* warning = nullptr);

// Rotates (x, y) simultaneously by the Householder reflection sending b/|b| to
// e_d, drops the last row/column of M, and reports the eigenvalues of the
// remaining (d-1)x(d-1) block (all negative on D(c0)).  Moduli follow
//   |l_1| = |a|^2 |b|^2 / (<a,b> w)   (multiplicity 1),
//   |l_2| = <a,b> / w                 (multiplicity d-2).
PhaseReportH curvature_eigen_report(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y);

// Predicted moduli (|l_1|, |l_2|) above, for cross-checking eigensolves.
std::pair<double, double> curvature_moduli(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y);

// Rejection sample of D(c0) from the box [-(1-c0), 1-c0]^{2d}; deterministic
// in (seed, item) regardless of call order.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_region(const RegionSpec& region,
                                                          std::uint64_t seed,
                                                          std::uint64_t item);

}  // namespace hrl
