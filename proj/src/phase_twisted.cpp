#include "hrl/phase_twisted.hpp"

#include <cmath>
#include <span>

#include "hrl/kernels.hpp"
#include "hrl/twisted.hpp"

namespace hrl {
namespace {

constexpr double kPi = 3.14159265358979323846;
// Past |z - z'| = 2 - kMargin the two critical times coalesce at pi/2 and the
// 1/cos factors in the Hessians degenerate; pairs there are only reported,
// never certified.
constexpr double kMargin = 1e-2;

std::span<const double> span_of(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void require_pair(const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  if (z.size() == 0 || z.size() != zp.size() || z.size() % 2 != 0)
    throw DomainError(
        "twisted phase: z and z' must share a positive even dimension");
}

void require_regular_t(double t) {
  if (!std::isfinite(t) || std::abs(std::remainder(t, kPi)) < 1e-12)
    throw SingularityError("twisted phase: t is a multiple of pi");
}

Eigen::MatrixXd symplectic_matrix(int two_d) {
  return TwistedKernelContext{two_d / 2, 0}.S();
}

// Gap radius r = |z - z'| with the region checks shared by every op that
// evaluates at the critical time.
double gap_radius(const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  require_pair(z, zp);
  double r = (z - zp).norm();
  if (r <= 0.0)
    throw RegionError("twisted phase: coincident points have no critical time");
  if (r >= 2.0)
    throw RegionError(
        "twisted phase: |z - z'| >= 2 leaves no critical time in (0, pi)");
  return r;
}

double conditioned_gap(const Eigen::VectorXd& z, const Eigen::VectorXd& zp,
                       bool* warning) {
  double r = gap_radius(z, zp);
  if (r > 2.0 - kMargin) {
    if (!warning)
      throw RegionError(
          "twisted phase: |z - z'| within 1e-2 of 2, cos S_c degenerates");
    *warning = true;
  }
  return r;
}

}  // namespace

double phase_L(double t, const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  require_pair(z, zp);
  require_regular_t(t);
  return twisted_phase(t, span_of(z), span_of(zp));
}

double dphase_L(double t, const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  require_pair(z, zp);
  require_regular_t(t);
  double s = std::sin(t);
  return 1.0 - (z - zp).squaredNorm() / (4.0 * s * s);
}

std::pair<double, double> critical_times_L(const Eigen::VectorXd& z,
                                           const Eigen::VectorXd& zp) {
  double r = gap_radius(z, zp);
  double S_c = std::asin(0.5 * r);
  return {S_c, kPi - S_c};
}

Eigen::MatrixXd rotation_R(const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  double S_c = critical_times_L(z, zp).first;
  auto n = z.size();
  return std::cos(S_c) * Eigen::MatrixXd::Identity(n, n) -
         std::sin(S_c) * symplectic_matrix(static_cast<int>(n));
}

double phase_value_Phi_L(const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  return phase_L(critical_times_L(z, zp).first, z, zp);
}

Eigen::VectorXd grad_Phi_L(const Eigen::VectorXd& z, const Eigen::VectorXd& zp) {
  double S_c = critical_times_L(z, zp).first;
  Eigen::MatrixXd S = symplectic_matrix(static_cast<int>(z.size()));
  return 0.5 * std::cos(S_c) / std::sin(S_c) * (z - zp) + 0.5 * (S * zp);
}

Eigen::MatrixXd mixed_hessian_L(const Eigen::VectorXd& z,
                                const Eigen::VectorXd& zp, bool* warning) {
  double r = conditioned_gap(z, zp, warning);
  double S_c = std::asin(0.5 * r);
  double c = std::cos(S_c), s = std::sin(S_c);
  Eigen::VectorXd v = z - zp;
  double v2 = v.squaredNorm();
  auto n = z.size();
  Eigen::MatrixXd S = symplectic_matrix(static_cast<int>(n));
  Eigen::MatrixXd num = v * v.transpose() -
                        c * c * v2 * Eigen::MatrixXd::Identity(n, n) -
                        s * c * v2 * S;
  return num / (r * r * r * c);
}

Eigen::MatrixXd curvature_matrix_L(const Eigen::VectorXd& z,
                                   const Eigen::VectorXd& zp, bool* warning) {
  double r = conditioned_gap(z, zp, warning);
  double S_c = std::asin(0.5 * r);
  double c = std::cos(S_c), s = std::sin(S_c);
  Eigen::VectorXd v = z - zp;
  double v2 = v.squaredNorm();
  auto n = z.size();
  Eigen::MatrixXd S = symplectic_matrix(static_cast<int>(n));
  Eigen::MatrixXd vvT = v * v.transpose();
  return vvT - 2.0 * c * c * vvT + c * c * v2 * Eigen::MatrixXd::Identity(n, n) +
         s * c * (vvT * S - S * vvT);
}

PhaseReportL diagonalization_check_L(const Eigen::VectorXd& z,
                                     const Eigen::VectorXd& zp) {
  PhaseReportL rep;
  bool warning = false;
  rep.mixed_hessian = mixed_hessian_L(z, zp, &warning);
  rep.M = curvature_matrix_L(z, zp, &warning);
  rep.conditioning_warning = warning;
  rep.S_c = critical_times_L(z, zp).first;
  rep.v = z - zp;
  rep.R = rotation_R(z, zp);

  auto n = z.size();
  Eigen::MatrixXd S = symplectic_matrix(static_cast<int>(n));
  Eigen::VectorXd u_v = rep.v.normalized();
  Eigen::VectorXd u_sv = (S * rep.v).normalized();
  rep.nu = rep.R * u_v;

  // W spans {v, Sv}^perp: pivoted Gram-Schmidt over the standard basis, with
  // a second projection pass so near-parallel pivots stay orthonormal.
  rep.B = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::VectorXd> frame{u_v, u_sv};
  for (Eigen::Index col = 0; col < n - 2; ++col) {
    Eigen::VectorXd best;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd cand = Eigen::VectorXd::Unit(n, j);
      for (const auto& u : frame) cand -= u.dot(cand) * u;
      double norm = cand.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = cand;
      }
    }
    if (best_norm < 1e-8)
      throw Error("twisted phase: orthonormal completion lost rank");
    best /= best_norm;
    for (const auto& u : frame) best -= u.dot(best) * u;
    best.normalize();
    frame.push_back(best);
    rep.B.col(col) = best;
  }
  rep.B.col(n - 2) = u_sv;
  rep.B.col(n - 1) = u_v;

  rep.diagonalized =
      rep.B.transpose() * rep.R * rep.M * rep.R.transpose() * rep.B;

  double v2 = rep.v.squaredNorm();
  double c = std::cos(rep.S_c);
  rep.eigenvalues = {{v2 * c * c, static_cast<int>(n) - 2}, {v2, 1}, {0.0, 1}};
  return rep;
}

}  // namespace hrl
