#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "hrl/util.hpp"

namespace hrl {

// Geometry of one pair (z, z') in R^{2d}: critical time, rotation R, null
// direction nu, both second-derivative matrices, the frame B, and the
// diagonal of B^T R M R^T B (filled by diagonalization_check_L).
// eigenvalues pairs (value, multiplicity) in B's column order:
// {v^T v cos^2 S_c, 2d-2}, {v^T v, 1}, {0, 1}; the first multiplicity is 0
// when d = 1.
struct PhaseReportL {
  double S_c = 0.0;
  Eigen::VectorXd v;
  Eigen::MatrixXd R;
  Eigen::VectorXd nu;
  Eigen::MatrixXd mixed_hessian;
  Eigen::MatrixXd M;
  Eigen::MatrixXd B;
  Eigen::MatrixXd diagonalized;
  std::vector<std::pair<double, int>> eigenvalues;
  bool conditioning_warning = false;
};

// P_L(t,z,z') and its t-derivative 1 - |z-z'|^2/(4 sin^2 t); t off pi Z.
double phase_L(double t, const Eigen::VectorXd& z, const Eigen::VectorXd& zp);
double dphase_L(double t, const Eigen::VectorXd& z, const Eigen::VectorXd& zp);

// (S_c, S_c^*) = (arcsin(|z-z'|/2), pi - S_c); requires 0 < |z-z'| < 2, the
// band where the phase has exactly two critical times in (0, pi).
std::pair<double, double> critical_times_L(const Eigen::VectorXd& z,
                                           const Eigen::VectorXd& zp);

// R(z,z') = cos(S_c) I - sin(S_c) S; orthogonal with det 1, commutes with S.
Eigen::MatrixXd rotation_R(const Eigen::VectorXd& z, const Eigen::VectorXd& zp);

// Phi_L(z,z') = P_L(S_c, z, z'), the stationary value of the phase.
double phase_value_Phi_L(const Eigen::VectorXd& z, const Eigen::VectorXd& zp);

// grad_z Phi_L = cos(S_c)/(2 sin(S_c)) (z-z') + S z'/2, equivalently
// R(z,z') v/|v| + S z/2.
Eigen::VectorXd grad_Phi_L(const Eigen::VectorXd& z, const Eigen::VectorXd& zp);

// d_{z'} d_z^T Phi_L = (v v^T - cos^2(S_c) v^T v I - sin(S_c)cos(S_c) v^T v S)
// / (|v|^3 cos S_c): rank 2d-1 with null vector R v/|v|.  Past |z-z'| >
// 2 - 1e-2 the 1/cos factor degenerates; *warning is set when a sink is
// given, otherwise the pair is rejected.
Eigen::MatrixXd mixed_hessian_L(const Eigen::VectorXd& z,
                                const Eigen::VectorXd& zp,
                                bool* warning = nullptr);

// M(z,z') = v v^T - 2 cos^2(S_c) v v^T + cos^2(S_c) v^T v I
// + sin(S_c)cos(S_c)(v v^T S - S v v^T): symmetric, and the Hessian in w of
// w -> <grad_z Phi_L(z,w), nu(z,z')> at w = z' equals -M / (cos^2(S_c)|v|^4).
Eigen::MatrixXd curvature_matrix_L(const Eigen::VectorXd& z,
                                   const Eigen::VectorXd& zp,
                                   bool* warning = nullptr);

// Builds the frame B = (W | Sv/|v| | v/|v|) with W an orthonormal basis of
// span{v, Sv}^perp and reports B^T R M R^T B: diagonal, entries
// v^T v cos^2(S_c) on the first 2d-2 slots, v^T v next, 0 in the last.
PhaseReportL diagonalization_check_L(const Eigen::VectorXd& z,
                                     const Eigen::VectorXd& zp);

}  // namespace hrl
