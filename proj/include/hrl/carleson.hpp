#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "hrl/phase_hermite.hpp"

namespace hrl {

// Phase sampler phi(x, xi) with x in R^d and the frozen coordinate already
// absorbed: xi ranges over R^{d-1}.  Everything downstream is finite
// differences, so phi only needs to be evaluable near the base point.
struct FrozenPhase {
  int d = 0;
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> phi;
};

// Verdict of the three rank/sign conditions at a base point:
//   C1: rank d_xi d_x^T phi = d-1,
//   C2: rank d^2_xi <d_x phi, nu> = d-1 for the left null direction nu,
//   C3: the nonzero eigenvalues of that Hessian share one sign.
// Ranks come from a two-threshold test (nonzero >= 1e-4 max, zero <= 1e-6
// max); anything in the gray band makes the verdict indeterminate.
struct CsVerdict {
  int rank_c1 = 0;
  int rank_c2 = 0;
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  bool indeterminate = false;
  Eigen::VectorXd normal;          // unit nu, largest component positive
  std::vector<double> ff_eigs;     // second-fundamental-form eigenvalues, ascending
};

CsVerdict carleson_sjolin_check(const FrozenPhase& phase,
                                const Eigen::VectorXd& x0,
                                const Eigen::VectorXd& xi0);

// Phi_H near (x0, y0), rotated so b/|b| = e_d and with the last y coordinate
// frozen at its rotated base value.  base_x/base_xi give the point to check.
struct FrozenHermitePhase {
  FrozenPhase phase;
  Eigen::VectorXd base_x;
  Eigen::VectorXd base_xi;
  double frozen_coordinate = 0.0;
};

FrozenHermitePhase freeze_hermite_phase(const Eigen::VectorXd& x0,
                                        const Eigen::VectorXd& y0);

// Full geometry report plus the Carleson-Sjolin verdict of the frozen phase.
PhaseReportH phase_report(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace hrl
