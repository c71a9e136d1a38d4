#include "hrl/carleson.hpp"

#include <cmath>

namespace hrl {
namespace {

// Step sizes balance truncation against rounding: first differences at
// eps^(1/3), direct second differences at eps^(1/4).  The C2 Hessian sits on
// top of an inner first difference whose noise is ~eps^(2/3), so its outer
// step uses the quarter root of that noise instead.
const double kEps = 2.220446049250313e-16;
const double kStep1 = std::cbrt(kEps);
const double kStep2 = std::pow(kEps, 0.25);
const double kStepOuter = std::pow(kEps / kStep1, 0.25);

// Curvature smaller than FD measurement noise counts as exactly flat.
constexpr double kFlatMixed = 1e-6;
constexpr double kFlatForm = 1e-5;

enum class Size { kZero, kGray, kNonzero };

Size classify(double value, double largest) {
  if (value >= 1e-4 * largest) return Size::kNonzero;
  if (value <= 1e-6 * largest) return Size::kZero;
  return Size::kGray;
}

Eigen::MatrixXd householder_to_last(const Eigen::VectorXd& unit) {
  int d = static_cast<int>(unit.size());
  Eigen::VectorXd u = unit;
  u(d - 1) -= 1.0;
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(d, d);
  double un2 = u.squaredNorm();
  if (un2 > 1e-28) R -= (2.0 / un2) * (u * u.transpose());
  return R;
}

}  // namespace

CsVerdict carleson_sjolin_check(const FrozenPhase& phase,
                                const Eigen::VectorXd& x0,
                                const Eigen::VectorXd& xi0) {
  int d = phase.d;
  if (d < 2) throw DomainError("carleson_sjolin_check: needs dimension >= 2");
  if (!phase.phi) throw DomainError("carleson_sjolin_check: empty phase sampler");
  int m = d - 1;
  if (x0.size() != d || xi0.size() != m)
    throw DomainError("carleson_sjolin_check: base point has wrong dimensions");

  double scale = 1.0 + std::max(x0.cwiseAbs().maxCoeff(),
                                m > 0 ? xi0.cwiseAbs().maxCoeff() : 0.0);
  auto phi = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
    return phase.phi(x, xi);
  };

  // Mixed block d_x d_xi phi by four-point cross differences.
  double h = kStep2 * scale;
  Eigen::MatrixXd A(d, m);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x0, xm = x0;
    xp(i) += h;
    xm(i) -= h;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd gp = xi0, gm = xi0;
      gp(j) += h;
      gm(j) -= h;
      A(i, j) = (phi(xp, gp) - phi(xp, gm) - phi(xm, gp) + phi(xm, gm)) /
                (4.0 * h * h);
    }
  }

  CsVerdict verdict;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double top = sv(0);
  bool gray = false;
  if (top < kFlatMixed) {
    verdict.rank_c1 = 0;
  } else {
    for (int i = 0; i < sv.size(); ++i) {
      Size s = classify(sv(i), top);
      if (s == Size::kNonzero) ++verdict.rank_c1;
      if (s == Size::kGray) gray = true;
    }
  }
  verdict.c1 = !gray && verdict.rank_c1 == m;

  // nu spans the orthogonal complement of the column space when C1 holds.
  Eigen::VectorXd nu = svd.matrixU().col(d - 1);
  int lead = 0;
  nu.cwiseAbs().maxCoeff(&lead);
  if (nu(lead) < 0.0) nu = -nu;
  verdict.normal = nu;

  // Second fundamental form: Hessian in xi of the directional x-derivative
  // along nu.
  double h1 = kStep1 * scale;
  auto psi = [&](const Eigen::VectorXd& xi) {
    return (phi(x0 + h1 * nu, xi) - phi(x0 - h1 * nu, xi)) / (2.0 * h1);
  };
  double ho = kStepOuter * scale;
  Eigen::MatrixXd H(m, m);
  double psi0 = psi(xi0);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(m);
    ei(i) = ho;
    H(i, i) = (psi(xi0 + ei) - 2.0 * psi0 + psi(xi0 - ei)) / (ho * ho);
    for (int j = i + 1; j < m; ++j) {
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(m);
      ej(j) = ho;
      double v = (psi(xi0 + ei + ej) - psi(xi0 + ei - ej) -
                  psi(xi0 - ei + ej) + psi(xi0 - ei - ej)) /
                 (4.0 * ho * ho);
      H(i, j) = v;
      H(j, i) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  verdict.ff_eigs.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
  double largest = 0.0;
  for (double e : verdict.ff_eigs) largest = std::max(largest, std::abs(e));
  int positives = 0, negatives = 0;
  bool gray2 = false;
  if (largest >= kFlatForm) {
    for (double e : verdict.ff_eigs) {
      Size s = classify(std::abs(e), largest);
      if (s == Size::kGray) gray2 = true;
      if (s != Size::kNonzero) continue;
      ++verdict.rank_c2;
      (e > 0.0 ? positives : negatives)++;
    }
  }
  verdict.c2 = !gray2 && verdict.rank_c2 == m;
  verdict.c3 = verdict.rank_c2 > 0 && (positives == 0 || negatives == 0);
  verdict.indeterminate = gray || gray2;
  return verdict;
}

FrozenHermitePhase freeze_hermite_phase(const Eigen::VectorXd& x0,
                                        const Eigen::VectorXd& y0) {
  auto [a, b] = vectors_ab(x0, y0);
  (void)a;
  double bn = b.norm();
  if (bn < 1e-13 * (1.0 + x0.norm() + y0.norm()))
    throw RegionError("freeze_hermite_phase: b vanishes, rotation degenerate");
  int d = static_cast<int>(x0.size());
  Eigen::MatrixXd R = householder_to_last(b / bn);
  Eigen::VectorXd xr = R * x0, yr = R * y0;

  FrozenHermitePhase out;
  out.base_x = xr;
  out.base_xi = yr.head(d - 1);
  out.frozen_coordinate = yr(d - 1);
  double frozen = out.frozen_coordinate;
  out.phase.d = d;
  out.phase.phi = [d, frozen](const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
    Eigen::VectorXd y(d);
    y.head(d - 1) = xi;
    y(d - 1) = frozen;
    return phase_value_Phi(x, y);
  };
  return out;
}

PhaseReportH phase_report(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  PhaseReportH rep = curvature_eigen_report(x, y);
  if (x.size() < 2) return rep;  // no xi directions to probe in d = 1
  FrozenHermitePhase fz = freeze_hermite_phase(x, y);
  CsVerdict v = carleson_sjolin_check(fz.phase, fz.base_x, fz.base_xi);
  rep.cs_rank_c1 = v.rank_c1;
  rep.cs_rank_c2 = v.rank_c2;
  rep.cs_c1 = v.c1;
  rep.cs_c2 = v.c2;
  rep.cs_c3 = v.c3;
  rep.cs_indeterminate = v.indeterminate;
  return rep;
}

}  // namespace hrl
