#include "hrl/phase_hermite.hpp"

#include <cmath>
#include <span>

#include "hrl/kernels.hpp"

namespace hrl {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClamp = 1e-12;      // tolerance for cosines rounding past +-1
constexpr double kDegenerate = 1e-14; // relative scale below which x = +-y
constexpr double kNearDiagonal = 1e-6;

std::span<const double> span_of(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void require_same_dim(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() == 0 || x.size() != y.size())
    throw DomainError("phase geometry: x and y must share a positive dimension");
}

void require_regular_t(double t) {
  if (!std::isfinite(t) || std::abs(std::remainder(t, kPi)) < 1e-12)
    throw SingularityError("phase: t is a multiple of pi");
}

// cos S_c and cos S_* without the arccos; shared by the factored derivative
// and the a/b construction.
std::pair<double, double> critical_cosines(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y) {
  require_same_dim(x, y);
  double D = discriminant(x, y);
  if (D <= 0.0) throw RegionError("phase geometry: discriminant is not positive");
  double p = x.dot(y);
  double root = std::sqrt(D);
  double cc = p + root, cs = p - root;
  for (double* c : {&cc, &cs}) {
    if (*c > 1.0) {
      if (*c > 1.0 + kClamp)
        throw RegionError("critical_times: cosine argument exceeds 1");
      *c = 1.0;
    } else if (*c < -1.0) {
      if (*c < -1.0 - kClamp)
        throw RegionError("critical_times: cosine argument below -1");
      *c = -1.0;
    }
  }
  return {cc, cs};
}

// Degeneracy test used by the Hessian ops: both |x - y| and |x + y| must be
// well away from zero relative to the pair's size.
double diagonal_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return std::min((x - y).norm(), (x + y).norm()) / (1.0 + x.norm() + y.norm());
}

}  // namespace

void RegionSpec::validate() const {
  if (!(c0 > 0.0 && c0 < 1.0)) throw DomainError("RegionSpec: c0 must lie in (0,1)");
  if (d < 1) throw DomainError("RegionSpec: dimension must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("RegionSpec: lambda must be positive");
}

bool RegionSpec::contains(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  validate();
  if (x.size() != d || y.size() != d) return false;
  double r = 1.0 - c0;
  if (x.norm() > r || y.norm() > r) return false;
  return discriminant(x, y) > c0 * c0;
}

double RegionSpec::dilation() const {
  validate();
  return std::sqrt(lambda);
}

Eigen::VectorXd RegionSpec::dilate(const Eigen::VectorXd& p) const {
  return dilation() * p;
}

double discriminant(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_same_dim(x, y);
  double p = x.dot(y);
  return 1.0 + p * p - x.squaredNorm() - y.squaredNorm();
}

std::pair<double, double> critical_times(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y) {
  auto [cc, cs] = critical_cosines(x, y);
  double S_c = std::acos(cc), S_star = std::acos(cs);
  // Closed form for sin S_c in terms of |x - y|: from 1 - cos^2 S_c =
  // (1-p-r)(1+p+r) and |x-y|^2 = (1-p-r)(1-p+r) with p = <x,y>, r = sqrt(D).
  // A disagreement means the cosine arithmetic lost the geometry.
  double p = x.dot(y);
  double root = std::sqrt(discriminant(x, y));
  double denom = 1.0 - p + root;
  if (denom > 1e-12) {
    double expected = (x - y).norm() * std::sqrt((1.0 + p + root) / denom);
    if (std::abs(std::sin(S_c) - expected) > 1e-9 * (1.0 + expected))
      throw Error("critical_times: sin S_c consistency check failed");
  }
  return {S_c, S_star};
}

double phase_H(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_same_dim(x, y);
  require_regular_t(t);
  return hermite_phase(t, span_of(x), span_of(y));
}

double dphase_H(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_same_dim(x, y);
  require_regular_t(t);
  double c = std::cos(t), s = std::sin(t);
  double num = c * c - 2.0 * x.dot(y) * c + x.squaredNorm() + y.squaredNorm() - 1.0;
  return -num / (2.0 * s * s);
}

double dphase_H_factored(double t, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y) {
  require_regular_t(t);
  auto [cc, cs] = critical_cosines(x, y);
  double c = std::cos(t), s = std::sin(t);
  return -(c - cc) * (c - cs) / (2.0 * s * s);
}

double d2phase_H(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_same_dim(x, y);
  require_regular_t(t);
  double c = std::cos(t), s = std::sin(t);
  double p = x.dot(y), q = x.squaredNorm() + y.squaredNorm();
  return -(p * c * c - q * c + p) / (s * s * s);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> vectors_ab(const Eigen::VectorXd& x,
                                                       const Eigen::VectorXd& y) {
  auto [cc, cs] = critical_cosines(x, y);
  (void)cs;
  return {cc * x - y, x - cc * y};
}

double phase_value_Phi(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  auto [cc, cs] = critical_cosines(x, y);
  double S_c = std::acos(cc);
  return 0.5 * (S_c - cs * std::sin(S_c));
}

Eigen::MatrixXd mixed_hessian_H(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y,
                                bool* warning) {
  auto [a, b] = vectors_ab(x, y);
  double dist = diagonal_distance(x, y);
  if (dist < kDegenerate)
    throw RegionError("mixed_hessian_H: pair sits on a diagonal x = +-y");
  if (warning) *warning = dist < kNearDiagonal;
  double S_c = std::acos(critical_cosines(x, y).first);
  double s = std::sin(S_c);
  double root = std::sqrt(discriminant(x, y));
  Eigen::MatrixXd H = a * b.transpose();
  H.diagonal().array() -= a.dot(b);
  return H / (s * s * s * root);
}

Eigen::MatrixXd curvature_matrix_M(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y,
                                   bool* warning) {
  auto [a, b] = vectors_ab(x, y);
  double dist = diagonal_distance(x, y);
  if (dist < kDegenerate)
    throw RegionError("curvature_matrix_M: pair sits on a diagonal x = +-y");
  if (warning) *warning = dist < kNearDiagonal;
  double rx = 1.0 - x.squaredNorm();
  if (rx <= 0.0) throw RegionError("curvature_matrix_M: |x| must be < 1");
  double cc = critical_cosines(x, y).first;
  double S_c = std::acos(cc);
  double s = std::sin(S_c);
  double D = discriminant(x, y);
  double ab = a.dot(b);
  double omega = std::sqrt(rx * D) * s * s * s * s;
  int d = static_cast<int>(x.size());
  Eigen::MatrixXd left = ab * Eigen::MatrixXd::Identity(d, d) - a * b.transpose();
  Eigen::MatrixXd right = b * a.transpose() - cc * (a * a.transpose()) -
                          ab * Eigen::MatrixXd::Identity(d, d);
  return (left * right) / (omega * ab);
}

std::pair<double, double> curvature_moduli(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y) {
  auto [a, b] = vectors_ab(x, y);
  double rx = 1.0 - x.squaredNorm();
  if (rx <= 0.0) throw RegionError("curvature_moduli: |x| must be < 1");
  double S_c = std::acos(critical_cosines(x, y).first);
  double s = std::sin(S_c);
  double D = discriminant(x, y);
  double ab = a.dot(b);
  double omega = std::sqrt(rx * D) * s * s * s * s;
  if (!(ab > 0.0) || !(omega > 0.0))
    throw RegionError("curvature_moduli: degenerate pair");
  return {a.squaredNorm() * b.squaredNorm() / (ab * omega), ab / omega};
}

PhaseReportH curvature_eigen_report(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y) {
  PhaseReportH rep;
  rep.D = discriminant(x, y);
  auto [S_c, S_star] = critical_times(x, y);
  rep.S_c = S_c;
  rep.S_star = S_star;
  auto [a, b] = vectors_ab(x, y);
  rep.a_vec = a;
  rep.b_vec = b;
  rep.Phi = phase_value_Phi(x, y);
  rep.mixed_hessian = mixed_hessian_H(x, y, &rep.conditioning_warning);
  rep.M = curvature_matrix_M(x, y);

  double bn = b.norm();
  if (bn < 1e-13 * (1.0 + x.norm() + y.norm()))
    throw RegionError("curvature_eigen_report: b vanishes, rotation degenerate");
  int d = static_cast<int>(x.size());
  // Householder reflection sending b/|b| to e_d, applied to both points.  The
  // geometry is invariant, so only M changes frame; its last row and column
  // vanish in the new frame.
  Eigen::VectorXd u = b / bn;
  u(d - 1) -= 1.0;
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(d, d);
  double un2 = u.squaredNorm();
  if (un2 > 1e-28) R -= (2.0 / un2) * (u * u.transpose());
  Eigen::MatrixXd Mrot = curvature_matrix_M(R * x, R * y);
  if (d > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Mrot.topLeftCorner(d - 1, d - 1));
    rep.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + d - 1);
  }
  return rep;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_region(const RegionSpec& region,
                                                          std::uint64_t seed,
                                                          std::uint64_t item) {
  region.validate();
  auto rng = item_rng(seed, item);
  std::uniform_real_distribution<double> box(-(1.0 - region.c0), 1.0 - region.c0);
  Eigen::VectorXd x(region.d), y(region.d);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int i = 0; i < region.d; ++i) x(i) = box(rng);
    for (int i = 0; i < region.d; ++i) y(i) = box(rng);
    if (region.contains(x, y)) return {x, y};
  }
  throw ConvergenceError("sample_region: rejection sampling exhausted", 0.0, 0.0);
}

}  // namespace hrl
