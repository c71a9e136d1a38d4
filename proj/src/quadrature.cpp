#include "hrl/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>

#include "hrl/util.hpp"

namespace hrl {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Symmetric tridiagonal eigenproblem: nodes are eigenvalues, weights are
// mu0 * (first eigenvector component)^2.
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                      double mu0) {
  int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

// Kronrod 15 / Gauss 7 on [-1,1] (positive half; rule is symmetric).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <typename T>
void gk15(const std::function<T(double)>& f, double a, double b, T* kronrod,
          double* err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T resk = kWgk[7] * fc;
  T resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    T f1 = f(c - x), f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  *kronrod = resk * h;
  *err = std::abs((resk - resg) * h);
}

template <typename T>
struct Interval {
  double a, b, err;
  T value;
  bool operator<(const Interval& o) const { return err < o.err; }
};

template <typename T>
T adaptive_impl(const std::function<T(double)>& f, double a, double b,
                double tol, int max_intervals) {
  Interval<T> root{a, b, 0.0, T{}};
  gk15<T>(f, a, b, &root.value, &root.err);
  std::priority_queue<Interval<T>> q;
  q.push(root);
  T total = root.value;
  double total_err = root.err;
  int used = 1;
  double prev_norm = std::abs(total);
  while (total_err > tol * std::max(1.0, std::abs(total))) {
    if (used >= max_intervals)
      throw ConvergenceError("adaptive quadrature: interval budget exhausted",
                             std::abs(total), prev_norm);
    Interval<T> top = q.top();
    q.pop();
    prev_norm = std::abs(total);
    double mid = 0.5 * (top.a + top.b);
    Interval<T> left{top.a, mid, 0.0, T{}}, right{mid, top.b, 0.0, T{}};
    gk15<T>(f, left.a, left.b, &left.value, &left.err);
    gk15<T>(f, right.a, right.b, &right.value, &right.err);
    total += left.value + right.value - top.value;
    total_err += left.err + right.err - top.err;
    q.push(left);
    q.push(right);
    ++used;
  }
  return total;
}

}  // namespace

QuadRule gauss_hermite(int n) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n), e(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k / 2.0);
  return golub_welsch(d, e, std::sqrt(kPi));
}

QuadRule gauss_laguerre(int n, double alpha) {
  Eigen::VectorXd d(n), e(n - 1 > 0 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) d[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(k * (k + alpha));
  return golub_welsch(d, e, std::tgamma(alpha + 1.0));
}

QuadRule gauss_legendre(int n) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n), e(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) e[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(d, e, 2.0);
}

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_intervals) {
  return adaptive_impl<double>(f, a, b, tol, max_intervals);
}

std::complex<double> adaptive_quadrature_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol, int max_intervals) {
  return adaptive_impl<std::complex<double>>(f, a, b, tol, max_intervals);
}

OscResult oscillatory_quadrature(const OscillatoryIntegrand& I, double tol,
                                 long max_nodes) {
  if (!(I.t1 > I.t0)) return {0.0, 0.0};
  // Estimate the total phase sweep to size the initial panel count.
  double sweep = 0.0;
  {
    const int probes = 64;
    double h = (I.t1 - I.t0) / probes;
    double prev = I.phase(I.t0);
    for (int j = 1; j <= probes; ++j) {
      double cur = I.phase(I.t0 + j * h);
      sweep += std::abs(cur - prev);
      prev = cur;
    }
  }
  double oscillations = std::abs(I.lambda) * sweep / (2.0 * kPi) + 1.0;
  // >= 8 nodes per oscillation with a 16-node panel rule.
  long panels = std::max<long>(8, static_cast<long>(oscillations / 2.0) + 1);
  static const QuadRule panel_rule = gauss_legendre(16);

  auto evaluate = [&](long np) {
    std::complex<double> acc = 0.0;
    double h = (I.t1 - I.t0) / np;
    for (long p = 0; p < np; ++p) {
      double a = I.t0 + p * h, mid = a + 0.5 * h;
      for (std::size_t j = 0; j < panel_rule.nodes.size(); ++j) {
        double t = mid + 0.5 * h * panel_rule.nodes[j];
        acc += panel_rule.weights[j] * I.amplitude(t) *
               std::exp(std::complex<double>(0.0, I.lambda * I.phase(t)));
      }
    }
    return acc * (0.5 * h);
  };

  std::complex<double> prev = evaluate(panels);
  for (;;) {
    long next = panels * 2;
    if (next * 16 > max_nodes)
      throw ConvergenceError("oscillatory quadrature: node budget exhausted",
                             std::abs(prev), std::abs(prev));
    std::complex<double> cur = evaluate(next);
    double diff = std::abs(cur - prev);
    if (diff < tol * std::max(1.0, std::abs(cur))) return {cur, diff};
    prev = cur;
    panels = next;
  }
}

std::complex<double> stationary_phase_leading(const OscillatoryIntegrand& I,
                                              double t_c,
                                              double second_deriv_floor) {
  double h = std::cbrt(2.2e-16) * 100.0;  // second-derivative step
  double d2 = (I.phase(t_c + h) - 2.0 * I.phase(t_c) + I.phase(t_c - h)) / (h * h);
  if (std::abs(d2) < second_deriv_floor)
    throw DomainError("stationary phase: degenerate critical point");
  double sgn = d2 > 0 ? 1.0 : -1.0;
  std::complex<double> rot = std::exp(std::complex<double>(0.0, sgn * kPi / 4.0));
  return I.amplitude(t_c) * std::sqrt(2.0 * kPi / (std::abs(I.lambda) * std::abs(d2))) *
         std::exp(std::complex<double>(0.0, I.lambda * I.phase(t_c))) * rot;
}

}  // namespace hrl
