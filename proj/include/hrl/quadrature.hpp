#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hrl {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch rules. gauss_hermite integrates against e^{-x^2} on the line,
// gauss_laguerre against x^alpha e^{-x} on (0,inf), gauss_legendre against 1
// on (-1,1). Exact for polynomial integrands of degree <= 2n-1.
QuadRule gauss_hermite(int n);
QuadRule gauss_laguerre(int n, double alpha);
QuadRule gauss_legendre(int n);

// Adaptive Gauss-Kronrod 7/15 for smooth real or complex integrands.
// Subdivides until the local error estimate sum is below tol; throws
// ConvergenceError (with the last two estimates) when the interval budget
// runs out.
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-12,
                           int max_intervals = 20000);
std::complex<double> adaptive_quadrature_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol = 1e-12, int max_intervals = 20000);

// e^{i lambda phase(t)} amplitude(t) on [t0,t1]; interval must stay clear of
// the phase's singular set by construction (callers enforce margins).
struct OscillatoryIntegrand {
  std::function<double(double)> phase;
  std::function<std::complex<double>(double)> amplitude;
  double t0 = 0;
  double t1 = 0;
  double lambda = 1;
};

struct OscResult {
  std::complex<double> value;
  double error_estimate;
};

// Panelized Gauss-Legendre sized from the phase derivative so each panel
// resolves >= 8 nodes per oscillation, then doubled until two successive
// refinements agree to tol. Throws ConvergenceError when the node budget is
// exhausted.
OscResult oscillatory_quadrature(const OscillatoryIntegrand& I,
                                 double tol = 1e-10,
                                 long max_nodes = 4000000);

// Leading stationary-phase term at an interior critical point t_c:
// a(t_c) sqrt(2 pi / (lambda |phi''|)) e^{i lambda phi(t_c)} e^{i sgn(phi'') pi/4}.
// phi'' computed by central differences; |phi''| below threshold throws
// DomainError (degenerate critical point).
std::complex<double> stationary_phase_leading(const OscillatoryIntegrand& I,
                                              double t_c,
                                              double second_deriv_floor = 1e-8);

// Composite Simpson on a uniform grid (n panels, n even).
template <typename F>
auto simpson(const F& f, double a, double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  auto acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

}  // namespace hrl
