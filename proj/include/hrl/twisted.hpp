#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>

#include "hrl/grid.hpp"
#include "hrl/ratefit.hpp"
#include "hrl/spectral.hpp"

namespace hrl {

// Points live in R^{2d} with layout (x_1..x_d, xi_1..xi_d); the symplectic
// pairing <z, S z'> = sum_i z_i z'_{d+i} - z_{d+i} z'_i matches that layout.
struct TwistedKernelContext {
  int d = 1;
  int k = 0;

  void validate() const;
  int lambda() const { return 2 * k + d; }
  Eigen::MatrixXd S() const;  // 2d x 2d, S^T = -S, S^2 = -I
};

// L_k^alpha(t) by the three-term recurrence.
double laguerre_eval(int k, int alpha, double t);

// phi_k(z) = (2 pi)^{-d} L_k^{d-1}(|z|^2/2) e^{-|z|^2/4}, z in R^{2d}.
double phi_k(int k, int d, std::span<const double> z);

// (2 pi)^{-d/2} Int e^{i<x,xi>} h_alpha(xi - y/2) h_beta(xi + y/2) dxi with
// z = (x, y), tensorized over coordinates; each factor is a trapezoid sum
// sized to the index bandwidth sqrt(2k+1) and the modulation |x|.
std::complex<double> fourier_wigner(const MultiIndex& alpha,
                                    const MultiIndex& beta,
                                    std::span<const double> z);

// (f x g)(z) = Int f(w) g(z - w) e^{(i/2)<z, S w>} dw on a shared grid that
// contains 0 as a node per axis; displaced points outside the grid count as 0.
GridFunction twisted_convolution(const GridFunction& f, const GridFunction& g);

// phi_k(z - z') e^{(i/2)<z, S z'>} with k = (lambda - d)/2; lambda must sit on
// the spectrum 2 N_0 + d.
std::complex<double> special_projection_kernel(int lambda, int d,
                                               std::span<const double> z,
                                               std::span<const double> zp);

// Sum over spectrum points lambda' < lambda of (1 - lambda'/lambda)^delta
// times the projection kernel; empty spectrum gives 0.
std::complex<double> bochner_riesz_kernel_L(double lambda, double delta, int d,
                                            std::span<const double> z,
                                            std::span<const double> zp);

// Slope of max_z |projection kernel(z, 0)| against lambda; the maximum sits at
// z = 0, where the kernel grows like lambda^{d-1}.
RateFit sup_kernel_bound_L(std::span<const double> lambda_list, int d);

}  // namespace hrl
