#pragma once

#include <complex>
#include <functional>
#include <span>

#include "hrl/window.hpp"

namespace hrl {

// Points in phase space are stacked (x_1..x_d, xi_1..xi_d); the symplectic
// pairing is <z, S z'> = sum_i z_i z'_{d+i} - z_{d+i} z'_i.
double symplectic_form(std::span<const double> z, std::span<const double> zp);

// t/2 + (|x|^2+|y|^2) cos t / (2 sin t) - <x,y>/sin t.  Odd in t; callers keep
// t away from pi Z.
double hermite_phase(double t, std::span<const double> x,
                     std::span<const double> y);

// t + |z-z'|^2 cos t / (4 sin t) + <z,Sz'>/2.
double twisted_phase(double t, std::span<const double> z,
                     std::span<const double> zp);

// Fixed-time harmonic-oscillator propagator.  The half-integer power of
// sin 2t carries a Maslov-index branch so the formula stays an identity on
// every window between singular times, not only the first one.
std::complex<double> mehler_kernel(double t, std::span<const double> x,
                                   std::span<const double> y);

std::complex<double> twisted_propagator_kernel(double t,
                                               std::span<const double> z,
                                               std::span<const double> zp);

// Window-localized scaled kernel: C_d integral of w(t) (sin t)^{-d/2}
// exp(i lambda hermite_phase) over the window support.  The constant and
// branch are normalized so the result equals the smoothed spectral sum at
// scaled points exactly, not only in modulus.
std::complex<double> scaled_hermite_kernel(const WindowFunction& w,
                                           double lambda,
                                           std::span<const double> x,
                                           std::span<const double> y);

std::complex<double> scaled_twisted_kernel(const WindowFunction& w,
                                           double lambda,
                                           std::span<const double> z,
                                           std::span<const double> zp);

// (1/2) sum over levels lambda' of eta_hat((lambda-lambda')/2)
// Pi_{lambda'}(x,y), truncated once the weights stay below 1e-14 past the
// peak.  level_cap bounds the level index k' (0 = default cap).
std::complex<double> smoothed_spectral_sum(
    const std::function<std::complex<double>(double)>& eta_hat, double lambda,
    std::span<const double> x, std::span<const double> y, int d,
    int level_cap = 0);

}  // namespace hrl
