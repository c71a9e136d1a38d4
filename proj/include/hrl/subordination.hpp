#pragma once

#include "hrl/window.hpp"

namespace hrl {

// Decaying-side (Weyl) derivative of order nu > 0 of a window profile F,
// evaluated at t.  Integer orders reduce to (-1)^n d^n/dt^n; fractional
// orders go through the substitution-regularized Weyl integral of the
// complementary order followed by an integer-order stencil.
double weyl_derivative(const WindowFunction& F, double nu, double t);

// |F(lambda) - integral of F^(delta+1)(t) t^delta (1 - lambda/t)_+^delta
// / Gamma(delta+1) dt|, the scalar subordination identity at threshold
// lambda.  F must be supported in (0, infinity).
double riesz_subordination_residual(const WindowFunction& F, double delta,
                                    double lambda);

}  // namespace hrl
