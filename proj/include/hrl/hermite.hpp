#pragma once

#include <span>
#include <vector>

namespace hrl {

// Plain three-term recurrence h_{k+1} = sqrt(2/(k+1)) t h_k - sqrt(k/(k+1)) h_{k-1},
// h_0 = pi^{-1/4} e^{-t^2/2}. Underflows gracefully to 0 once e^{-t^2/2} is
// subnormal, so it is only trustworthy where h_0 is representable; use
// HermiteBank beyond that.
std::vector<double> hermite_eval(int k_max, double t);

// h_k'(t) = sqrt(2k) h_{k-1}(t) - t h_k(t), from precomputed values.
std::vector<double> hermite_derivatives(std::span<const double> values, double t);

// Deferred-exponent evaluation at one abscissa: every h_k is stored as
// mantissa * 2^exp2 so the recurrence never under- or overflows even when
// e^{-t^2/2} is far below the subnormal range (turning-point work at k ~ 10^3).
class HermiteBank {
 public:
  HermiteBank(int k_max, double t);
  int k_max() const { return k_max_; }
  double abscissa() const { return t_; }
  double value(int k) const;       // collapses to double (0 on true underflow)
  double derivative(int k) const;  // sqrt(2k) h_{k-1} - t h_k
  double mantissa(int k) const { return mant_[k]; }
  long exponent(int k) const { return exp2_[k]; }

 private:
  int k_max_;
  double t_;
  std::vector<double> mant_;
  std::vector<long> exp2_;
};

double hermite_tensor_eval(std::span<const int> alpha, std::span<const double> x);

enum class RegimeTag { oscillatory, transition, decay };

struct AsymptoticRegime {
  RegimeTag tag;
  double predicted_magnitude;
  double phase_s;
};

// Regime windows split exactly at |t| = mu -+ mu^{-1/3}, mu = sqrt(2k+1).
AsymptoticRegime asymptotic_regime(int k, double t);

// s_mu^-(t) = int_0^t sqrt(mu^2 - tau^2) dtau   (|t| <= mu),
// s_mu^+(t) = int_mu^t sqrt(tau^2 - mu^2) dtau  (t >= mu), in closed form.
double turning_phase_s(double mu, double t, bool plus_side);

// max_{j,k <= k_max} |<h_j, h_k> - delta_jk| by composite trapezoid on
// [-(sqrt(2 k_max + 1) + 10), +...] with >= points_per_osc nodes per
// oscillation at the highest local frequency.
double hermite_orthonormality_residual(int k_max, double points_per_osc = 8.0);

// Smallest C with |h_k(t)| <= C * predicted_magnitude over a dense sample.
double hermite_envelope_constant(int k_max, int k_stride = 1);

}  // namespace hrl
