#pragma once

#include <span>
#include <utility>
#include <vector>

namespace hrl {

// Least-squares power law value ~ C * lambda^slope, fitted on log-log axes.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // log C
  double r2 = 0.0;
  int n = 0;
};

// Needs >= 2 points with positive abscissae and values; 2 points interpolate
// exactly (r2 = 1).
RateFit fit_power_law(std::span<const std::pair<double, double>> points);

}  // namespace hrl
