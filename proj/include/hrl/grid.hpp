#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hrl/util.hpp"

namespace hrl {

// Uniform tensor-product grid over a box, endpoints included.  Axis 0 is the
// slowest-varying index in the flattened layout.
struct Grid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<int> n;

  int dim() const { return static_cast<int>(n.size()); }

  double step(int axis) const {
    return (hi[axis] - lo[axis]) / (n[axis] - 1);
  }

  std::size_t size() const {
    std::size_t total = 1;
    for (int m : n) total *= static_cast<std::size_t>(m);
    return total;
  }

  void validate() const {
    if (lo.size() != hi.size() || lo.size() != n.size() || n.empty())
      throw DomainError("grid: axis spec sizes disagree");
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (n[i] < 2) throw DomainError("grid: need at least 2 points per axis");
      if (!(hi[i] > lo[i])) throw DomainError("grid: empty box");
    }
  }

  std::vector<double> axis_coords(int axis) const {
    std::vector<double> c(n[axis]);
    double h = step(axis);
    for (int i = 0; i < n[axis]; ++i) c[i] = lo[axis] + h * i;
    return c;
  }

  void unflatten(std::size_t flat, std::vector<int>& idx) const {
    idx.resize(n.size());
    for (int a = dim() - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(flat % n[a]);
      flat /= n[a];
    }
  }

  std::vector<double> point(std::size_t flat) const {
    std::vector<int> idx;
    unflatten(flat, idx);
    std::vector<double> p(n.size());
    for (int a = 0; a < dim(); ++a) p[a] = lo[a] + step(a) * idx[a];
    return p;
  }

  // Tensor trapezoid weight: product over axes of h (interior) or h/2 (edge).
  double weight(std::size_t flat) const {
    std::vector<int> idx;
    unflatten(flat, idx);
    double w = 1.0;
    for (int a = 0; a < dim(); ++a) {
      double h = step(a);
      w *= (idx[a] == 0 || idx[a] == n[a] - 1) ? 0.5 * h : h;
    }
    return w;
  }
};

struct GridFunction {
  Grid grid;
  std::vector<std::complex<double>> values;

  void validate() const {
    grid.validate();
    if (values.size() != grid.size())
      throw DomainError("grid function: value count does not match grid");
  }
};

inline std::complex<double> grid_inner(const GridFunction& f,
                                       const GridFunction& g) {
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += f.grid.weight(i) * std::conj(f.values[i]) * g.values[i];
  return acc;
}

inline double grid_norm(const GridFunction& f) {
  double acc = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += f.grid.weight(i) * std::norm(f.values[i]);
  return std::sqrt(acc);
}

}  // namespace hrl
