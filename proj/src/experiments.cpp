#include "hrl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hrl/hermite.hpp"
#include "hrl/kernels.hpp"
#include "hrl/phase_hermite.hpp"
#include "hrl/util.hpp"

namespace hrl {

RateFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2)
    throw DomainError("fit_power_law: need at least 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = points.size();
  std::vector<std::pair<double, double>> logs;
  logs.reserve(n);
  for (auto [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      throw DomainError("fit_power_law: points must be positive");
    double lx = std::log(x), ly = std::log(y);
    logs.emplace_back(lx, ly);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12 * (1.0 + sxx * n))
    throw DomainError("fit_power_law: abscissae are degenerate");
  RateFit fit;
  fit.n = n;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean = sy / n;
  for (auto [lx, ly] : logs) {
    double r = ly - (fit.intercept + fit.slope * lx);
    ss_res += r * r;
    ss_tot += (ly - mean) * (ly - mean);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// parallel_for with worker exceptions carried back to the caller; the lowest
// failing index wins so the error does not depend on scheduling.
void parallel_for_checked(std::size_t n,
                          const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errs(n);
  std::atomic<bool> failed{false};
  parallel_for(n, [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errs[i] = std::current_exception();
      failed.store(true);
    }
  });
  if (failed.load())
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
}

void require_lebesgue(const Rat& r, const char* name) {
  if (r < Rat(1))
    throw DomainError(std::string(name) + " must lie in [1, inf]");
}

void require_ladder(std::span<const double> xs, std::size_t min_count,
                    const char* who) {
  if (xs.size() < min_count)
    throw DomainError(std::string(who) + ": need at least " +
                      std::to_string(min_count) + " eigenvalues");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw DomainError(std::string(who) +
                        ": eigenvalues must increase strictly");
}

int level_index_checked(double lambda, int d, const char* who) {
  long long k = std::llround((lambda - d) / 2.0);
  if (!(lambda > 0) || k < 0 || static_cast<double>(2 * k + d) != lambda)
    throw ParityError(std::string(who) +
                      ": lambda must equal 2k + d for an integer k >= 0");
  return static_cast<int>(k);
}

double hk_at(int k, double t) { return HermiteBank(k, t).value(k); }

// golden-section maximizer on [a, c]; returns (argmax, max) over every
// point it evaluated, so a flat or multimodal bracket still reports the
// best sample rather than an interior compromise
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double c, int iters) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = c - gr * (c - a), x2 = a + gr * (c - a);
  double f1 = f(x1), f2 = f(x2);
  double bt = f1 >= f2 ? x1 : x2, bf = std::max(f1, f2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (c - a);
      f2 = f(x2);
      if (f2 > bf) {
        bf = f2;
        bt = x2;
      }
    } else {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - gr * (c - a);
      f1 = f(x1);
      if (f1 > bf) {
        bf = f1;
        bt = x1;
      }
    }
  }
  return {bt, bf};
}

// max of f given samples vs on the uniform grid ts: the strongest local
// maxima (and both endpoints) are polished by golden section in their
// brackets, which recovers peak heights the grid clipped
double refined_samples_max(const std::vector<double>& ts,
                           const std::vector<double>& vs,
                           const std::function<double(double)>& f) {
  std::size_t n = ts.size();
  std::vector<std::pair<double, std::size_t>> cands;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) cands.push_back({vs[i], i});
  cands.push_back({vs.front(), 0});
  cands.push_back({vs.back(), n - 1});
  std::sort(cands.begin(), cands.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  if (cands.size() > 12) cands.resize(12);
  double best = 0.0;
  for (auto [cv, i] : cands) {
    double a = ts[i > 0 ? i - 1 : 0];
    double c = ts[std::min(i + 1, n - 1)];
    double local = cv;
    if (c > a) local = std::max(local, golden_max(f, a, c, 32).second);
    best = std::max(best, local);
  }
  return best;
}

double scan_profile_max(const std::function<double(double)>& f, double lo,
                        double hi, double step) {
  int n = std::max(8, static_cast<int>(std::ceil((hi - lo) / step)));
  std::vector<double> ts(n + 1), vs(n + 1);
  double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    ts[i] = lo + h * i;
    vs[i] = f(ts[i]);
  }
  return refined_samples_max(ts, vs, f);
}

// trapezoid of g(v) over a uniform sample vector
double trapezoid(const std::vector<double>& vs, double h,
                 const std::function<double(double)>& g) {
  double acc = 0.5 * (g(vs.front()) + g(vs.back()));
  for (std::size_t i = 1; i + 1 < vs.size(); ++i) acc += g(vs[i]);
  return acc * h;
}

// ----- counterexample construction -----

// transverse index window [lambda^{1/3}/d, 2 lambda^{1/3}/d] as integers
std::pair<int, int> transverse_window(double lambda, int d) {
  double c = std::cbrt(lambda);
  int lo = static_cast<int>(std::ceil(c / d - 1e-9));
  int hi = static_cast<int>(std::floor(2.0 * c / d + 1e-9));
  return {lo, hi};
}

std::vector<MultiIndex> build_index_set(int k, int d, int lo, int hi) {
  std::vector<MultiIndex> J;
  if (d == 1) {
    J.push_back({k});
    return J;
  }
  if (lo > hi || lo > k) return J;
  MultiIndex digits(d - 1, lo);
  for (;;) {
    int sum = std::accumulate(digits.begin(), digits.end(), 0);
    if (sum <= k) {
      MultiIndex alpha(d);
      alpha[0] = k - sum;
      std::copy(digits.begin(), digits.end(), alpha.begin() + 1);
      J.push_back(std::move(alpha));
    }
    int a = 0;
    while (a < d - 1 && digits[a] == hi) digits[a++] = lo;
    if (a == d - 1) break;
    ++digits[a];
  }
  return J;
}

std::vector<int> axis_kmax(const std::vector<MultiIndex>& J, int d) {
  std::vector<int> m(d, 0);
  for (const auto& a : J)
    for (int i = 0; i < d; ++i) m[i] = std::max(m[i], a[i]);
  return m;
}

std::vector<double> bank_values(int kmax, double t) {
  HermiteBank bank(kmax, t);
  std::vector<double> v(kmax + 1);
  for (int n = 0; n <= kmax; ++n) v[n] = bank.value(n);
  return v;
}

double mass_from_tables(const std::vector<MultiIndex>& J,
                        const std::vector<std::vector<double>>& val) {
  double s = 0.0;
  for (const auto& a : J) {
    double t = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      double h = val[i][a[i]];
      t *= h * h;
    }
    s += t;
  }
  return s;
}

}  // namespace

ExponentTable exponent_table(int d, const Rat& p, const Rat& q) {
  if (d < 1) throw DomainError("exponent table: dimension must be positive");
  require_lebesgue(p, "exponent table: p");
  require_lebesgue(q, "exponent table: q");
  const Rat half(1, 2);
  const Rat ip = rat_reciprocal(p), iq = rat_reciprocal(q);
  ExponentTable t;
  t.d = d;
  t.p = p;
  t.q = q;
  t.delta_dp = rat_max(Rat(d) * rat_abs(ip - half) - half, Rat(0));
  t.gamma_dp = Rat(-1, 3) * ip + Rat(d, 3) * (half - ip);
  t.p0_d = d % 2 == 0 ? Rat(2) * Rat(3 * d + 2, 3 * d - 2)
                      : Rat(2) * Rat(3 * d + 1, 3 * d - 3);
  t.counterexample_exponent = Rat(-1, 3) * ip + Rat(d, 6) * (Rat(1) - ip - iq);
  return t;
}

CounterexampleBundle build_counterexample(double lambda, int d,
                                          std::uint64_t seed) {
  if (d < 1) throw DomainError("counterexample: dimension must be positive");
  int k = level_index_checked(lambda, d, "counterexample");
  CounterexampleBundle b;
  b.lambda = lambda;
  b.d = d;
  b.k = k;
  b.seed = seed;
  double rt = std::sqrt(lambda);
  double il6 = std::pow(lambda, -1.0 / 6.0);
  b.q_inner = rt / 200.0;
  b.q_outer = rt / 100.0;
  b.q_halfwidth = 100.0 * std::pow(lambda, 1.0 / 6.0);
  b.x_star = Eigen::VectorXd::Zero(d);
  b.x_star(0) = rt - 100.0 * il6;
  auto [tlo, thi] = transverse_window(lambda, d);
  b.J = build_index_set(k, d, tlo, thi);
  if (b.J.empty())
    throw DomainError(
        "counterexample: transverse index window is empty at this eigenvalue; "
        "raise lambda");
  b.window_lo = rt - 20.0 * il6;
  b.window_hi = rt - 10.0 * il6;
  double tr = il6 / std::sqrt(static_cast<double>(d));

  std::vector<int> kmax = axis_kmax(b.J, d);
  std::vector<std::vector<double>> val(d);
  auto set_axis = [&](int axis, double t) {
    val[axis] = bank_values(kmax[axis], t);
  };
  auto axis_objective = [&](int axis) {
    return [&, axis](double t) {
      set_axis(axis, t);
      return mass_from_tables(b.J, val);
    };
  };

  // the first coordinate oscillates at the local momentum, the transverse
  // ones at most at lambda^{1/6} scale over a lambda^{-1/6} box
  double p1 = std::sqrt(
      std::max(2.0 * kmax[0] + 1.0 - b.window_lo * b.window_lo, 4.0));
  int n1 = std::max<int>(
      96, static_cast<int>(
              std::ceil((b.window_hi - b.window_lo) * p1 * 24.0 / kPi)));
  const int nt = 64;

  auto sweep_axis = [&](int axis, double lo, double hi, int n) {
    auto f = axis_objective(axis);
    double h = (hi - lo) / n;
    double bt = lo, bf = -1.0;
    for (int i = 0; i <= n; ++i) {
      double t = lo + h * i;
      double v = f(t);
      if (v > bf) {
        bf = v;
        bt = t;
      }
    }
    auto [rt_, rf] = golden_max(f, std::max(lo, bt - h), std::min(hi, bt + h), 40);
    if (rf > bf) {
      bf = rf;
      bt = rt_;
    }
    set_axis(axis, bt);
    return std::pair<double, double>{bt, bf};
  };

  Eigen::VectorXd best_x(d);
  double best_mass = -1.0;
  const int starts = d == 1 ? 1 : 5;
  const int sweeps = d == 1 ? 1 : 3;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x(d);
    if (s == 0) {
      x(0) = 0.5 * (b.window_lo + b.window_hi);
      for (int i = 1; i < d; ++i) x(i) = 0.0;
    } else {
      auto rng = item_rng(seed, static_cast<std::uint64_t>(s));
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      x(0) = b.window_lo + (b.window_hi - b.window_lo) * u01(rng);
      for (int i = 1; i < d; ++i) x(i) = tr * (2.0 * u01(rng) - 1.0);
    }
    for (int i = 0; i < d; ++i) set_axis(i, x(i));
    double f = -1.0;
    for (int sw = 0; sw < sweeps; ++sw)
      for (int axis = 0; axis < d; ++axis) {
        auto [bt, bf] = axis == 0 ? sweep_axis(0, b.window_lo, b.window_hi, n1)
                                  : sweep_axis(axis, -tr, tr, nt);
        x(axis) = bt;
        f = bf;
      }
    if (f > best_mass) {
      best_mass = f;
      best_x = x;
    }
  }

  b.x_tilde = best_x;
  b.x0 = best_x;
  std::vector<std::vector<double>> bt(d);
  for (int i = 0; i < d; ++i) bt[i] = bank_values(kmax[i], best_x(i));
  b.g_coeffs.reserve(b.J.size());
  double ss = 0.0;
  for (const auto& a : b.J) {
    double t = 1.0;
    for (int i = 0; i < d; ++i) t *= bt[i][a[i]];
    b.g_coeffs.push_back(t);
    ss += t * t;
  }
  b.sum_sq = ss;
  return b;
}

namespace {

// ----- projection rate rows -----

std::array<double, 4> rate_row_d1(double lambda, const Rat& p, const Rat& q,
                                  double ppo) {
  CounterexampleBundle b = build_counterexample(lambda, 1, 0);
  int k = b.k;
  double mu = std::sqrt(2.0 * k + 1.0);
  double a0 = hk_at(k, b.x0(0));

  // samples of |h_k| on one slab (|h_k| is even, Q is two mirrored slabs)
  double slo = b.q_inner, shi = b.q_outer;
  int ns = std::max<int>(
      48, static_cast<int>(std::ceil((shi - slo) * mu * ppo / kPi)));
  double sh = (shi - slo) / ns;
  std::vector<double> st(ns + 1), sv(ns + 1);
  for (int i = 0; i <= ns; ++i) {
    st[i] = slo + sh * i;
    sv[i] = std::abs(hk_at(k, st[i]));
  }
  double c2 = 2.0 * trapezoid(sv, sh, [](double v) { return v * v; });
  double coef = a0 * c2;  // the projection of f is coef * h_k

  double normp;
  if (p.is_infinite()) {
    auto f = [&](double t) { return std::abs(hk_at(k, t)); };
    normp = std::abs(a0) * refined_samples_max(st, sv, f);
  } else {
    double pd = p.value();
    normp = std::abs(a0) *
            std::pow(2.0 * trapezoid(sv, sh,
                                     [pd](double v) { return std::pow(v, pd); }),
                     1.0 / pd);
  }

  // whole-line samples of |h_k| out to the decay shell
  double hi = mu + 8.0 * std::pow(mu, -1.0 / 3.0);
  int nl = std::max<int>(64, static_cast<int>(std::ceil(hi * mu * ppo / kPi)));
  double lh = hi / nl;
  std::vector<double> lt(nl + 1), lv(nl + 1);
  for (int i = 0; i <= nl; ++i) {
    lt[i] = lh * i;
    lv[i] = std::abs(hk_at(k, lt[i]));
  }
  double normq;
  if (q.is_infinite()) {
    auto f = [&](double t) { return std::abs(hk_at(k, t)); };
    normq = std::abs(coef) * refined_samples_max(lt, lv, f);
  } else {
    double qd = q.value();
    normq = std::abs(coef) *
            std::pow(2.0 * trapezoid(lv, lh,
                                     [qd](double v) { return std::pow(v, qd); }),
                     1.0 / qd);
  }
  return {lambda, normq / normp, normq, normp};
}

// integral of h_u h_v over [-l, l] for u != v, u + v even, from banks that
// already hold every order at the endpoint (same bracket identity as
// cross_hermite_integral, without rebuilding the bank per entry)
double cross_pair(const HermiteBank& bk, int u, int v) {
  return 2.0 / (std::sqrt(2.0) * (u - v)) *
         (std::sqrt(u + 1.0) * bk.value(u + 1) * bk.value(v) -
          std::sqrt(v + 1.0) * bk.value(u) * bk.value(v + 1));
}

// per-axis Gram matrices: G(u, v) = integral of h_u h_v over the region
Eigen::MatrixXd slab_pair_gram(int k, double a, double b, double ppo) {
  HermiteBank ba(k + 1, a), bb(k + 1, b);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int u = 0; u <= k; ++u)
    for (int v = 0; v < u; ++v) {
      if ((u + v) % 2 != 0) continue;
      double val = cross_pair(bb, u, v) - cross_pair(ba, u, v);
      g(u, v) = val;
      g(v, u) = val;
    }
  double mu = std::sqrt(2.0 * k + 1.0);
  int ns = std::max<int>(48,
                         static_cast<int>(std::ceil((b - a) * mu * ppo / kPi)));
  double h = (b - a) / ns;
  std::vector<std::vector<double>> rows(ns + 1);
  for (int i = 0; i <= ns; ++i) rows[i] = bank_values(k, a + h * i);
  for (int u = 0; u <= k; ++u) {
    double acc = 0.5 * (rows[0][u] * rows[0][u] + rows[ns][u] * rows[ns][u]);
    for (int i = 1; i < ns; ++i) acc += rows[i][u] * rows[i][u];
    g(u, u) = 2.0 * acc * h;
  }
  return g;
}

Eigen::MatrixXd sym_box_gram(int k, double l, double ppo) {
  HermiteBank bl(k + 1, l);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int u = 0; u <= k; ++u)
    for (int v = 0; v < u; ++v) {
      if ((u + v) % 2 != 0) continue;
      double val = cross_pair(bl, u, v);
      g(u, v) = val;
      g(v, u) = val;
    }
  // diagonal by quadrature over the effective support (the tail past the
  // turning shell is far below double precision)
  double mu = std::sqrt(2.0 * k + 1.0);
  double m = std::min(l, mu + 12.0);
  int ns = std::max<int>(64, static_cast<int>(std::ceil(m * mu * ppo / kPi)));
  double h = m / ns;
  std::vector<std::vector<double>> rows(ns + 1);
  for (int i = 0; i <= ns; ++i) rows[i] = bank_values(k, h * i);
  for (int u = 0; u <= k; ++u) {
    double acc = 0.5 * (rows[0][u] * rows[0][u] + rows[ns][u] * rows[ns][u]);
    for (int i = 1; i < ns; ++i) acc += rows[i][u] * rows[i][u];
    g(u, u) = 2.0 * acc * h;
  }
  return g;
}

// axis sample matrix H(i, j) = h_j(t_i), orders 0..k
Eigen::MatrixXd hermite_axis_matrix(int k, const std::vector<double>& ts) {
  Eigen::MatrixXd m(ts.size(), k + 1);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    HermiteBank bank(k, ts[i]);
    for (int j = 0; j <= k; ++j) m(i, j) = bank.value(j);
  }
  return m;
}

std::vector<double> uniform_nodes(double lo, double hi, int n) {
  std::vector<double> t(n + 1);
  double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) t[i] = lo + h * i;
  return t;
}

std::vector<double> trapezoid_weights(const std::vector<double>& ts) {
  double h = ts[1] - ts[0];
  std::vector<double> w(ts.size(), h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

std::array<double, 4> rate_row_d2(double lambda, const Rat& p, const Rat& q,
                                  double ppo) {
  CounterexampleBundle b = build_counterexample(lambda, 2, 0);
  int k = b.k;
  double rt = std::sqrt(lambda);
  double il6 = std::pow(lambda, -1.0 / 6.0);

  Eigen::MatrixXd g1 = slab_pair_gram(k, b.q_inner, b.q_outer, ppo);
  Eigen::MatrixXd g2 = sym_box_gram(k, b.q_halfwidth, ppo);

  std::vector<double> phix = bank_values(k, b.x0(0));
  std::vector<double> phiy = bank_values(k, b.x0(1));

  // coefficients of the projected cutoff against the level basis
  Eigen::VectorXd c(k + 1);
  for (int j = 0; j <= k; ++j) {
    double acc = 0.0;
    for (int u = 0; u <= k; ++u)
      acc += phix[u] * phiy[k - u] * g1(j, u) * g2(k - j, k - u);
    c(j) = acc;
  }

  // values of the projected function on a plane grid via the axis matrices
  double r = rt + 10.0 * il6 + 1.0;
  double step = kPi / (std::sqrt(2.0 * k + 2.0) * ppo);
  int ng = static_cast<int>(std::ceil(2.0 * r / step));
  std::vector<double> gx = uniform_nodes(-r, r, ng);
  std::vector<double> wx = trapezoid_weights(gx);
  Eigen::MatrixXd hx = hermite_axis_matrix(k, gx);
  Eigen::MatrixXd bm(k + 1, gx.size());
  for (int j = 0; j <= k; ++j)
    for (std::size_t iy = 0; iy < gx.size(); ++iy)
      bm(j, iy) = c(j) * hx(iy, k - j);

  auto eval_proj = [&](double x1, double x2) {
    HermiteBank b1(k, x1), b2(k, x2);
    double acc = 0.0;
    for (int j = 0; j <= k; ++j)
      acc += c(j) * b1.value(j) * b2.value(k - j);
    return std::abs(acc);
  };

  double normq;
  {
    const int chunk = 256;
    double best = 0.0;
    int bi = 0, bj = 0;
    double acc = 0.0;
    double qd = q.is_infinite() ? 0.0 : q.value();
    for (int i0 = 0; i0 <= ng; i0 += chunk) {
      int rows = std::min(chunk, ng + 1 - i0);
      Eigen::MatrixXd v = hx.middleRows(i0, rows) * bm;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j <= ng; ++j) {
          double a = std::abs(v(i, j));
          if (a > best) {
            best = a;
            bi = i0 + i;
            bj = j;
          }
          if (!q.is_infinite()) acc += wx[i0 + i] * wx[j] * std::pow(a, qd);
        }
    }
    if (q.is_infinite()) {
      // polish the grid argmax by alternating line searches
      double x1 = gx[bi], x2 = gx[bj];
      for (int round = 0; round < 3; ++round) {
        auto fx = [&](double t) { return eval_proj(t, x2); };
        x1 = golden_max(fx, std::max(-r, x1 - step), std::min(r, x1 + step), 28)
                 .first;
        auto fy = [&](double t) { return eval_proj(x1, t); };
        x2 = golden_max(fy, std::max(-r, x2 - step), std::min(r, x2 + step), 28)
                 .first;
      }
      normq = std::max(best, eval_proj(x1, x2));
    } else {
      normq = std::pow(acc, 1.0 / qd);
    }
  }

  // the cutoff itself lives on Q: two slabs crossed with the symmetric box,
  // clipped to where the level functions are above double precision
  double normp;
  {
    Eigen::VectorXd w(k + 1);
    for (int u = 0; u <= k; ++u) w(u) = phix[u] * phiy[k - u];
    double mu = std::sqrt(2.0 * k + 1.0);
    int ns = std::max<int>(
        48, static_cast<int>(
                std::ceil((b.q_outer - b.q_inner) * mu * ppo / kPi)));
    std::vector<double> s1 = uniform_nodes(b.q_inner, b.q_outer, ns);
    std::vector<double> sw = trapezoid_weights(s1);
    std::vector<double> nodes1 = s1;
    std::vector<double> weights1 = sw;
    for (int i = 0; i <= ns; ++i) {
      nodes1.push_back(-s1[i]);
      weights1.push_back(sw[i]);
    }
    double y2 = std::min(b.q_halfwidth, mu + 12.0);
    int n2 = static_cast<int>(std::ceil(2.0 * y2 / step));
    std::vector<double> s2 = uniform_nodes(-y2, y2, n2);
    std::vector<double> w2 = trapezoid_weights(s2);
    Eigen::MatrixXd h1 = hermite_axis_matrix(k, nodes1);
    Eigen::MatrixXd h2 = hermite_axis_matrix(k, s2);
    Eigen::MatrixXd wm(k + 1, s2.size());
    for (int u = 0; u <= k; ++u)
      for (std::size_t j = 0; j < s2.size(); ++j)
        wm(u, j) = w(u) * h2(j, k - u);
    Eigen::MatrixXd fv = h1 * wm;
    if (p.is_infinite()) {
      normp = fv.cwiseAbs().maxCoeff();
    } else {
      double pd = p.value();
      double acc = 0.0;
      for (std::size_t i = 0; i < nodes1.size(); ++i)
        for (std::size_t j = 0; j < s2.size(); ++j)
          acc += weights1[i] * w2[j] * std::pow(std::abs(fv(i, j)), pd);
      normp = std::pow(acc, 1.0 / pd);
    }
  }

  return {lambda, normq / normp, normq, normp};
}

}  // namespace

RateExperiment projection_rate_experiment(int d, const Rat& p, const Rat& q,
                                          std::span<const double> lambda_list,
                                          double points_per_osc) {
  if (d != 1 && d != 2)
    throw DomainError(
        "projection rate: the transverse enumeration supports d = 1 and d = 2 "
        "only");
  require_lebesgue(p, "projection rate: p");
  require_lebesgue(q, "projection rate: q");
  if (!(points_per_osc > 0))
    throw DomainError("projection rate: points_per_osc must be positive");
  require_ladder(lambda_list, 5, "projection rate");
  for (double l : lambda_list) level_index_checked(l, d, "projection rate");

  RateExperiment ex;
  ex.expected = exponent_table(d, p, q).counterexample_exponent.value();
  ex.under_resolved = points_per_osc < 4.0 ||
                      lambda_list.back() < 8.0 * lambda_list.front();
  ex.rows.resize(lambda_list.size());
  parallel_for_checked(lambda_list.size(), [&](std::size_t i) {
    ex.rows[i] = d == 1
                     ? rate_row_d1(lambda_list[i], p, q, points_per_osc)
                     : rate_row_d2(lambda_list[i], p, q, points_per_osc);
  });
  std::vector<std::pair<double, double>> pts;
  pts.reserve(ex.rows.size());
  for (const auto& r : ex.rows) pts.emplace_back(r[0], r[1]);
  ex.fit = fit_power_law(pts);
  return ex;
}

RateFit kernel_sup_scan(int d, std::span<const double> lambda_list,
                        ScanRegion region, double points_per_osc) {
  if (d < 1) throw DomainError("kernel sup scan: dimension must be positive");
  if (!(points_per_osc > 0))
    throw DomainError("kernel sup scan: points_per_osc must be positive");
  require_ladder(lambda_list, 2, "kernel sup scan");
  std::vector<int> ks(lambda_list.size());
  for (std::size_t i = 0; i < lambda_list.size(); ++i)
    ks[i] = level_index_checked(lambda_list[i], d, "kernel sup scan");

  std::vector<std::pair<double, double>> pts(lambda_list.size());
  parallel_for_checked(lambda_list.size(), [&](std::size_t i) {
    double lambda = lambda_list[i];
    int k = ks[i];
    double rt = std::sqrt(lambda);

    // transverse mass at the origin: w[m] = sum over (d-1)-dim indices of
    // total order m of the squared factors at 0, by repeated convolution
    std::vector<double> w;
    if (d >= 2) {
      std::vector<double> s = hermite_eval(k, 0.0);
      for (double& x : s) x *= x;
      w = s;
      for (int extra = 3; extra <= d; ++extra) {
        std::vector<double> nw(k + 1, 0.0);
        for (int m = 0; m <= k; ++m)
          for (int j = 0; j <= m; ++j) nw[m] += w[j] * s[m - j];
        w.swap(nw);
      }
    }
    auto profile = [&](double radius) {
      HermiteBank bank(k, radius);
      if (d == 1) {
        double h = bank.value(k);
        return h * h;
      }
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) {
        double h = bank.value(j);
        acc += h * h * w[k - j];
      }
      return acc;
    };

    double lo = 0.0, hi = 2.0;
    if (region == ScanRegion::turning_annulus) {
      double half = 1e3 * std::pow(lambda, -1.0 / 6.0);
      lo = std::max(0.0, rt - half);
      // past the transition shell the diagonal decays monotonically, so
      // clipping the outer radius there cannot lose the sup
      hi = std::min(rt + half, rt + 8.0 * std::pow(rt, -1.0 / 3.0));
    }
    double mu = std::sqrt(2.0 * k + d);
    pts[i] = {lambda,
              scan_profile_max(profile, lo, hi, kPi / (mu * points_per_osc))};
  });
  return fit_power_law(pts);
}

DecayReport nonstationary_decay_check(const WindowFunction& w,
                                      double amplitude_scale,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y,
                                      std::span<const double> lambda_list,
                                      double min_gap) {
  if (x.size() != y.size() || x.size() < 1)
    throw DomainError("decay check: point dimensions disagree");
  if (!(amplitude_scale >= 0.0))
    throw DomainError("decay check: amplitude scale must be nonnegative");
  if (!(min_gap >= 0.0))
    throw DomainError("decay check: min_gap must be nonnegative");
  require_ladder(lambda_list, 1, "decay check");
  for (double l : lambda_list)
    if (!(l > 0))
      throw DomainError("decay check: eigenvalues must be positive");

  if (min_gap > 0.0) {
    auto [sc, ss] = critical_times(x, y);
    auto dist = [&](double t) {
      return std::max({w.support_lo() - t, t - w.support_hi(), 0.0});
    };
    double gap = std::min(dist(sc), dist(ss));
    if (gap < min_gap)
      throw RegionError("decay check: window support is within " +
                        std::to_string(gap) +
                        " of a critical time, required " +
                        std::to_string(min_gap));
  }

  DecayReport rep;
  rep.samples.resize(lambda_list.size());
  if (amplitude_scale == 0.0) {
    for (std::size_t i = 0; i < lambda_list.size(); ++i)
      rep.samples[i] = {lambda_list[i], 0.0};
    rep.all_below_floor = true;
    return rep;
  }
  std::vector<double> xs(x.data(), x.data() + x.size());
  std::vector<double> ys(y.data(), y.data() + y.size());
  parallel_for_checked(lambda_list.size(), [&](std::size_t i) {
    double lam = lambda_list[i];
    rep.samples[i] = {
        lam, amplitude_scale * std::abs(scaled_hermite_kernel(w, lam, xs, ys))};
  });
  std::vector<std::pair<double, double>> live;
  for (const auto& s : rep.samples)
    if (s.second > rep.floor) live.push_back(s);
  rep.all_below_floor = live.empty();
  if (live.size() >= 2) {
    rep.fit = fit_power_law(live);
    if (rep.fit.slope < 0.0)
      rep.verified_order = static_cast<int>(std::floor(-rep.fit.slope));
  }
  return rep;
}

double operator_norm_estimate(const KernelSampler& kernel,
                              const Grid& domain_e, const Grid& domain_f,
                              double p, std::uint64_t seed) {
  domain_e.validate();
  domain_f.validate();
  if (!kernel) throw DomainError("operator norm: kernel is empty");
  bool pinf = std::isinf(p);
  if (!pinf && !(p >= 1.0))
    throw DomainError("operator norm: p must lie in [1, inf]");
  std::size_t ne = domain_e.size(), nf = domain_f.size();
  if (ne * nf > (std::size_t{1} << 26))
    throw DomainError("operator norm: grids too large to materialize");

  std::vector<std::vector<double>> pe(ne), pf(nf);
  Eigen::VectorXd we(ne), wf(nf);
  for (std::size_t i = 0; i < ne; ++i) {
    pe[i] = domain_e.point(i);
    we(i) = domain_e.weight(i);
  }
  for (std::size_t j = 0; j < nf; ++j) {
    pf[j] = domain_f.point(j);
    wf(j) = domain_f.weight(j);
  }
  Eigen::MatrixXcd km(ne, nf);
  parallel_for_checked(ne, [&](std::size_t i) {
    for (std::size_t j = 0; j < nf; ++j) km(i, j) = kernel(pe[i], pf[j]);
  });

  auto lp_norm = [&](const Eigen::VectorXcd& v, const Eigen::VectorXd& wt) {
    if (pinf) return v.cwiseAbs().maxCoeff();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      acc += wt(i) * std::pow(std::abs(v(i)), p);
    return std::pow(acc, 1.0 / p);
  };
  auto apply = [&](const Eigen::VectorXcd& f) -> Eigen::VectorXcd {
    return km * f.cwiseProduct(wf.cast<std::complex<double>>());
  };

  double best = 0.0;
  auto consider = [&](const Eigen::VectorXcd& f) {
    double nrm = lp_norm(f, wf);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) return;
    best = std::max(best, lp_norm(apply(f), we) / nrm);
  };

  int d = domain_f.dim();
  double max_step = 0.0;
  for (int a = 0; a < d; ++a) max_step = std::max(max_step, domain_f.step(a));

  const int trials = 8;
  for (int t = 0; t < trials; ++t) {
    auto rng = item_rng(seed, static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> c(d);
    for (int a = 0; a < d; ++a)
      c[a] = domain_f.lo[a] + (domain_f.hi[a] - domain_f.lo[a]) * u01(rng);
    double sigma = 2.0 * max_step;
    Eigen::VectorXcd f(nf);
    for (std::size_t j = 0; j < nf; ++j) {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) r2 += (pf[j][a] - c[a]) * (pf[j][a] - c[a]);
      f(j) = std::exp(-r2 / (2.0 * sigma * sigma));
    }
    consider(f);
  }
  for (int t = 0; t < trials; ++t) {
    auto rng = item_rng(seed, 100 + static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> c(d), xi(d), sg(d);
    for (int a = 0; a < d; ++a) {
      double len = domain_f.hi[a] - domain_f.lo[a];
      c[a] = domain_f.lo[a] + len * u01(rng);
      xi[a] = (2.0 * u01(rng) - 1.0) * 0.85 * kPi / domain_f.step(a);
      sg[a] = len / 6.0;
    }
    Eigen::VectorXcd f(nf);
    for (std::size_t j = 0; j < nf; ++j) {
      double r2 = 0.0, ph = 0.0;
      for (int a = 0; a < d; ++a) {
        double dy = pf[j][a] - c[a];
        r2 += dy * dy / (2.0 * sg[a] * sg[a]);
        ph += xi[a] * pf[j][a];
      }
      f(j) = std::exp(std::complex<double>(-r2, ph));
    }
    consider(f);
  }
  if (p == 2.0) {
    auto rng = item_rng(seed, 1000);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(nf);
    for (std::size_t j = 0; j < nf; ++j)
      v(j) = std::complex<double>(gauss(rng), gauss(rng));
    for (int it = 0; it < 30; ++it) {
      Eigen::VectorXcd u = apply(v);
      Eigen::VectorXcd back =
          km.adjoint() * u.cwiseProduct(we.cast<std::complex<double>>());
      double nn = lp_norm(back, wf);
      if (!(nn > 0.0)) break;
      v = back / nn;
    }
    consider(v);
  }
  return best;
}

}  // namespace hrl
