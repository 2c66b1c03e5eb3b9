#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals and on
// [0, inf) through s = t / (1 - t).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace elgas {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int evaluations = 0;
  /// False when the subdivision budget ran out before the tolerance was met.
  bool converged = true;
};

struct QuadratureOptions {
  double abs_tol = 1e-9;
  /// Accept when error <= max(abs_tol, rel_tol * |value|).
  double rel_tol = 0.0;
  int max_subdivisions = 4000;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (non-negative half, descending); odd indices are Gauss nodes.
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kGK15Weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kG7Weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kGK15Weights[7];
  double gauss = fc * kG7Weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kGK15Nodes[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kGK15Weights[j] * s;
    if (j % 2 == 1) gauss += kG7Weights[j / 2] * s;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Integrates f over [a, b], splitting first at the given interior breakpoints.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, const QuadratureOptions& opts = {},
                                    std::span<const double> breakpoints = {}) {
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel> panels;
  QuadratureResult result;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto p = detail::gauss_kronrod_15(f, cuts[i], cuts[i + 1]);
    result.evaluations += 15;
    result.value += p.value;
    result.abs_error_estimate += p.error;
    panels.push(p);
  }

  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(result.value)); };
  int subdivisions = 0;
  while (result.abs_error_estimate > tolerance()) {
    if (subdivisions >= opts.max_subdivisions) {
      result.converged = false;
      break;
    }
    const auto worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted at double resolution
      result.converged = false;
      break;
    }
    panels.pop();
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    ++subdivisions;
    result.value += left.value + right.value - worst.value;
    result.abs_error_estimate += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to drop the drift of the running updates.
  double value = 0.0, error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = value;
  result.abs_error_estimate = error;
  return result;
}

/// Integrates f over [0, inf). `seeds` are points in s that start their own panels.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, const QuadratureOptions& opts = {},
                                         std::span<const double> seeds = {}) {
  auto mapped = [&f](double t) {
    const double one_minus = 1.0 - t;
    const double s = t / one_minus;
    const double value = f(s);
    return value == 0.0 ? 0.0 : value / (one_minus * one_minus);
  };
  std::vector<double> cuts;
  cuts.reserve(seeds.size());
  for (double s : seeds)
    if (s > 0.0 && std::isfinite(s)) cuts.push_back(s / (1.0 + s));
  return integrate_interval(mapped, 0.0, 1.0, opts, cuts);
}

}  // namespace elgas
