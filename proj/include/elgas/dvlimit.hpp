#pragma once

// Continuum (Daniel-Vosko) counterparts of n_b and n_ex for |xi| > k_F:
// the Lindhard-type response Q^DV(|k|, s), the bosonic double integral by
// nested quadrature, and the second-order exchange integral by Monte Carlo.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "elgas/momentum.hpp"
#include "elgas/parallel.hpp"
#include "elgas/quadrature.hpp"

namespace elgas {

/// 2 pi [1 + (k_F^2 - |k|^2/4 + s^2)/(2|k|k_F) ln(((k_F+|k|/2)^2+s^2)/((k_F-|k|/2)^2+s^2))
///        - (s/k_F) atan((k_F+|k|/2)/s) - (s/k_F) atan((k_F-|k|/2)/s)]
inline double q_dv(double k_norm, double s, double k_fermi) {
  if (!(k_norm > 0.0) || !(s >= 0.0) || !(k_fermi > 0.0))
    throw std::invalid_argument("q_dv: requires |k| > 0, s >= 0, k_F > 0");
  const double h = 0.5 * k_norm;
  const double plus = k_fermi + h;
  const double minus = k_fermi - h;
  const double s2 = s * s;
  const double lo = minus * minus + s2;
  const double coeff = k_fermi * k_fermi - h * h + s2;
  double log_term = 0.0;
  if (lo > 0.0)
    log_term = coeff / (2.0 * k_norm * k_fermi) * std::log1p(2.0 * k_norm * k_fermi / lo);
  // lo == 0 only at s = 0, |k| = 2k_F, where coeff vanishes as well.
  double atan_term = 0.0;
  if (s > 0.0) atan_term = (s / k_fermi) * (std::atan(plus / s) + std::atan(minus / s));
  return 2.0 * std::numbers::pi * (1.0 + log_term - atan_term);
}

struct DVParams {
  double k_fermi = 1.0;
  double alpha = 0.0;
  double xi_norm = 2.0;

  void validate() const {
    if (!(k_fermi > 0.0) || !std::isfinite(k_fermi)) throw std::invalid_argument("DVParams: k_F must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("DVParams: alpha must be >= 0");
    if (!(xi_norm > k_fermi) || !std::isfinite(xi_norm))
      throw std::invalid_argument("DVParams: |xi| must exceed k_F (got " + std::to_string(xi_norm) + ")");
  }
};

/// alpha such that the denominators |k|^2 (1 + Q_k(|k|s)) and |k|^2 + alpha k_F^2 Q^DV(s)
/// agree for V_k = g/|k|^2 and |k| > 2k_F, with the ball sum read as an integral.
inline double alpha_from_coulomb(double g, double k_fermi) {
  return g / (16.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi * k_fermi * k_fermi);
}

/// (k_F alpha/|xi|) int_{|xi|-k_F}^{|xi|+k_F} d|k| |k| int_0^inf [a/(a^2+s^2) - b/(b^2+s^2)]
///   / (|k|^2 + alpha k_F^2 Q^DV(|k|, s)) ds,   a = |xi| - |k|/2,  b = (|xi|^2 - k_F^2)/(2|k|).
inline QuadratureResult n_b_dv(const DVParams& params, const QuadratureOptions& opts = {}) {
  params.validate();
  if (params.alpha == 0.0) return {0.0, 0.0, 1, true};
  const double kf = params.k_fermi;
  const double xi = params.xi_norm;
  const double prefactor = kf * params.alpha / xi;

  QuadratureOptions inner_opts = opts;
  inner_opts.abs_tol = opts.abs_tol * 1e-2;
  double inner_error = 0.0;
  bool inner_ok = true;

  auto inner = [&](double k) {
    const double a = xi - 0.5 * k;
    const double b = (xi * xi - kf * kf) / (2.0 * k);
    auto f = [&](double s) {
      const double s2 = s * s;
      const double ta = a == 0.0 ? 0.0 : a / (a * a + s2);
      const double tb = b == 0.0 ? 0.0 : b / (b * b + s2);
      return (ta - tb) / (k * k + params.alpha * kf * kf * q_dv(k, s, kf));
    };
    const double seeds[] = {std::abs(a), std::abs(b)};
    const auto r = integrate_semi_infinite(f, inner_opts, seeds);
    inner_error = std::max(inner_error, r.abs_error_estimate);
    inner_ok = inner_ok && r.converged;
    return k * r.value;
  };
  const double lo = xi - kf, hi = xi + kf;
  auto r = integrate_interval(inner, lo, hi, opts);
  r.value *= prefactor;
  r.abs_error_estimate = prefactor * (r.abs_error_estimate + (hi - lo) * hi * inner_error);
  r.converged = r.converged && inner_ok;
  return r;
}

struct MonteCarloResult {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

struct MonteCarloOptions {
  std::int64_t samples = 200000;
  std::uint64_t seed = 1;
  /// Fixed shard count; results do not depend on the thread count.
  int shards = 64;
  unsigned threads = 1;
};

namespace detail {

inline double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

struct ShardMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t n = 0;
};

}  // namespace detail

/// -(k_F^2 alpha^2 / 4) int_{|k - xi| <= k_F} dk/|k|^2 int_{|p| < k_F, |k - p| > k_F} dp / ([k.(p - xi)]^2 |p - xi|^2).
///
/// k is drawn with density proportional to 1/|k|^2 on B(xi, k_F): |k| uniform on
/// [|xi| - k_F, |xi| + k_F], cos(angle to xi) uniform on the cap it cuts. The
/// azimuth of k about xi is fixed, which leaves a 5-dimensional integral.
inline MonteCarloResult n_ex_dv(const DVParams& params, const MonteCarloOptions& mc = {}) {
  params.validate();
  if (mc.samples < 10000) throw std::invalid_argument("n_ex_dv: at least 1e4 samples required");
  if (mc.shards < 1) throw std::invalid_argument("n_ex_dv: shards must be positive");
  MonteCarloResult out;
  out.samples = mc.samples;
  if (params.alpha == 0.0) return out;

  const double kf = params.k_fermi;
  const double d = params.xi_norm;
  const double pi = std::numbers::pi;
  const double ball_volume = 4.0 / 3.0 * pi * kf * kf * kf;

  auto shard = [&](std::size_t sid) {
    const auto per = mc.samples / mc.shards;
    const auto count = per + (static_cast<std::int64_t>(sid) < mc.samples % mc.shards ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(mc.seed), static_cast<std::uint32_t>(mc.seed >> 32),
                      static_cast<std::uint32_t>(sid)};
    std::mt19937_64 gen(seq);
    detail::ShardMoments m;
    for (std::int64_t i = 0; i < count; ++i) {
      const double r = (d - kf) + 2.0 * kf * detail::unit_uniform(gen);
      const double c_min = std::max(-1.0, (d * d + r * r - kf * kf) / (2.0 * d * r));
      const double cos_t = c_min + (1.0 - c_min) * detail::unit_uniform(gen);
      const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
      const double kx = r * sin_t, kz = r * cos_t;
      const double k_weight = 2.0 * kf * (1.0 - c_min) * 2.0 * pi;

      // p uniform in the ball (rejection from the cube keeps the stream simple).
      double px, py, pz;
      do {
        px = kf * (2.0 * detail::unit_uniform(gen) - 1.0);
        py = kf * (2.0 * detail::unit_uniform(gen) - 1.0);
        pz = kf * (2.0 * detail::unit_uniform(gen) - 1.0);
      } while (px * px + py * py + pz * pz >= kf * kf);

      double f = 0.0;
      const double dx = kx - px, dy = -py, dz = kz - pz;
      if (dx * dx + dy * dy + dz * dz > kf * kf) {
        const double qx = px, qy = py, qz = pz - d;  // p - xi
        const double kq = kx * qx + kz * qz;
        f = k_weight * ball_volume / (kq * kq * (qx * qx + qy * qy + qz * qz));
      }
      m.sum += f;
      m.sum_sq += f * f;
      ++m.n;
    }
    return m;
  };

  const WorkerPool pool(mc.threads);
  const auto moments = pool.map(static_cast<std::size_t>(mc.shards), shard);
  double sum = 0.0, sum_sq = 0.0;
  std::int64_t n = 0;
  for (const auto& m : moments) {
    sum += m.sum;
    sum_sq += m.sum_sq;
    n += m.n;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  const double scale = -0.25 * kf * kf * params.alpha * params.alpha;
  out.value = scale * mean;
  out.std_error = std::abs(scale) * std::sqrt(var / static_cast<double>(n));
  return out;
}

struct CompareRow {
  IVec3 xi;
  double n_b_disc = 0.0;
  double n_ex_disc = 0.0;
  double n_b_dv = 0.0;
  double n_b_dv_error = 0.0;
  double n_ex_dv = 0.0;
  double n_ex_dv_stderr = 0.0;
  double ratio_b = 0.0;
  double ratio_ex = 0.0;
};

struct CompareOptions {
  /// Unset: alpha_from_coulomb(g, k_F).
  std::optional<double> alpha;
  MomentumOptions momentum;
  QuadratureOptions quad{.abs_tol = 1e-10, .rel_tol = 1e-8, .max_subdivisions = 4000};
  MonteCarloOptions mc;
};

/// Discrete n_b, n_ex against their continuum counterparts, one row per xi (all outside B_F).
inline std::vector<CompareRow> compare_table(const LatticeConfig& cfg, const Potential& pot,
                                             const std::vector<IVec3>& xis, const CompareOptions& opts = {}) {
  const auto* coulomb = std::get_if<CoulombKind>(&pot.kind());
  if (!coulomb) throw std::invalid_argument("compare_table: requires a coulomb potential");
  const double alpha = opts.alpha.value_or(alpha_from_coulomb(coulomb->g, cfg.k_fermi));
  std::vector<CompareRow> rows;
  for (const auto& xi : xis) {
    if (cfg.in_ball(xi)) throw std::invalid_argument("compare_table: xi = " + to_string(xi) + " lies in B_F");
    CompareRow row;
    row.xi = xi;
    const auto disc = n_point(xi, cfg, pot, opts.momentum);
    row.n_b_disc = disc.n_b;
    row.n_ex_disc = disc.n_ex;
    const DVParams params{cfg.k_fermi, alpha, std::sqrt(static_cast<double>(xi.norm2()))};
    const auto b = n_b_dv(params, opts.quad);
    row.n_b_dv = b.value;
    row.n_b_dv_error = b.abs_error_estimate;
    const auto ex = n_ex_dv(params, opts.mc);
    row.n_ex_dv = ex.value;
    row.n_ex_dv_stderr = ex.std_error;
    row.ratio_b = row.n_b_disc / row.n_b_dv;
    row.ratio_ex = row.n_ex_disc / row.n_ex_dv;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace elgas
