#pragma once

// Integer-lattice geometry of the Fermi ball: lunes, excitation gaps, and the
// k-supports that enter the per-momentum sums.
//
// All squared norms are exact integers. Gaps lambda_{k,p} are half-integers and
// are stored as twice their value so that membership and ordering never touch
// floating point.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "elgas/vec3.hpp"

namespace elgas {

namespace detail {

/// Legendre's three-square theorem: n >= 0 is a sum of three squares unless
/// n = 4^a (8b + 7).
constexpr bool is_sum_of_three_squares(std::int64_t n) {
  if (n < 0) return false;
  if (n == 0) return true;
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

inline std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Largest integer m with m <= x (for x >= 0), robust against rounding of x.
inline std::int64_t floor_nonneg(double x) {
  auto m = static_cast<std::int64_t>(std::floor(x));
  while (static_cast<double>(m + 1) <= x) ++m;
  while (m > 0 && static_cast<double>(m) > x) --m;
  return m;
}

}  // namespace detail

/// Closed-shell Fermi ball B_F = {p in Z^3 : |p| <= k_F}.
struct LatticeConfig {
  double k_fermi = 0.0;
  /// Largest integer n with n <= k_F^2; p is occupied iff |p|^2 <= r2max.
  std::int64_t r2max = 0;
  std::int64_t particle_count = 0;
  /// 2*kappa = inf_{p outside}|p|^2 + sup_{q inside}|q|^2.
  std::int64_t kappa_twice = 0;
  /// Occupied momenta in lexicographic order.
  std::vector<IVec3> ball;

  double kappa() const { return 0.5 * static_cast<double>(kappa_twice); }
  bool in_ball(const IVec3& p) const { return p.norm2() <= r2max; }
  /// Every lune is the full shifted ball once |k|^2 exceeds this bound.
  std::int64_t full_lune_norm2() const { return 4 * r2max; }
};

inline LatticeConfig fermi_ball(double k_fermi) {
  if (!(k_fermi > 0.0) || !std::isfinite(k_fermi))
    throw std::invalid_argument("fermi_ball: k_F must be a positive finite number");

  LatticeConfig cfg;
  cfg.k_fermi = k_fermi;
  cfg.r2max = detail::floor_nonneg(k_fermi * k_fermi);

  const std::int64_t r = detail::isqrt(cfg.r2max);
  std::int64_t sup_inside = 0;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      for (std::int64_t z = -r; z <= r; ++z) {
        const IVec3 p{x, y, z};
        if (p.norm2() <= cfg.r2max) {
          cfg.ball.push_back(p);
          sup_inside = std::max(sup_inside, p.norm2());
        }
      }
  cfg.particle_count = static_cast<std::int64_t>(cfg.ball.size());

  std::int64_t inf_outside = cfg.r2max + 1;
  while (!detail::is_sum_of_three_squares(inf_outside)) ++inf_outside;
  cfg.kappa_twice = inf_outside + sup_inside;
  return cfg;
}

/// 2*lambda_{k,p} = |p|^2 - |p-k|^2.
constexpr std::int64_t twice_lambda_of(const IVec3& k, const IVec3& p) {
  return p.norm2() - (p - k).norm2();
}

/// lambda_{k,p} = (|p|^2 - |p-k|^2) / 2.
constexpr double lambda_of(const IVec3& k, const IVec3& p) {
  return 0.5 * static_cast<double>(twice_lambda_of(k, p));
}

/// p in L_k  <=>  |p - k| <= k_F < |p|.
inline bool in_lune(const IVec3& k, const IVec3& p, const LatticeConfig& cfg) {
  return (p - k).norm2() <= cfg.r2max && p.norm2() > cfg.r2max;
}

/// The lune L_k with its cached gaps; the index space of every per-mode matrix.
struct LuneBasis {
  IVec3 k;
  std::vector<IVec3> points;
  std::vector<std::int64_t> twice_lambdas;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  double lambda(std::size_t i) const { return 0.5 * static_cast<double>(twice_lambdas[i]); }

  std::vector<double> lambdas() const {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = lambda(i);
    return out;
  }

  std::optional<std::size_t> index_of(const IVec3& p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p);
    if (it == points.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
  }
};

inline LuneBasis lune(const IVec3& k, const LatticeConfig& cfg) {
  if (k.is_zero()) throw std::invalid_argument("lune: k must be nonzero");
  LuneBasis out;
  out.k = k;
  out.points.reserve(cfg.ball.size());
  out.twice_lambdas.reserve(cfg.ball.size());
  // Translating the sorted ball by k preserves lexicographic order.
  for (const auto& q : cfg.ball) {
    const IVec3 p = q + k;
    if (p.norm2() > cfg.r2max) {
      out.points.push_back(p);
      out.twice_lambdas.push_back(twice_lambda_of(k, p));
    }
  }
  assert(std::is_sorted(out.points.begin(), out.points.end()));
  return out;
}

/// How coincident elements of D_{k,xi} = {xi, -xi, k+xi, k-xi} are counted.
enum class ZetaCounting { multiset, set };

/// The elements of D_{k,xi} that lie in L_k, in the order xi, -xi, k+xi, k-xi.
inline std::vector<IVec3> d_intersection(const IVec3& k, const IVec3& xi, const LatticeConfig& cfg,
                                         ZetaCounting counting = ZetaCounting::multiset) {
  if (k.is_zero()) throw std::invalid_argument("d_intersection: k must be nonzero");
  std::vector<IVec3> out;
  for (const IVec3& zeta : {xi, -xi, k + xi, k - xi}) {
    if (!in_lune(k, zeta, cfg)) continue;
    if (counting == ZetaCounting::set && std::find(out.begin(), out.end(), zeta) != out.end()) continue;
    out.push_back(zeta);
  }
  return out;
}

/// m(p)^{-1} = ||p|^2 - kappa| and m(p).
struct KappaWeight {
  double inverse_weight;
  double weight;
};

inline KappaWeight kappa_and_weight(const IVec3& p, const LatticeConfig& cfg) {
  const std::int64_t twice = 2 * p.norm2() - cfg.kappa_twice;
  assert(twice != 0);
  const double inv = 0.5 * static_cast<double>(twice < 0 ? -twice : twice);
  return {inv, 1.0 / inv};
}

/// Cutoff control for k-sums that are not exactly finite.
struct TruncationPolicy {
  /// Initial cutoff radius |k| <= k_max; 0 selects 2 k_F + 2.
  double k_max = 0.0;
  /// Doubling stops once |last increment| <= tail_rel_tol * |total|.
  double tail_rel_tol = 1e-6;
  /// When false the initial cutoff is used as is.
  bool adaptive = true;
  int max_doublings = 6;

  double initial_radius(const LatticeConfig& cfg) const {
    return k_max > 0.0 ? k_max : 2.0 * cfg.k_fermi + 2.0;
  }
};

/// Nonzero k with r_lo < |k| <= r_hi, lexicographic. r_lo < 0 includes the innermost shell.
inline std::vector<IVec3> lattice_shell(double r_lo, double r_hi) {
  const std::int64_t hi2 = detail::floor_nonneg(r_hi * r_hi);
  const std::int64_t lo2 = r_lo < 0.0 ? -1 : detail::floor_nonneg(r_lo * r_lo);
  const std::int64_t r = detail::isqrt(hi2);
  std::vector<IVec3> out;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      for (std::int64_t z = -r; z <= r; ++z) {
        const IVec3 k{x, y, z};
        const auto n2 = k.norm2();
        if (n2 == 0 || n2 > hi2 || n2 <= lo2) continue;
        out.push_back(k);
      }
  return out;
}

/// Which k contribute to the sums at momentum xi.
///
/// For xi outside the ball only zeta = +-xi can lie in L_k, which forces
/// k in (xi - B_F) or (-xi - B_F): the support is finite and exact. For xi in
/// the ball only zeta = k +- xi occur and the support is all of Z^3 minus a
/// bounded set, so it is cut at a radius.
struct KSupport {
  std::vector<IVec3> finite_part;
  struct Truncation {
    double k_max;
    TruncationPolicy policy;
  };
  std::optional<Truncation> truncated_part;

  bool is_finite() const { return !truncated_part.has_value(); }
};

/// True when k can contribute to a truncated-support sum at xi in B_F.
inline bool contributes_inside(const IVec3& k, const IVec3& xi, const LatticeConfig& cfg) {
  return !k.is_zero() && ((k + xi).norm2() > cfg.r2max || (k - xi).norm2() > cfg.r2max);
}

inline KSupport k_support(const IVec3& xi, const LatticeConfig& cfg, const TruncationPolicy& policy) {
  KSupport out;
  if (!cfg.in_ball(xi)) {
    for (const auto& q : cfg.ball) {
      for (const IVec3& k : {xi - q, -xi - q})
        if (!k.is_zero()) out.finite_part.push_back(k);
    }
    std::sort(out.finite_part.begin(), out.finite_part.end());
    out.finite_part.erase(std::unique(out.finite_part.begin(), out.finite_part.end()), out.finite_part.end());
    return out;
  }
  out.truncated_part = KSupport::Truncation{policy.initial_radius(cfg), policy};
  return out;
}

/// The k of a truncated support inside the shell r_lo < |k| <= r_hi.
inline std::vector<IVec3> truncated_shell(const IVec3& xi, const LatticeConfig& cfg, double r_lo, double r_hi) {
  auto shell = lattice_shell(r_lo, r_hi);
  std::erase_if(shell, [&](const IVec3& k) { return !contributes_inside(k, xi, cfg); });
  return shell;
}

}  // namespace elgas
