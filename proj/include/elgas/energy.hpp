#pragma once

// Energy pieces of the trial state: the Fermi-state energy (exact, finite),
// the bosonic correlation (1/pi) sum_k int F(Q_k(s)) ds and the exchange
// correlation. The two correlation sums run over all of Z^3_* and are cut
// at a radius that is doubled until the last shell is negligible.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "elgas/lattice.hpp"
#include "elgas/parallel.hpp"
#include "elgas/potential.hpp"
#include "elgas/quadrature.hpp"
#include "elgas/quasiboson.hpp"
#include "elgas/symmetry.hpp"

namespace elgas {

/// F(x) = log(1 + x) - x. Below |x| = 0.1 the Taylor series to x^18 is used;
/// the direct form loses about 2/|x| ulps to cancellation.
inline double log1p_minus_x(double x) {
  if (std::abs(x) < 0.1) {
    double acc = 0.0;
    for (int n = 18; n >= 2; --n) acc = acc * x + ((n % 2 == 0) ? -1.0 : 1.0) / n;
    return acc * x * x;
  }
  return std::log1p(x) - x;
}

struct EnergyOptions {
  TruncationPolicy policy;
  /// Relative accuracy: the bosonic integrals range over many decades.
  QuadratureOptions quad{.abs_tol = 0.0, .rel_tol = 1e-10, .max_subdivisions = 4000};
  bool use_symmetry = true;
  unsigned threads = 1;
};

struct TruncatedSum {
  double value = 0.0;
  /// |contribution of the outermost shell summed|.
  double tail_estimate = 0.0;
  double k_max_used = 0.0;
  double quad_error = 0.0;
  std::int64_t k_modes = 0;
  bool converged = true;
  bool quad_converged = true;
};

struct FermiStateEnergy {
  double kinetic = 0.0;
  double interaction = 0.0;
  double total() const { return kinetic + interaction; }
};

/// E_FS = sum_{p in B_F} |p|^2 + (1 / (2 (2 pi)^3)) sum_k V_k (|L_k| - N).
/// The k-sum stops at |k|^2 = 4 r2max, beyond which |L_k| = N.
inline FermiStateEnergy e_fs(const LatticeConfig& cfg, const Potential& pot) {
  FermiStateEnergy out;
  std::int64_t kinetic = 0;
  for (const auto& p : cfg.ball) kinetic += p.norm2();
  out.kinetic = static_cast<double>(kinetic);
  if (pot.is_zero()) return out;
  CompensatedSum acc;
  for (const auto& k : lattice_shell(-1.0, std::sqrt(static_cast<double>(cfg.full_lune_norm2())))) {
    const double vk = pot(k);
    if (vk == 0.0) continue;
    const auto deficit = static_cast<std::int64_t>(lune(k, cfg).size()) - cfg.particle_count;
    acc += vk * static_cast<double>(deficit);
  }
  out.interaction = acc.value() / (2.0 * kTwoPiCubed);
  return out;
}

/// (1/pi) int_0^inf F(Q_k(s)) ds for one k.
inline QuadratureResult e_corr_bos_term(const IVec3& k, const LatticeConfig& cfg, const Potential& pot,
                                        const QuadratureOptions& opts = EnergyOptions{}.quad) {
  if (pot(k) == 0.0) return {0.0, 0.0, 1, true};
  const Mode mode = build_mode(k, cfg, pot);
  if (mode.is_trivial()) return {0.0, 0.0, 1, true};
  const double seeds[] = {mode.lambdas.minCoeff(), mode.lambdas.maxCoeff()};
  auto r = integrate_semi_infinite([&](double s) { return log1p_minus_x(q_of_s(mode, s)); }, opts, seeds);
  r.value /= std::numbers::pi;
  r.abs_error_estimate /= std::numbers::pi;
  return r;
}

/// (k_F^{-2} / (4 (2 pi)^6)) sum_{p,q in L_k} V_k V_{p+q-k} / (lambda_{k,p} + lambda_{k,q}) for one k.
inline double e_corr_ex_term(const IVec3& k, const LatticeConfig& cfg, const Potential& pot) {
  const double vk = pot(k);
  if (vk == 0.0) return 0.0;
  const LuneBasis basis = lune(k, cfg);
  const auto lambdas = basis.lambdas();
  double acc = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double w = pot(basis.points[i] + basis.points[j] - k);
      if (w != 0.0) acc += w / (lambdas[i] + lambdas[j]);
    }
  return vk * acc / (4.0 * cfg.k_fermi * cfg.k_fermi * kTwoPiCubed * kTwoPiCubed);
}

namespace detail {

struct TermValue {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

inline std::vector<OrbitRep> energy_shell(double r_lo, double r_hi, const Potential& pot, bool use_symmetry) {
  if (use_symmetry && pot.is_cubic_invariant()) {
    const std::int64_t lo2 = r_lo < 0.0 ? -1 : floor_nonneg(r_lo * r_lo);
    return cubic_orbits(lo2, floor_nonneg(r_hi * r_hi));
  }
  std::vector<OrbitRep> out;
  for (const auto& k : lattice_shell(r_lo, r_hi)) out.push_back({k, 1});
  return out;
}

/// Doubling-cutoff sum of a per-k term over Z^3_*.
template <class Term>
TruncatedSum truncated_k_sum(const LatticeConfig& cfg, const Potential& pot, const EnergyOptions& opts, Term&& term) {
  TruncatedSum out;
  if (pot.is_zero()) return out;
  const WorkerPool pool(opts.threads);
  auto shell = [&](double lo, double hi) {
    const auto reps = energy_shell(lo, hi, pot, opts.use_symmetry);
    const auto vals = pool.map(reps.size(), [&](std::size_t i) { return term(reps[i].k); });
    CompensatedSum acc;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto m = static_cast<double>(reps[i].multiplicity);
      acc += m * vals[i].value;
      out.quad_error += m * vals[i].error;
      out.quad_converged = out.quad_converged && vals[i].converged;
      out.k_modes += reps[i].multiplicity;
    }
    return acc.value();
  };
  const auto& policy = opts.policy;
  double radius = policy.initial_radius(cfg);
  double total = shell(-1.0, 0.5 * radius);
  double inc = shell(0.5 * radius, radius);
  total += inc;
  auto small = [&] { return std::abs(inc) <= policy.tail_rel_tol * std::abs(total); };
  bool ok = small();
  if (policy.adaptive) {
    for (int d = 0; d < policy.max_doublings && !ok; ++d) {
      inc = shell(radius, 2.0 * radius);
      radius *= 2.0;
      total += inc;
      ok = small();
    }
    out.converged = ok;
  }
  out.value = total;
  out.tail_estimate = std::abs(inc);
  out.k_max_used = radius;
  return out;
}

}  // namespace detail

/// E_corr,bos = (1/pi) sum_k int_0^inf F(Q_k(s)) ds.
inline TruncatedSum e_corr_bos(const LatticeConfig& cfg, const Potential& pot, const EnergyOptions& opts = {}) {
  return detail::truncated_k_sum(cfg, pot, opts, [&](const IVec3& k) {
    const auto r = e_corr_bos_term(k, cfg, pot, opts.quad);
    return detail::TermValue{r.value, r.abs_error_estimate, r.converged};
  });
}

/// E_corr,ex = (k_F^{-2} / (4 (2 pi)^6)) sum_k sum_{p,q in L_k} V_k V_{p+q-k} / (lambda_{k,p} + lambda_{k,q}).
inline TruncatedSum e_corr_ex(const LatticeConfig& cfg, const Potential& pot, const EnergyOptions& opts = {}) {
  return detail::truncated_k_sum(cfg, pot, opts,
                                 [&](const IVec3& k) { return detail::TermValue{e_corr_ex_term(k, cfg, pot), 0.0, true}; });
}

struct EnergyReport {
  double k_fermi = 0.0;
  std::int64_t particle_count = 0;
  FermiStateEnergy fs;
  TruncatedSum corr_bos;
  TruncatedSum corr_ex;
};

inline EnergyReport energy_report(const LatticeConfig& cfg, const Potential& pot, const EnergyOptions& opts = {}) {
  return {cfg.k_fermi, cfg.particle_count, e_fs(cfg, pot), e_corr_bos(cfg, pot, opts), e_corr_ex(cfg, pot, opts)};
}

}  // namespace elgas
