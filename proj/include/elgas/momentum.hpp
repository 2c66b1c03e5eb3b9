#pragma once

// Momentum distribution of the trial state, n(xi) = n_b(xi) + n_ex(xi), with
// the error term dropped. n_b is available through the spectral diagonal of
// cosh(-2K_k) - 1 and through the resolvent integral; both share the same
// k-support and orbit folding so that they can be compared term by term.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elgas/lattice.hpp"
#include "elgas/parallel.hpp"
#include "elgas/potential.hpp"
#include "elgas/quadrature.hpp"
#include "elgas/quasiboson.hpp"
#include "elgas/symmetry.hpp"

namespace elgas {

enum class Route { integral, spectral, both };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::integral: return "integral";
    case Route::spectral: return "spectral";
    case Route::both: return "both";
  }
  return "?";
}

inline Route parse_route(std::string_view s) {
  if (s == "integral") return Route::integral;
  if (s == "spectral") return Route::spectral;
  if (s == "both") return Route::both;
  throw std::invalid_argument("unknown route '" + std::string(s) + "' (expected integral, spectral or both)");
}

struct MomentumOptions {
  TruncationPolicy policy;
  QuadratureOptions quad;
  /// Unset: spectral outside the ball, integral inside.
  std::optional<Route> route;
  ZetaCounting counting = ZetaCounting::multiset;
  /// Fold k over the symmetry group of the pair {xi, -xi} (cubic-invariant potentials only).
  bool use_symmetry = true;
  unsigned threads = 1;
};

inline Route default_route(const IVec3& xi, const LatticeConfig& cfg) {
  return cfg.in_ball(xi) ? Route::integral : Route::spectral;
}

struct MomentumBreakdown {
  IVec3 xi;
  /// n_b from the route in `route` (the spectral value when route == both).
  double n_b = 0.0;
  std::optional<double> n_b_integral;
  std::optional<double> n_b_spectral;
  double n_ex = 0.0;
  Route route = Route::spectral;
  double quad_error = 0.0;
  /// Zero exactly for finite supports; otherwise |last shell increment| of n_b plus that of n_ex.
  double tail_estimate = 0.0;
  double tail_n_b = 0.0;
  double tail_n_ex = 0.0;
  std::int64_t k_modes_used = 0;
  /// Largest cutoff radius summed; 0 for finite supports.
  double k_max_used = 0.0;
  bool converged = true;

  double n_total() const { return n_b + n_ex; }
  std::optional<double> discrepancy() const {
    if (n_b_integral && n_b_spectral) return *n_b_spectral - *n_b_integral;
    return std::nullopt;
  }
};

namespace detail {

struct Request {
  bool spectral = false;
  bool integral = false;
  bool exchange = false;
};

struct KTerm {
  double nb_spectral = 0.0;
  double nb_integral = 0.0;
  double nb_integral_error = 0.0;
  double n_ex = 0.0;
  bool hit = false;
  bool quad_converged = true;
};

/// -k_F^{-2} / (8 (2 pi)^6).
inline double exchange_prefactor(const LatticeConfig& cfg) {
  return -1.0 / (cfg.k_fermi * cfg.k_fermi * 8.0 * kTwoPiCubed * kTwoPiCubed);
}

inline KTerm k_term(const IVec3& k, const IVec3& xi, const LatticeConfig& cfg, const Potential& pot,
                    const Request& req, const MomentumOptions& opts) {
  KTerm out;
  const auto zetas = d_intersection(k, xi, cfg, opts.counting);
  if (zetas.empty()) return out;
  out.hit = true;
  const double vk = pot(k);
  if (vk == 0.0) return out;

  const Mode mode = build_mode(k, cfg, pot);
  std::vector<std::size_t> idx;
  idx.reserve(zetas.size());
  for (const auto& z : zetas) idx.push_back(*mode.lune.index_of(z));

  if (req.spectral) {
    const Eigen::VectorXd diag = cosh_minus_one_diag(mode);
    for (auto i : idx) out.nb_spectral += 0.5 * diag[static_cast<Eigen::Index>(i)];
  }
  if (req.integral) {
    for (auto i : idx) {
      const auto r = cosh_minus_one_diag_integral(mode, i, opts.quad);
      out.nb_integral += 0.5 * r.value;
      out.nb_integral_error += 0.5 * r.abs_error_estimate;
      out.quad_converged = out.quad_converged && r.converged;
    }
  }
  if (req.exchange) {
    double acc = 0.0;
    for (std::size_t zi = 0; zi < zetas.size(); ++zi) {
      const double lz = mode.lambdas[static_cast<Eigen::Index>(idx[zi])];
      for (std::size_t j = 0; j < mode.dim(); ++j) {
        const double w = pot(mode.lune.points[j] + zetas[zi] - k);
        if (w == 0.0) continue;
        const double d = mode.lambdas[static_cast<Eigen::Index>(j)] + lz;
        acc += w / (d * d);
      }
    }
    out.n_ex = exchange_prefactor(cfg) * vk * acc;
  }
  return out;
}

struct Totals {
  CompensatedSum nb_spectral, nb_integral, n_ex;
  double quad_error = 0.0;
  std::int64_t modes = 0;
  bool quad_converged = true;
};

struct ShellSums {
  double nb_spectral = 0.0, nb_integral = 0.0, n_ex = 0.0, quad_error = 0.0;
  std::int64_t modes = 0;
  bool quad_converged = true;
};

inline std::vector<OrbitRep> fold_for(const std::vector<IVec3>& ks, const IVec3& xi, const Potential& pot,
                                      const MomentumOptions& opts) {
  if (opts.use_symmetry && pot.is_cubic_invariant()) return fold_orbits(ks, pair_stabilizer(xi));
  std::vector<OrbitRep> out;
  out.reserve(ks.size());
  for (const auto& k : ks) out.push_back({k, 1});
  return out;
}

/// Sum of the k-terms over `reps`, reduced in the order of `reps`.
inline ShellSums sum_terms(const std::vector<OrbitRep>& reps, const IVec3& xi, const LatticeConfig& cfg,
                           const Potential& pot, const Request& req, const MomentumOptions& opts) {
  const WorkerPool pool(opts.threads);
  const auto terms = pool.map(reps.size(), [&](std::size_t i) { return k_term(reps[i].k, xi, cfg, pot, req, opts); });
  CompensatedSum s, in, ex;
  ShellSums out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto m = static_cast<double>(reps[i].multiplicity);
    const auto& t = terms[i];
    s += m * t.nb_spectral;
    in += m * t.nb_integral;
    ex += m * t.n_ex;
    out.quad_error += m * t.nb_integral_error;
    if (t.hit) out.modes += reps[i].multiplicity;
    out.quad_converged = out.quad_converged && t.quad_converged;
  }
  out.nb_spectral = s.value();
  out.nb_integral = in.value();
  out.n_ex = ex.value();
  return out;
}

inline bool small_increment(double inc, double total, double rel_tol) {
  return std::abs(inc) <= rel_tol * std::abs(total);
}

}  // namespace detail

/// Computes the requested pieces of n(xi) over the k-support of xi.
inline MomentumBreakdown momentum_parts(const IVec3& xi, const LatticeConfig& cfg, const Potential& pot,
                                        const detail::Request& req, const MomentumOptions& opts) {
  MomentumBreakdown out;
  out.xi = xi;
  const auto support = k_support(xi, cfg, opts.policy);

  auto finish = [&](const detail::ShellSums& total) {
    if (req.spectral) out.n_b_spectral = total.nb_spectral;
    if (req.integral) out.n_b_integral = total.nb_integral;
    out.n_ex = total.n_ex;
    out.quad_error = total.quad_error;
    out.k_modes_used = total.modes;
    out.converged = out.converged && total.quad_converged;
  };

  if (support.is_finite()) {
    const auto reps = detail::fold_for(support.finite_part, xi, pot, opts);
    finish(detail::sum_terms(reps, xi, cfg, pot, req, opts));
    return out;
  }

  const auto& trunc = *support.truncated_part;
  const auto& policy = trunc.policy;
  double radius = trunc.k_max;
  auto shell_sum = [&](double lo, double hi) {
    const auto reps = detail::fold_for(truncated_shell(xi, cfg, lo, hi), xi, pot, opts);
    return detail::sum_terms(reps, xi, cfg, pot, req, opts);
  };

  // The innermost ball is split at radius/2 so that even a fixed cutoff has a
  // last-shell increment to report.
  detail::ShellSums total = shell_sum(-1.0, 0.5 * radius);
  detail::ShellSums inc = shell_sum(0.5 * radius, radius);
  auto accumulate = [&] {
    total.nb_spectral += inc.nb_spectral;
    total.nb_integral += inc.nb_integral;
    total.n_ex += inc.n_ex;
    total.quad_error += inc.quad_error;
    total.modes += inc.modes;
    total.quad_converged = total.quad_converged && inc.quad_converged;
  };
  accumulate();
  auto nb_inc = [&] { return req.spectral ? inc.nb_spectral : inc.nb_integral; };
  auto nb_tot = [&] { return req.spectral ? total.nb_spectral : total.nb_integral; };
  auto converged = [&] {
    return detail::small_increment(nb_inc(), nb_tot(), policy.tail_rel_tol) &&
           detail::small_increment(inc.n_ex, total.n_ex, policy.tail_rel_tol);
  };

  bool ok = converged();
  if (policy.adaptive) {
    for (int d = 0; d < policy.max_doublings && !ok; ++d) {
      inc = shell_sum(radius, 2.0 * radius);
      radius *= 2.0;
      accumulate();
      ok = converged();
    }
    out.converged = ok;
  }
  out.tail_n_b = std::abs(nb_inc());
  out.tail_n_ex = std::abs(inc.n_ex);
  if (req.spectral && req.integral)
    out.tail_n_b = std::max(std::abs(inc.nb_spectral), std::abs(inc.nb_integral));
  out.tail_estimate = out.tail_n_b + out.tail_n_ex;
  out.k_max_used = radius;
  finish(total);
  return out;
}

inline double n_boson_spectral(const IVec3& xi, const LatticeConfig& cfg, const Potential& pot,
                               const MomentumOptions& opts = {}) {
  return *momentum_parts(xi, cfg, pot, {.spectral = true}, opts).n_b_spectral;
}

inline double n_boson_integral(const IVec3& xi, const LatticeConfig& cfg, const Potential& pot,
                               const MomentumOptions& opts = {}) {
  return *momentum_parts(xi, cfg, pot, {.integral = true}, opts).n_b_integral;
}

inline double n_exchange(const IVec3& xi, const LatticeConfig& cfg, const Potential& pot,
                         const MomentumOptions& opts = {}) {
  return momentum_parts(xi, cfg, pot, {.exchange = true}, opts).n_ex;
}

/// n_b (by the chosen route) and n_ex at xi, with diagnostics.
inline MomentumBreakdown n_point(const IVec3& xi, const LatticeConfig& cfg, const Potential& pot,
                                 const MomentumOptions& opts = {}) {
  const Route route = opts.route.value_or(default_route(xi, cfg));
  detail::Request req{.spectral = route != Route::integral, .integral = route != Route::spectral, .exchange = true};
  auto out = momentum_parts(xi, cfg, pot, req, opts);
  out.route = route;
  out.n_b = route == Route::integral ? *out.n_b_integral : *out.n_b_spectral;
  return out;
}

/// A test function f on Z^3 with f(xi) = f(-xi).
class Observable {
 public:
  static Observable fermi_ball_indicator(const LatticeConfig& cfg) {
    std::map<IVec3, double> v;
    for (const auto& p : cfg.ball) v[p] = 1.0;
    return Observable(std::move(v));
  }
  /// weight at xi0 and at -xi0.
  static Observable delta(const IVec3& xi0, double weight = 1.0) {
    return Observable({{xi0, weight}, {-xi0, weight}});
  }
  /// Rejects tables that are not even under xi -> -xi.
  static Observable table(std::map<IVec3, double> values) {
    for (const auto& [xi, f] : values) {
      auto it = values.find(-xi);
      const double mirror = it == values.end() ? 0.0 : it->second;
      if (mirror != f)
        throw std::invalid_argument("Observable: f is not symmetric at xi = " + to_string(xi) + " (f(xi) = " +
                                    std::to_string(f) + ", f(-xi) = " + std::to_string(mirror) + ")");
    }
    return Observable(std::move(values));
  }

  const std::map<IVec3, double>& values() const { return values_; }

 private:
  explicit Observable(std::map<IVec3, double> v) : values_(std::move(v)) {}
  std::map<IVec3, double> values_;
};

struct WeightedResult {
  double value = 0.0;
  double n_b = 0.0;
  double n_ex = 0.0;
  std::vector<std::pair<double, MomentumBreakdown>> rows;  // (f(xi), n at xi), xi ascending
  bool converged = true;
};

/// n(f) = sum_xi f(xi) n(xi) over the support of f.
inline WeightedResult n_weighted(const Observable& f, const LatticeConfig& cfg, const Potential& pot,
                                 const MomentumOptions& opts = {}) {
  WeightedResult out;
  CompensatedSum total, nb, nex;
  for (const auto& [xi, w] : f.values()) {
    if (w == 0.0) continue;
    auto row = n_point(xi, cfg, pot, opts);
    total += w * row.n_total();
    nb += w * row.n_b;
    nex += w * row.n_ex;
    out.converged = out.converged && row.converged;
    out.rows.emplace_back(w, std::move(row));
  }
  out.value = total.value();
  out.n_b = nb.value();
  out.n_ex = nex.value();
  return out;
}

}  // namespace elgas
