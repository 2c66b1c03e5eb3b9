#pragma once

// Executable checks of the lattice facts, the per-mode operator bounds and
// identities, and the agreement between independent computational routes.
// Exact identities are asserts; bounds with unknown constants are reported
// as diagnostics carrying the fitted constant.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "elgas/energy.hpp"
#include "elgas/lattice.hpp"
#include "elgas/matrix_function.hpp"
#include "elgas/momentum.hpp"
#include "elgas/quasiboson.hpp"
#include "elgas/rank1.hpp"

namespace elgas {

enum class CheckStatus { pass, fail, diagnostic };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::diagnostic: return "diagnostic";
  }
  return "?";
}

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  /// Largest observed error (asserts) or the headline statistic (diagnostics).
  double measured = 0.0;
  double tolerance = 0.0;
  std::string worst_case;
  std::string parameters;
  /// Set on failure: the exact inputs of the worst case.
  std::string reproducer;
  std::vector<std::pair<std::string, double>> metrics;

  bool failed() const { return status == CheckStatus::fail; }
};

inline bool any_failed(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.failed(); });
}

namespace detail {

/// Tracks the largest error of an assert-class check.
class Worst {
 public:
  Worst(std::string name, double tolerance, std::string parameters)
      : report_{.name = std::move(name), .tolerance = tolerance, .parameters = std::move(parameters)} {
    report_.measured = -std::numeric_limits<double>::infinity();
  }

  template <class Describe>
  void observe(double error, Describe&& describe) {
    if (std::isnan(error)) error = std::numeric_limits<double>::infinity();
    if (error > report_.measured) {
      report_.measured = error;
      report_.worst_case = describe();
    }
  }

  CheckReport finish() && {
    if (report_.measured == -std::numeric_limits<double>::infinity()) {
      report_.measured = 0.0;
      report_.worst_case = "no cases";
    }
    if (report_.measured > report_.tolerance) {
      report_.status = CheckStatus::fail;
      report_.reproducer = report_.worst_case;
    }
    return std::move(report_);
  }

 private:
  CheckReport report_;
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string where(const LatticeConfig& cfg, const IVec3& k) {
  return "k_F=" + fmt(cfg.k_fermi) + " k=" + to_string(k);
}

inline std::vector<IVec3> nonzero_ball(double radius) { return lattice_shell(-1.0, radius); }

}  // namespace detail

using LambdaFn = std::function<double(const IVec3& k, const IVec3& p)>;

struct VerifyOptions {
  /// |k| range of the lattice sweeps; 0 selects 2 k_F + 2.
  double lattice_radius = 0.0;
  /// |k| range of the per-mode checks; 0 selects 2 k_F.
  double mode_radius = 0.0;
  std::vector<double> taus{0.0, 0.5, 1.0};
  std::uint64_t seed = 1;
  int four_point_pairs = 200;
  double slack = 1e-10;
  QuadratureOptions quad;
  /// Replaces lambda_of in the lattice checks (negative controls).
  LambdaFn lambda_override;

  double lattice_r(const LatticeConfig& cfg) const { return lattice_radius > 0 ? lattice_radius : 2 * cfg.k_fermi + 2; }
  double mode_r(const LatticeConfig& cfg) const { return mode_radius > 0 ? mode_radius : 2 * cfg.k_fermi; }
};

inline std::vector<CheckReport> check_lattice(const LatticeConfig& cfg, const VerifyOptions& opts = {}) {
  const LambdaFn lam = opts.lambda_override ? opts.lambda_override : LambdaFn(&lambda_of);
  const double radius = opts.lattice_r(cfg);
  const auto ks = detail::nonzero_ball(radius);
  const std::string params = "k_F=" + detail::fmt(cfg.k_fermi) + " |k|<=" + detail::fmt(radius);
  std::vector<CheckReport> out;

  {
    detail::Worst w("lattice.gap", 0.0, params);
    for (const auto& k : ks) {
      const auto basis = lune(k, cfg);
      for (const auto& p : basis.points) {
        const double l = lam(k, p);
        w.observe(0.5 - l, [&] { return detail::where(cfg, k) + " p=" + to_string(p) + " lambda=" + detail::fmt(l); });
      }
    }
    out.push_back(std::move(w).finish());
  }

  {
    detail::Worst w("lattice.reflection", 0.0, params);
    for (const auto& k : ks) {
      const auto a = lune(k, cfg);
      const auto b = lune(-k, cfg);
      std::vector<IVec3> neg;
      for (const auto& p : a.points) neg.push_back(-p);
      std::sort(neg.begin(), neg.end());
      if (neg != b.points) {
        w.observe(1.0, [&] { return detail::where(cfg, k) + ": L_{-k} != -L_k"; });
        continue;
      }
      for (const auto& p : a.points) {
        const double err = std::abs(lam(-k, -p) - lam(k, p));
        w.observe(err, [&] { return detail::where(cfg, k) + " p=" + to_string(p); });
      }
    }
    out.push_back(std::move(w).finish());
  }

  {
    // k + l = p + q with p, q in L_k and L_l.
    detail::Worst w("lattice.four_point", 1e-12, params + " pairs=" + std::to_string(opts.four_point_pairs));
    std::mt19937_64 gen(opts.seed);
    const auto box = static_cast<std::int64_t>(std::ceil(2 * cfg.k_fermi + 1));
    std::uniform_int_distribution<std::int64_t> coord(-box, box);
    std::int64_t quadruples = 0;
    for (int t = 0; t < opts.four_point_pairs; ++t) {
      const IVec3 k{coord(gen), coord(gen), coord(gen)};
      const IVec3 l{coord(gen), coord(gen), coord(gen)};
      if (k.is_zero() || l.is_zero()) continue;
      for (const auto& p : lune(k, cfg).points) {
        const IVec3 q = k + l - p;
        if (!in_lune(l, p, cfg) || !in_lune(k, q, cfg) || !in_lune(l, q, cfg)) continue;
        ++quadruples;
        const double err = std::abs(lam(k, p) + lam(k, q) - lam(l, p) - lam(l, q));
        w.observe(err, [&] {
          return detail::where(cfg, k) + " l=" + to_string(l) + " p=" + to_string(p) + " q=" + to_string(q);
        });
      }
    }
    auto r = std::move(w).finish();
    r.metrics.emplace_back("quadruples", static_cast<double>(quadruples));
    out.push_back(std::move(r));
  }

  {
    // sum_{p in L_k} lambda^beta against k_F^{2+beta}|k|^{1+beta} (|k| <= 2k_F) or k_F^3 |k|^{2 beta}.
    CheckReport r{.name = "lattice.lune_sum_trend", .status = CheckStatus::diagnostic, .parameters = params};
    for (double beta : {-1.0, -0.5}) {
      double c_in = 0.0, c_out = 0.0;
      for (const auto& k : ks) {
        const auto basis = lune(k, cfg);
        double s = 0.0;
        for (const auto& p : basis.points) s += std::pow(lam(k, p), beta);
        const double kn = std::sqrt(static_cast<double>(k.norm2()));
        if (kn <= 2 * cfg.k_fermi)
          c_in = std::max(c_in, s / (std::pow(cfg.k_fermi, 2 + beta) * std::pow(kn, 1 + beta)));
        else
          c_out = std::max(c_out, s / (std::pow(cfg.k_fermi, 3) * std::pow(kn, 2 * beta)));
      }
      r.metrics.emplace_back("c_inner(beta=" + detail::fmt(beta) + ")", c_in);
      r.metrics.emplace_back("c_outer(beta=" + detail::fmt(beta) + ")", c_out);
      r.measured = std::max(r.measured, std::max(c_in, c_out));
    }
    r.worst_case = "largest fitted constant over both regimes and beta in {-1, -1/2}";
    out.push_back(std::move(r));
  }

  {
    // sum_k chi_{L_k}(xi)/lambda_{k,xi} on the first shell outside B_F (a finite sum),
    // and sum_k chi_{L'_k}(xi)/lambda_{k,k+xi}^2 / m(xi) for xi in B_F (cut at |k| <= 8 k_F + 8
    // plus the continuum tail 16 pi / R).
    CheckReport r{.name = "lattice.gap_sum", .status = CheckStatus::diagnostic, .parameters = params};
    std::int64_t shell = cfg.r2max + 1;
    while (!detail::is_sum_of_three_squares(shell)) ++shell;
    double worst_out = 0.0, worst_in = 0.0;
    for (const auto& xi : lattice_shell(-1.0, std::sqrt(static_cast<double>(shell)))) {
      if (xi.norm2() != shell) continue;
      double s = 0.0;
      for (const auto& q : cfg.ball) {
        const IVec3 k = xi - q;
        if (k.is_zero() || !in_lune(k, xi, cfg)) continue;
        s += 1.0 / lam(k, xi);
      }
      worst_out = std::max(worst_out, s / cfg.k_fermi);
    }
    const double cut = 8 * cfg.k_fermi + 8;
    const auto far = detail::nonzero_ball(cut);
    for (const auto& xi : cfg.ball) {
      double s = 16.0 * std::numbers::pi / cut;
      for (const auto& k : far) {
        if (!in_lune(k, k + xi, cfg)) continue;
        const double l = lam(k, k + xi);
        s += 1.0 / (l * l);
      }
      worst_in = std::max(worst_in, s / (cfg.k_fermi * kappa_and_weight(xi, cfg).weight));
    }
    r.metrics.emplace_back("outside_first_shell/k_F", worst_out);
    r.metrics.emplace_back("inside/(k_F m(xi))", worst_in);
    r.measured = std::max(worst_out, worst_in);
    r.worst_case = "first shell |xi|^2=" + std::to_string(shell);
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

/// Lower and upper elementwise bounds for -K: v_p v_q / (lambda_p + lambda_q) times
/// 1/(1 + 2<v, h^{-1} v>) and 1.
struct SandwichBounds {
  Eigen::MatrixXd upper;
  double a = 0.0;  // <v, h^{-1} v>
};

inline SandwichBounds sandwich(const Mode& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  SandwichBounds b;
  b.upper.resize(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) b.upper(p, q) = m.v[p] * m.v[q] / (m.lambdas[p] + m.lambdas[q]);
  for (Eigen::Index p = 0; p < n; ++p) b.a += m.v[p] * m.v[p] / m.lambdas[p];
  return b;
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& gen, Eigen::Index n, bool diagonal) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = diagonal ? i : 0; j <= i; ++j) t(i, j) = t(j, i) = u(gen);
  return t;
}

}  // namespace detail

inline std::vector<CheckReport> check_mode(const LatticeConfig& cfg, const Potential& pot,
                                           const VerifyOptions& opts = {}) {
  const double radius = opts.mode_r(cfg);
  const auto ks = detail::nonzero_ball(radius);
  std::ostringstream taus;
  for (double t : opts.taus) taus << t << ' ';
  const std::string params =
      "k_F=" + detail::fmt(cfg.k_fermi) + " potential=" + pot.describe() + " |k|<=" + detail::fmt(radius);
  const std::string tparams = params + " tau={" + taus.str() + "}";

  detail::Worst nsd("mode.negative_semidefinite", opts.slack, params);
  detail::Worst sk("mode.sandwich.K", opts.slack, params);
  detail::Worst ss("mode.sandwich.S", opts.slack, tparams);
  detail::Worst sc("mode.sandwich.C", opts.slack, tparams);
  detail::Worst refl("mode.reflection", opts.slack, params);
  detail::Worst hyp("mode.hyperbolic_identity", opts.slack, tparams);
  detail::Worst t1("mode.decomposition.T1", 1e-9, tparams + " T random symmetric and random diagonal");
  detail::Worst t2("mode.decomposition.T2", 1e-9, tparams + " T random symmetric and random diagonal");
  detail::Worst exp2k("mode.exp_round_trip", 1e-9, params);
  double printed_t2_gap = 0.0;
  std::string printed_t2_where;
  double prod_j1[2] = {0, 0}, prod_jm[2] = {0, 0};

  std::mt19937_64 gen(opts.seed);
  for (const auto& k : ks) {
    const Mode m = build_mode(k, cfg, pot);
    if (m.dim() == 0) continue;
    const auto n = static_cast<Eigen::Index>(m.dim());
    const ModeMatrix K = build_K(m);
    const auto where = [&] { return detail::where(cfg, k) + " potential=" + pot.describe(); };

    const SpectralDecomposition eig(K);
    nsd.observe(eig.eigenvalues().maxCoeff(), where);

    const auto b = detail::sandwich(m);
    const double lower_factor = 1.0 / (1.0 + 2.0 * b.a);
    const double c_factor = b.a / (1.0 + 2.0 * b.a);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q) {
        const double e = -K(p, q), up = b.upper(p, q);
        sk.observe(std::max(lower_factor * up - e, e - up), [&] {
          return where() + " p=" + to_string(m.lune.points[p]) + " q=" + to_string(m.lune.points[q]);
        });
      }

    // Reflection: <e_p, K_k e_q> = <e_{-p}, K_{-k} e_{-q}>.
    {
      const Mode mr = build_mode(-k, cfg, pot);
      const ModeMatrix Kr = build_K(mr);
      for (Eigen::Index p = 0; p < n; ++p) {
        const auto pr = mr.lune.index_of(-m.lune.points[p]);
        for (Eigen::Index q = 0; q < n; ++q) {
          const auto qr = mr.lune.index_of(-m.lune.points[q]);
          const double err = (pr && qr) ? std::abs(K(p, q) - Kr(*pr, *qr)) : 1.0;
          refl.observe(err, [&] { return where() + " p=" + to_string(m.lune.points[p]); });
        }
      }
    }

    // e^{-2K} from the log round trip against the closed form.
    {
      const auto pair = exp_pm2K(m);
      const ModeMatrix direct = sym_matrix_function(-2.0 * K, MatrixFn::exp);
      exp2k.observe(max_abs_entry(direct - pair.a), where);
      exp2k.observe(max_abs_entry(pair.a * pair.a_inv - ModeMatrix::Identity(n, n)), where);
    }

    for (double tau : opts.taus) {
      const auto cs = csk_pair(K, tau);
      const auto tw = [&] { return where() + " tau=" + detail::fmt(tau); };
      for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index q = 0; q < n; ++q) {
          const double up = b.upper(p, q);
          const double s = cs.s(p, q), c = cs.c(p, q);
          ss.observe(std::max(lower_factor * up * tau - s, s - up * tau), [&] {
            return tw() + " p=" + to_string(m.lune.points[p]) + " q=" + to_string(m.lune.points[q]);
          });
          sc.observe(std::max(-c, c - c_factor * up), [&] {
            return tw() + " p=" + to_string(m.lune.points[p]) + " q=" + to_string(m.lune.points[q]);
          });
        }
      const ModeMatrix I = ModeMatrix::Identity(n, n);
      const ModeMatrix cp = cs.c + I;
      hyp.observe(max_abs_entry(cp * cp - cs.s * cs.s - I), tw);

      // e^{+-tau K} T e^{+-tau K} against the C/S decomposition.
      const ModeMatrix ep = sym_matrix_function(tau * K, MatrixFn::exp);
      const ModeMatrix em = sym_matrix_function(-tau * K, MatrixFn::exp);
      for (bool diagonal : {false, true}) {
        const ModeMatrix T = detail::random_symmetric(gen, n, diagonal);
        const ModeMatrix plus = ep * T * ep, minus = em * T * em;
        const ModeMatrix T1 = T + (T * cs.c + cs.c * T) + cs.c * T * cs.c + cs.s * T * cs.s;
        const ModeMatrix T2 = -(T * cs.s + cs.s * T) - cs.c * T * cs.s - cs.s * T * cs.c;
        const ModeMatrix T2_printed = -(T * cs.s + cs.s * T) - 2.0 * cs.s * T * cs.c;
        t1.observe(max_abs_entry(T1 - 0.5 * (plus + minus)), tw);
        t2.observe(max_abs_entry(T2 - 0.5 * (plus - minus)), tw);
        const double gap = max_abs_entry(T2_printed - 0.5 * (plus - minus));
        if (gap > printed_t2_gap) {
          printed_t2_gap = gap;
          printed_t2_where = tw();
        }
      }

      // Products of m in {2, 3} factors from {C(tau), S(tau), K}, tau = 1 only.
      if (tau == 1.0 && m.vhat > 0.0) {
        const ModeMatrix* f[3] = {&cs.c, &cs.s, &K};
        const double kn2 = static_cast<double>(k.norm2());
        const double cap = std::min(1.0, cfg.k_fermi * cfg.k_fermi / kn2);
        auto scan = [&](const ModeMatrix& prod, int order) {
          double sup = 0.0;
          for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = 0; q < n; ++q)
              sup = std::max(sup, std::abs(prod(p, q)) * (m.lambdas[p] + m.lambdas[q]) * cfg.k_fermi / cap);
          prod_j1[order - 2] = std::max(prod_j1[order - 2], sup / m.vhat);
          prod_jm[order - 2] = std::max(prod_jm[order - 2], sup / std::pow(m.vhat, order));
        };
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const ModeMatrix two = *f[i] * *f[j];
            scan(two, 2);
            for (int l = 0; l < 3; ++l) scan(two * *f[l], 3);
          }
      }
    }
  }

  std::vector<CheckReport> out;
  out.push_back(std::move(nsd).finish());
  out.push_back(std::move(sk).finish());
  out.push_back(std::move(ss).finish());
  out.push_back(std::move(sc).finish());
  out.push_back(std::move(refl).finish());
  out.push_back(std::move(hyp).finish());
  out.push_back(std::move(t1).finish());
  out.push_back(std::move(t2).finish());
  out.push_back(std::move(exp2k).finish());
  out.push_back(CheckReport{.name = "mode.decomposition.T2_as_printed",
                            .status = CheckStatus::diagnostic,
                            .measured = printed_t2_gap,
                            .worst_case = printed_t2_where.empty() ? "no cases" : printed_t2_where,
                            .parameters = tparams + "; -{T,S} - 2 STC instead of -{T,S} - CTS - STC"});
  CheckReport prod{.name = "mode.product_bound",
                   .status = CheckStatus::diagnostic,
                   .measured = std::max({prod_j1[0], prod_j1[1], prod_jm[0], prod_jm[1]}),
                   .worst_case = "sup |A_pq| (lambda_p + lambda_q) k_F / min{1, k_F^2/|k|^2} / V_k^j",
                   .parameters = params};
  prod.metrics = {{"m=2,j=1", prod_j1[0]}, {"m=2,j=m", prod_jm[0]}, {"m=3,j=1", prod_j1[1]}, {"m=3,j=m", prod_jm[1]}};
  out.push_back(std::move(prod));
  return out;
}

/// sum_{xi in B_F} of the k-term of n_ex(xi), and the closed double sum it should equal.
struct ExchangeAggregation {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline ExchangeAggregation exchange_aggregation(const IVec3& k, const LatticeConfig& cfg, const Potential& pot,
                                                ZetaCounting counting = ZetaCounting::multiset) {
  MomentumOptions mo;
  mo.counting = counting;
  ExchangeAggregation out;
  CompensatedSum lhs;
  for (const auto& xi : cfg.ball) lhs += detail::k_term(k, xi, cfg, pot, {.exchange = true}, mo).n_ex;
  out.lhs = lhs.value();
  const double vk = pot(k);
  if (vk == 0.0) return out;
  const auto basis = lune(k, cfg);
  const auto lambdas = basis.lambdas();
  CompensatedSum rhs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double d = lambdas[i] + lambdas[j];
      rhs += pot(basis.points[i] + basis.points[j] - k) / (d * d);
    }
  out.rhs = -vk * rhs.value() / (4.0 * cfg.k_fermi * cfg.k_fermi * kTwoPiCubed * kTwoPiCubed);
  return out;
}

inline std::vector<CheckReport> check_cross(const LatticeConfig& cfg, const Potential& pot,
                                            const VerifyOptions& opts = {}) {
  const double radius = opts.mode_r(cfg);
  const auto ks = detail::nonzero_ball(radius);
  const std::string params =
      "k_F=" + detail::fmt(cfg.k_fermi) + " potential=" + pot.describe() + " |k|<=" + detail::fmt(radius);

  // Error relative to the allowance 10 * (reported quadrature error) + 1e-12 |value| + 1e-15.
  detail::Worst route("cross.route_per_mode", 1.0, params + " (measured: discrepancy / allowance)");
  detail::Worst sm("cross.sherman_morrison", 1e-10, params + " s={0,0.7,5} (relative)");
  detail::Worst resp("cross.response_identity", 1e-12, params + " s={0,0.3,1.7,10}");
  detail::Worst agg("cross.exchange_aggregation", 1e-12, params + " (relative)");
  detail::Worst erefl("cross.energy_reflection", 1e-12, params + " (relative, per-k energy terms)");

  for (const auto& k : ks) {
    const Mode m = build_mode(k, cfg, pot);
    const auto where = [&] { return detail::where(cfg, k) + " potential=" + pot.describe(); };
    if (m.dim() > 0) {
      const auto n = static_cast<Eigen::Index>(m.dim());
      const Eigen::VectorXd spec = cosh_minus_one_diag(m);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto r = cosh_minus_one_diag_integral(m, static_cast<std::size_t>(i), opts.quad);
        const double allowance = 10.0 * r.abs_error_estimate + 1e-12 * std::abs(spec[i]) + 1e-15;
        route.observe(std::abs(spec[i] - r.value) / allowance, [&] {
          return where() + " zeta=" + to_string(m.lune.points[i]) + " spectral=" + detail::fmt(spec[i]) +
                 " integral=" + detail::fmt(r.value);
        });
      }

      for (double s : {0.0, 0.7, 5.0}) {
        Eigen::MatrixXd dense = 2.0 * m.u * m.u.transpose();
        dense.diagonal() += (m.lambdas.cwiseAbs2().array() + s * s).matrix();
        const Eigen::MatrixXd inv = dense.inverse();
        for (Eigen::Index i = 0; i < n; ++i) {
          const double fast = rank1_resolvent_diag(m.lambda_span(), m.u_span(), s, static_cast<std::size_t>(i));
          sm.observe(std::abs(fast - inv(i, i)) / std::abs(inv(i, i)),
                     [&] { return where() + " s=" + detail::fmt(s) + " index=" + std::to_string(i); });
        }
      }
      for (double s : {0.0, 0.3, 1.7, 10.0})
        resp.observe(std::abs(response_denominator(m, s) - (1.0 + q_of_s(m, s))),
                     [&] { return where() + " s=" + detail::fmt(s); });
    }

    const auto a = exchange_aggregation(k, cfg, pot);
    const double agg_err = a.lhs == a.rhs ? 0.0 : std::abs(a.lhs - a.rhs) / std::max(std::abs(a.lhs), std::abs(a.rhs));
    agg.observe(agg_err, [&] { return where() + " lhs=" + detail::fmt(a.lhs) + " rhs=" + detail::fmt(a.rhs); });

    const double ex_p = e_corr_ex_term(k, cfg, pot), ex_m = e_corr_ex_term(-k, cfg, pot);
    const double bo_p = e_corr_bos_term(k, cfg, pot).value, bo_m = e_corr_bos_term(-k, cfg, pot).value;
    auto rel = [](double x, double y) { return x == y ? 0.0 : std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    erefl.observe(std::max(rel(ex_p, ex_m), rel(bo_p, bo_m)), where);
  }

  std::vector<CheckReport> out;
  out.push_back(std::move(route).finish());
  out.push_back(std::move(sm).finish());
  out.push_back(std::move(resp).finish());
  out.push_back(std::move(agg).finish());
  out.push_back(std::move(erefl).finish());
  return out;
}

/// All checks, ordered by name.
inline std::vector<CheckReport> run_verify(const LatticeConfig& cfg, const Potential& pot,
                                           const VerifyOptions& opts = {}) {
  auto out = check_lattice(cfg, opts);
  for (auto& r : check_mode(cfg, pot, opts)) out.push_back(std::move(r));
  for (auto& r : check_cross(cfg, pot, opts)) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace elgas
