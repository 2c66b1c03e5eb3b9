// Command-line front end. Exit codes: 0 ok, 1 verify failure, 2 bad
// configuration, 3 a sum or integral flagged as not converged.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "elgas/elgas.hpp"
#include "elgas/json_io.hpp"

namespace {

using namespace elgas;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double k_fermi = 1.0;
  std::string potential = "coulomb:g=1";
  double quad_tol = 1e-9;
  double k_max = 0.0;
  double tail_tol = 1e-6;
  bool fixed_cutoff = false;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string format = "json";

  // subcommand-specific
  std::string xi = "1,1,0";
  std::vector<std::string> xis;
  std::string k = "1,0,0";
  std::string route = "auto";
  std::string observable = "fermi-ball";
  std::optional<double> alpha;
  std::int64_t samples = 200000;
  std::string zeta_counting = "multiset";
};

void add_common(CLI::App* sub, RunConfig& rc, bool with_potential = true) {
  sub->add_option("--kf", rc.k_fermi, "Fermi momentum k_F")->required()->check(CLI::PositiveNumber);
  if (with_potential)
    sub->add_option("--potential", rc.potential, "coulomb:g=G | yukawa:g=G,mu=M | table:PATH | zero")
        ->capture_default_str();
  sub->add_option("--quad-tol", rc.quad_tol, "quadrature tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--k-max", rc.k_max, "initial cutoff radius for infinite k-sums (0: 2 k_F + 2)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--tail-tol", rc.tail_tol, "relative tolerance of the cutoff doubling")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_flag("--fixed-cutoff", rc.fixed_cutoff, "use --k-max as is, no doubling");
  sub->add_option("--threads", rc.threads, "worker threads (0: ELGAS_THREADS or hardware)");
  sub->add_option("--seed", rc.seed, "random seed")->capture_default_str();
  sub->add_option("--format", rc.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

Potential load_potential(const RunConfig& rc) {
  Potential pot = Potential::parse(rc.potential);
  if (const auto* t = std::get_if<TableKind>(&pot.kind())) {
    double radius = 1.0;
    for (const auto& [k, v] : t->values) radius = std::max(radius, std::sqrt(static_cast<double>(k.norm2())));
    const auto report = validate(pot, radius);
    if (!report.ok()) {
      std::string msg = "table potential violates 0 <= V_k = V_{-k}:";
      for (const auto& k : report.asymmetric_at) msg += " asymmetric at " + to_string(k) + ";";
      for (const auto& k : report.negative_at) msg += " negative at " + to_string(k) + ";";
      throw ConfigError(msg);
    }
  }
  return pot;
}

TruncationPolicy policy_of(const RunConfig& rc) {
  TruncationPolicy p;
  p.k_max = rc.k_max;
  p.tail_rel_tol = rc.tail_tol;
  p.adaptive = !rc.fixed_cutoff;
  return p;
}

MomentumOptions momentum_options(const RunConfig& rc) {
  MomentumOptions o;
  o.policy = policy_of(rc);
  o.quad.abs_tol = rc.quad_tol;
  if (rc.route != "auto") o.route = parse_route(rc.route);
  o.counting = rc.zeta_counting == "set" ? ZetaCounting::set : ZetaCounting::multiset;
  o.threads = rc.threads;
  return o;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

Observable load_observable(const RunConfig& rc, const LatticeConfig& cfg) {
  const std::string& spec = rc.observable;
  if (spec == "fermi-ball") return Observable::fermi_ball_indicator(cfg);
  if (spec.rfind("delta:", 0) == 0) return Observable::delta(parse_ivec3(spec.substr(6)));
  if (spec.rfind("table:", 0) == 0) {
    const std::string path = spec.substr(6);
    std::ifstream in(path);
    if (!in) throw ConfigError("observable: cannot open '" + path + "'");
    return Observable::table(Potential::parse_table(in, path));
  }
  throw ConfigError("unknown observable '" + spec + "' (expected fermi-ball, delta:X,Y,Z or table:PATH)");
}

int run(int argc, char** argv) {
  CLI::App app{"Momentum distribution and correlation energies of the mean-field electron-gas trial state"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* info = app.add_subcommand("lattice-info", "Fermi ball size, kappa");
  add_common(info, rc, false);

  auto* lune_cmd = app.add_subcommand("lune", "points and gaps of L_k");
  add_common(lune_cmd, rc, false);
  lune_cmd->add_option("--k", rc.k, "k as x,y,z")->required();

  auto* mom = app.add_subcommand("momentum", "n_b(xi) and n_ex(xi)");
  add_common(mom, rc);
  mom->add_option("--xi", rc.xi, "xi as x,y,z")->required();
  mom->add_option("--route", rc.route, "n_b route")
      ->check(CLI::IsMember({"auto", "integral", "spectral", "both"}))
      ->capture_default_str();
  mom->add_option("--zeta-counting", rc.zeta_counting, "coincident elements of D_{k,xi}")
      ->check(CLI::IsMember({"multiset", "set"}))
      ->capture_default_str();

  auto* msum = app.add_subcommand("momentum-sum", "n(f) = sum_xi f(xi) n(xi)");
  add_common(msum, rc);
  msum->add_option("--observable", rc.observable, "fermi-ball | delta:X,Y,Z | table:PATH")->capture_default_str();
  msum->add_option("--route", rc.route, "n_b route")
      ->check(CLI::IsMember({"auto", "integral", "spectral", "both"}))
      ->capture_default_str();

  auto* en = app.add_subcommand("energy", "E_FS, E_corr,bos, E_corr,ex");
  add_common(en, rc);

  auto* dv = app.add_subcommand("dv-compare", "discrete n_b, n_ex against the continuum formulas");
  add_common(dv, rc);
  dv->add_option("--xi", rc.xis, "xi as x,y,z (repeatable)");
  dv->add_option("--alpha", rc.alpha, "continuum coupling (default g / (16 pi^3 k_F^2))")->check(CLI::NonNegativeNumber);
  dv->add_option("--samples", rc.samples, "Monte Carlo samples")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "identities, bounds and cross-route checks");
  add_common(ver, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  LatticeConfig cfg;
  Potential pot = Potential::zero();
  try {
    cfg = fermi_ball(rc.k_fermi);
    if (!info->parsed() && !lune_cmd->parsed()) pot = load_potential(rc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (info->parsed()) {
    emit(to_json(cfg));
    return 0;
  }

  if (lune_cmd->parsed()) {
    IVec3 k;
    try {
      k = parse_ivec3(rc.k);
      if (k.is_zero()) throw std::invalid_argument("--k must be nonzero");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const auto basis = lune(k, cfg);
    if (rc.format == "csv")
      write_csv(std::cout, basis);
    else
      emit(to_json(basis));
    return 0;
  }

  if (mom->parsed()) {
    IVec3 xi;
    try {
      xi = parse_ivec3(rc.xi);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const auto b = n_point(xi, cfg, pot, momentum_options(rc));
    emit(to_json(b));
    return b.converged ? 0 : kExitNotConverged;
  }

  if (msum->parsed()) {
    const auto f = load_observable(rc, cfg);
    const auto w = n_weighted(f, cfg, pot, momentum_options(rc));
    emit(to_json(w));
    return w.converged ? 0 : kExitNotConverged;
  }

  if (en->parsed()) {
    EnergyOptions o;
    o.policy = policy_of(rc);
    o.quad.rel_tol = rc.quad_tol;
    o.threads = rc.threads;
    const auto e = energy_report(cfg, pot, o);
    emit(to_json(e));
    const bool ok = e.corr_bos.converged && e.corr_bos.quad_converged && e.corr_ex.converged;
    return ok ? 0 : kExitNotConverged;
  }

  if (dv->parsed()) {
    std::vector<IVec3> xis;
    try {
      for (const auto& s : rc.xis) xis.push_back(parse_ivec3(s));
      if (!std::holds_alternative<CoulombKind>(pot.kind()))
        throw std::invalid_argument("dv-compare requires a coulomb potential");
      if (xis.empty()) {
        // First two shells outside the ball, one representative each.
        std::int64_t n2 = cfg.r2max + 1;
        while (xis.size() < 2) {
          for (const auto& orbit : cubic_orbits(n2 - 1, n2))
            if (orbit.k.norm2() == n2) {
              xis.push_back(orbit.k);
              break;
            }
          ++n2;
        }
      }
      for (const auto& xi : xis)
        if (cfg.in_ball(xi)) throw std::invalid_argument("--xi " + to_string(xi) + " lies in B_F");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    CompareOptions o;
    o.alpha = rc.alpha;
    o.momentum = momentum_options(rc);
    o.mc.samples = rc.samples;
    o.mc.seed = rc.seed;
    o.mc.threads = rc.threads;
    const auto rows = compare_table(cfg, pot, xis, o);
    if (rc.format == "csv") {
      write_csv(std::cout, rows);
    } else {
      json a = json::array();
      for (const auto& r : rows) a.push_back(to_json(r));
      emit({{"alpha", o.alpha.value_or(alpha_from_coulomb(std::get<CoulombKind>(pot.kind()).g, cfg.k_fermi))},
            {"rows", a}});
    }
    return 0;
  }

  if (ver->parsed()) {
    VerifyOptions o;
    o.seed = rc.seed;
    o.quad.abs_tol = rc.quad_tol;
    const auto reports = run_verify(cfg, pot, o);
    emit(to_json(reports));
    return any_failed(reports) ? kExitVerifyFailed : 0;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "elgas: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "elgas: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "elgas: " << e.what() << '\n';
    return 4;
  }
}
