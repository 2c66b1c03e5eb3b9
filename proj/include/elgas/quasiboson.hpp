#pragma once

// Per-mode one-body objects on l^2(L_k): the gap operator h_k, the coupling
// vector v_k (and u_k = h_k^{1/2} v_k), the kernel K_k, the pair e^{-+2K_k},
// the hyperbolic families C_k(tau), S_k(tau), and the response Q_k(s).

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

#include "elgas/lattice.hpp"
#include "elgas/matrix_function.hpp"
#include "elgas/potential.hpp"
#include "elgas/quadrature.hpp"
#include "elgas/rank1.hpp"

namespace elgas {

inline constexpr double kTwoPiCubed = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

struct Mode {
  LuneBasis lune;
  double vhat = 0.0;
  /// <e_p, P_k e_q> = k_F^{-1} V_k / (2 (2 pi)^3), the same for every p, q.
  double v2 = 0.0;
  Eigen::VectorXd lambdas;
  Eigen::VectorXd v;
  Eigen::VectorXd u;

  std::size_t dim() const { return lune.size(); }
  /// Prefactor of Q_k: k_F^{-1} V_k / (2 pi)^3 = 2 v2.
  double coupling() const { return 2.0 * v2; }
  bool is_trivial() const { return dim() == 0 || v2 == 0.0; }

  std::span<const double> lambda_span() const { return {lambdas.data(), static_cast<std::size_t>(lambdas.size())}; }
  std::span<const double> u_span() const { return {u.data(), static_cast<std::size_t>(u.size())}; }
};

inline Mode build_mode(const IVec3& k, const LatticeConfig& cfg, const Potential& pot) {
  Mode m;
  m.lune = lune(k, cfg);
  m.vhat = pot(k);
  m.v2 = m.vhat / (cfg.k_fermi * 2.0 * kTwoPiCubed);
  const auto n = static_cast<Eigen::Index>(m.lune.size());
  m.lambdas.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) m.lambdas[i] = m.lune.lambda(static_cast<std::size_t>(i));
  m.v = Eigen::VectorXd::Constant(n, std::sqrt(m.v2));
  m.u = m.lambdas.cwiseSqrt().cwiseProduct(m.v);
  return m;
}

/// Q_k(s) = (k_F^{-1} V_k / (2 pi)^3) sum_p lambda_p / (s^2 + lambda_p^2).
inline double q_of_s(const Mode& mode, double s) {
  if (mode.is_trivial()) return 0.0;
  double acc = 0.0;
  const double s2 = s * s;
  for (Eigen::Index i = 0; i < mode.lambdas.size(); ++i) {
    const double l = mode.lambdas[i];
    acc += l / (s2 + l * l);
  }
  return mode.coupling() * acc;
}

/// 1 + 2 <u, (h^2 + s^2)^{-1} u>, which equals 1 + Q_k(s).
inline double response_denominator(const Mode& mode, double s) {
  return rank1_denominator(mode.lambda_span(), mode.u_span(), s);
}

/// h^2 + 2 |u><u|  ( = h^{1/2} (h + 2 P_k) h^{1/2} ).
inline Eigen::MatrixXd dressed_square(const Mode& mode) {
  Eigen::MatrixXd m = 2.0 * mode.u * mode.u.transpose();
  m.diagonal() += mode.lambdas.cwiseAbs2();
  return m;
}

struct ExpPair {
  ModeMatrix a;      ///< e^{-2K} = h^{-1/2} (h^2 + 2P_u)^{1/2} h^{-1/2}
  ModeMatrix a_inv;  ///< e^{+2K} = h^{1/2} (h^2 + 2P_u)^{-1/2} h^{1/2}
};

inline ExpPair exp_pm2K(const Mode& mode) {
  const auto n = static_cast<Eigen::Index>(mode.dim());
  if (n == 0) return {ModeMatrix(0, 0), ModeMatrix(0, 0)};
  const SpectralDecomposition eig(dressed_square(mode));
  const Eigen::VectorXd h_half = mode.lambdas.cwiseSqrt();
  const Eigen::VectorXd h_minus_half = h_half.cwiseInverse();
  const ModeMatrix root = eig.apply([](double x) { return std::sqrt(x); });
  const ModeMatrix inv_root = eig.apply([](double x) { return 1.0 / std::sqrt(x); });
  ExpPair out;
  out.a = symmetrized(h_minus_half.asDiagonal() * root * h_minus_half.asDiagonal());
  out.a_inv = symmetrized(h_half.asDiagonal() * inv_root * h_half.asDiagonal());
  return out;
}

/// K_k = -1/2 log[h^{-1/2} (h^{1/2}(h + 2P_k)h^{1/2})^{1/2} h^{-1/2}]; symmetric, <= 0.
inline ModeMatrix build_K(const Mode& mode) {
  if (mode.dim() == 0) return ModeMatrix(0, 0);
  if (mode.v2 == 0.0) return ModeMatrix::Zero(mode.dim(), mode.dim());
  const auto pair = exp_pm2K(mode);
  return -0.5 * sym_matrix_function(pair.a, MatrixFn::log);
}

struct HyperbolicPair {
  ModeMatrix c;  ///< cosh(-tau K) - 1
  ModeMatrix s;  ///< sinh(-tau K)
};

inline HyperbolicPair csk_pair(const ModeMatrix& kernel, double tau) {
  if (kernel.size() == 0) return {kernel, kernel};
  const SpectralDecomposition eig(kernel);
  auto cosh_m1 = [tau](double x) {
    const double h = std::sinh(-0.5 * tau * x);
    return 2.0 * h * h;
  };
  return {eig.apply(cosh_m1), eig.apply([tau](double x) { return std::sinh(-tau * x); })};
}

/// Diagonal of cosh(-2K_k) - 1 = (A + A^{-1})/2 - 1 with A = e^{-2K_k}.
///
/// Evaluated as U diag((gamma - 1)^2 / (2 gamma)) U^T over the spectrum of A,
/// which is a sum of nonnegative terms.
inline Eigen::VectorXd cosh_minus_one_diag(const Mode& mode) {
  const auto n = static_cast<Eigen::Index>(mode.dim());
  if (mode.is_trivial()) return Eigen::VectorXd::Zero(n);
  const SpectralDecomposition eig(exp_pm2K(mode).a);
  return eig.apply_diagonal([](double g) {
    const double d = g - 1.0;
    return d * d / (2.0 * g);
  });
}

/// The same diagonal entry through the resolvent integral
///   (1/pi) (k_F^{-1} V_k/(2 pi)^3) int_0^inf (s^2 - l^2)(s^2 + l^2)^{-2} / (1 + Q_k(s)) ds.
///
/// Since int_0^inf (s^2 - l^2)(s^2 + l^2)^{-2} ds = 0, the integrand is taken
/// as -(s^2 - l^2)(s^2 + l^2)^{-2} Q/(1 + Q); it vanishes identically when V_k = 0.
inline QuadratureResult cosh_minus_one_diag_integral(const Mode& mode, std::size_t index,
                                                     const QuadratureOptions& opts = {}) {
  if (index >= mode.dim()) throw std::invalid_argument("cosh_minus_one_diag_integral: index out of range");
  if (mode.is_trivial()) return {0.0, 0.0, 1, true};
  const double l = mode.lambdas[static_cast<Eigen::Index>(index)];
  const double l2 = l * l;
  auto integrand = [&](double s) {
    const double s2 = s * s;
    const double q = q_of_s(mode, s);
    const double base = (s2 - l2) / ((s2 + l2) * (s2 + l2));
    return -base * q / (1.0 + q);
  };
  const double seeds[] = {l, 10.0 * l};
  auto r = integrate_semi_infinite(integrand, opts, seeds);
  const double scale = mode.coupling() / std::numbers::pi;
  r.value *= scale;
  r.abs_error_estimate *= scale;
  return r;
}

}  // namespace elgas
