#pragma once

// Functions of real symmetric matrices through one eigendecomposition.

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace elgas {

/// Dense real symmetric operator on l^2(L_k).
using ModeMatrix = Eigen::MatrixXd;

enum class MatrixFn { sqrt, inv_sqrt, log, exp, cosh };

inline const char* to_string(MatrixFn fn) {
  switch (fn) {
    case MatrixFn::sqrt: return "sqrt";
    case MatrixFn::inv_sqrt: return "inv_sqrt";
    case MatrixFn::log: return "log";
    case MatrixFn::exp: return "exp";
    case MatrixFn::cosh: return "cosh";
  }
  return "?";
}

inline double max_abs_entry(const Eigen::MatrixXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// |A_pq - A_qp| <= 1e-12 * max|A|.
inline bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * std::max(max_abs_entry(a), 1e-300) ||
         a.size() == 0;
}

inline Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

/// A = U diag(w) U^T, kept so several functions of the same matrix share one solve.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("SpectralDecomposition: matrix must be square");
    if (a.size() == 0) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("SpectralDecomposition: eigensolver failed");
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }

  const Eigen::VectorXd& eigenvalues() const { return values_; }
  const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
  Eigen::Index dim() const { return values_.size(); }

  /// U f(diag) U^T, re-symmetrised.
  template <class F>
  Eigen::MatrixXd apply(F&& f) const {
    Eigen::VectorXd fw(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) fw[i] = f(values_[i]);
    return symmetrized(vectors_ * fw.asDiagonal() * vectors_.transpose());
  }

  /// Diagonal of U f(diag) U^T without forming the matrix.
  template <class F>
  Eigen::VectorXd apply_diagonal(F&& f) const {
    Eigen::VectorXd fw(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) fw[i] = f(values_[i]);
    return vectors_.cwiseAbs2() * fw;
  }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

inline Eigen::MatrixXd sym_matrix_function(const Eigen::MatrixXd& a, MatrixFn fn) {
  const SpectralDecomposition eig(a);
  if (eig.dim() == 0) return a;
  const bool needs_pd = fn == MatrixFn::sqrt || fn == MatrixFn::inv_sqrt || fn == MatrixFn::log;
  if (needs_pd && !(eig.eigenvalues().minCoeff() > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sym_matrix_function(" << to_string(fn)
        << "): matrix is not positive definite, minimum eigenvalue " << eig.eigenvalues().minCoeff();
    throw std::domain_error(msg.str());
  }
  switch (fn) {
    case MatrixFn::sqrt: return eig.apply([](double x) { return std::sqrt(x); });
    case MatrixFn::inv_sqrt: return eig.apply([](double x) { return 1.0 / std::sqrt(x); });
    case MatrixFn::log: return eig.apply([](double x) { return std::log(x); });
    case MatrixFn::exp: return eig.apply([](double x) { return std::exp(x); });
    case MatrixFn::cosh: return eig.apply([](double x) { return std::cosh(x); });
  }
  throw std::invalid_argument("sym_matrix_function: unknown function");
}

}  // namespace elgas
