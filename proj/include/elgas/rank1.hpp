#pragma once

// Diagonal of the rank-one-updated resolvent (h^2 + 2|u><u| + s^2)^{-1}
// for diagonal h, in O(dim) without factorising anything.

#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace elgas {

/// 1 + 2 <u, (h^2 + s^2)^{-1} u>.
inline double rank1_denominator(std::span<const double> h_diag, std::span<const double> u, double s) {
  if (h_diag.size() != u.size()) throw std::invalid_argument("rank1_denominator: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * u[i] / (h_diag[i] * h_diag[i] + s * s);
  return 1.0 + 2.0 * acc;
}

/// [(h^2 + 2 P_u + s^2)^{-1}]_{index,index} via Sherman-Morrison:
///   1/(lambda_i^2 + s^2) - 2 w_i^2 / (1 + 2 <u, w>),  w = (h^2 + s^2)^{-1} u.
inline double rank1_resolvent_diag(std::span<const double> h_diag, std::span<const double> u, double s,
                                   std::size_t index) {
  if (h_diag.size() != u.size() || index >= u.size())
    throw std::invalid_argument("rank1_resolvent_diag: dimension mismatch");
  assert(s >= 0.0);
  const double li2 = h_diag[index] * h_diag[index] + s * s;
  const double wi = u[index] / li2;
  return 1.0 / li2 - 2.0 * wi * wi / rank1_denominator(h_diag, u, s);
}

}  // namespace elgas
