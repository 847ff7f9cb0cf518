#ifndef TARSKI_LINALG_HPP
#define TARSKI_LINALG_HPP

#include "tarski/rational.hpp"

#include <optional>
#include <stdexcept>

namespace tarski {

/// Solves A x = b exactly by Gauss-Jordan elimination. Returns nothing when
/// A does not have full column rank or the system is inconsistent.
/// Works for any exact field scalar.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_exact(Matrix<Scalar> a, Vector<Scalar> b) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (b.size() != rows) throw std::invalid_argument("solve_exact: size mismatch");
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    a.row(r).swap(a.row(pivot));
    std::swap(b[r], b[pivot]);
    const Scalar inv = Scalar(1) / a(r, c);
    a.row(r) *= inv;
    b[r] *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Scalar factor = a(i, c);
      a.row(i) -= factor * a.row(r);
      b[i] -= factor * b[r];
    }
    ++r;
  }
  for (Eigen::Index i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  return Vector<Scalar>(b.head(cols));
}

struct LpSolution {
  RationalVector primal;
  RationalVector dual;
  Rational objective;
};

/// max c^T x subject to A x <= b, x >= 0, with b >= 0 so the origin is a
/// feasible start. Dense tableau simplex with Bland's rule. Throws
/// std::runtime_error if the program is unbounded.
LpSolution simplex_max(const RationalMatrix& a, const RationalVector& b, const RationalVector& c);

}  // namespace tarski

#endif  // TARSKI_LINALG_HPP
