#include "tarski/linalg.hpp"

#include <vector>

namespace tarski {

LpSolution simplex_max(const RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("simplex_max: size mismatch");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b[i] < 0) throw std::invalid_argument("simplex_max: right-hand side must be nonnegative");
  }

  // Tableau rows 0..m-1 are constraints with slacks; row m is the reduced
  // cost row -c. The last column is the right-hand side.
  RationalMatrix t = RationalMatrix::Zero(m + 1, n + m + 1);
  t.block(0, 0, m, n) = a;
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, n + i) = 1;
    t(i, n + m) = b[i];
  }
  for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -c[j];
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    Rational best;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      const Rational ratio = t(i, n + m) / t(i, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("simplex_max: unbounded");
    const Rational inv = Rational(1) / t(leave, enter);
    t.row(leave) *= inv;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational factor = t(i, enter);
      t.row(i) -= factor * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LpSolution out;
  out.primal = RationalVector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index v = basis[static_cast<std::size_t>(i)];
    if (v < n) out.primal[v] = t(i, n + m);
  }
  out.dual = t.block(m, n, 1, m).transpose();
  out.objective = t(m, n + m);
  return out;
}

}  // namespace tarski
