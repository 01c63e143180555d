#include "santalo/lp.hpp"

#include <cmath>
#include <limits>

namespace santalo::lp {

Solution maximize(const Matrix& A, const Vector& b, const Vector& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) {
    fail(ErrorCode::kInvalidArgument, "lp: dimension mismatch");
  }
  if ((b.array() < 0.0).any()) {
    fail(ErrorCode::kInvalidArgument, "lp: right-hand side must be >= 0");
  }

  // Tableau rows 0..m-1 are constraints, row m is the reduced cost row.
  // Columns 0..n-1 structural, n..n+m-1 slack, n+m is the rhs.
  Matrix T = Matrix::Zero(m + 1, n + m + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(n + m).head(m) = b;
  T.row(m).head(n) = -c.transpose();

  std::vector<Eigen::Index> basis(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  const double eps = 1e-12;
  Solution sol;
  const int max_pivots = 50 * static_cast<int>(n + m) + 1000;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = T(i, enter);
      if (a > eps) {
        const double ratio = T(i, n + m) / a;
        if (ratio < best - eps ||
            (std::abs(ratio - best) <= eps && leave >= 0 &&
             basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      sol.status = Status::kUnbounded;
      return sol;
    }

    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) {
        T.row(i) -= T(i, enter) * T.row(leave);
      }
    }
    basis[static_cast<size_t>(leave)] = enter;
    if (++sol.pivots > max_pivots) {
      fail(ErrorCode::kGeometryInconsistent, "lp: pivot limit exceeded");
    }
  }

  sol.x = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<size_t>(i)];
    if (j < n) sol.x[j] = T(i, n + m);
  }
  sol.objective = c.dot(sol.x);
  return sol;
}

std::pair<Vector, double> chebyshev_center(const Matrix& normals,
                                           const Vector& offsets) {
  const Eigen::Index m = normals.rows();
  const Eigen::Index d = normals.cols();
  // x = xp - xm, r = r0 + rp with r0 chosen so the origin of the shifted
  // problem is feasible: at x = 0, r = r0 every row has slack >= 1.
  const double r0 = offsets.minCoeff() - 1.0;
  Matrix A(m, 2 * d + 1);
  A.leftCols(d) = normals;
  A.middleCols(d, d) = -normals;
  A.col(2 * d).setOnes();
  const Vector b = offsets.array() - r0;
  Vector c = Vector::Zero(2 * d + 1);
  c[2 * d] = 1.0;

  const Solution sol = maximize(A, b, c);
  if (sol.status == Status::kUnbounded) {
    fail(ErrorCode::kLpUnbounded, "chebyshev_center: region is unbounded");
  }
  const Vector center = sol.x.head(d) - sol.x.segment(d, d);
  const double radius = r0 + sol.x[2 * d];
  if (!(radius > 0.0)) {
    fail(ErrorCode::kDegenerateInput,
         "chebyshev_center: region has empty interior");
  }
  return {center, radius};
}

}  // namespace santalo::lp
