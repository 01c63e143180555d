#pragma once

#include "santalo/types.hpp"

namespace santalo::lp {

enum class Status { kOptimal, kUnbounded };

struct Solution {
  Status status = Status::kOptimal;
  Vector x;
  double objective = 0.0;
  int pivots = 0;
};

/// Dense tableau simplex for
///     maximize c^T x  subject to  A x <= b,  x >= 0,
/// with b >= 0 so the slack basis is feasible from the start. Bland's rule
/// keeps it finite on degenerate vertices; sizes here are tens of rows.
Solution maximize(const Matrix& A, const Vector& b, const Vector& c);

/// Chebyshev center of {x : <n_i, x> <= b_i} with unit normals in the rows
/// of `normals`. Returns (center, radius). Throws kLpUnbounded for unbounded
/// regions and kDegenerateInput when the radius is not positive.
std::pair<Vector, double> chebyshev_center(const Matrix& normals,
                                           const Vector& offsets);

}  // namespace santalo::lp
