#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace santalo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointList = std::vector<Vector>;

/// Failure categories shared by every module. The C API maps these 1:1 onto
/// its status codes, so the order here is part of the ABI.
enum class ErrorCode {
  kInvalidArgument = 1,
  kDegenerateInput,
  kEmptySection,
  kOutsideProjection,
  kSingularMap,
  kCenterNotInterior,
  kLineMissesBody,
  kBracketFailure,
  kMaxIterations,
  kDegenerateAt,
  kDegenerateMap,
  kInsufficientGrid,
  kTooManyVertices,
  kGeometryInconsistent,
  kNotInCone,
  kUnsupportedDimension,
  kLpUnbounded,
};

const char* error_code_name(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

/// Default tolerances. Every one of them can be overridden through
/// `Tolerances`; the named constants are what the library uses otherwise.
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kSantaloTol = 1e-8;
inline constexpr double kConvexityTol = 1e-7;
inline constexpr double kRatioTol = 1e-8;
inline constexpr double kVolumeTol = 1e-12;
inline constexpr int kMaxDimension = 6;

struct Tolerances {
  double geom = kGeomTol;
  double sant = kSantaloTol;
  double conv = kConvexityTol;
  double ratio = kRatioTol;
  double vol = kVolumeTol;
};

inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

/// Unit vector e_axis in dimension `dim`.
inline Vector unit_axis(int dim, int axis) {
  Vector v = Vector::Zero(dim);
  v[axis] = 1.0;
  return v;
}

/// Inserts `value` at coordinate `axis`, turning a (d-1)-vector into a d-vector.
Vector insert_coordinate(const Vector& reduced, int axis, double value);
/// Drops coordinate `axis`.
Vector drop_coordinate(const Vector& full, int axis);

double factorial(int n);

}  // namespace santalo
