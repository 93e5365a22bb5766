#pragma once

// Shared matrix aliases, error types and default tolerances.
//
// Quadrature vectors are always ordered xi = (q1, q2, p1, p2).
// Variances use the convention in which the vacuum has V = I/2.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sp4 {

using Complex = std::complex<double>;

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;

/// Real 4x4 matrix acting on (q1, q2, p1, p2). Symplecticity is checked by
/// the operations that require it, not by the type.
using Sp4Matrix = Mat4;

/// 2x2 complex matrix u = X - iY mixing the two modes' annihilation
/// operators.
using U2Element = CMat2;

/// Bad caller input: wrong shape, out-of-range parameter, unknown name.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical validation failed: a matrix is not symplectic or not
/// positive, a round trip missed its tolerance, or a result overflowed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double structural = 1e-10;
inline constexpr double commutator = 1e-12;
inline constexpr double round_trip = 1e-9;
/// Relative tolerance used when validating caller-supplied matrices. The
/// absolute threshold is scaled by the squared magnitude of the input.
inline constexpr double validation = 1e-10;
}  // namespace tol

inline constexpr double pi = std::numbers::pi;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Threshold for products like S*B*S^T whose rounding grows with |S|^2.
inline double scaled_tolerance(double tol, const Mat4& m) {
  const double n = max_abs(m);
  return tol * std::max(1.0, n * n);
}

/// Reduces an angle to (-pi, pi].
inline double wrap_angle(double x) {
  double r = std::remainder(x, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

/// Reduces an angle to [0, period).
inline double wrap_positive(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

}  // namespace sp4
