#pragma once

#include "sp4/core.hpp"
#include "sp4/symplectic.hpp"

#include <sstream>

namespace sp4 {

/// S = positive * passive, positive symmetric positive definite symplectic,
/// passive orthogonal symplectic (a U(2) embedding).
struct PolarFactors {
  Mat4 positive;
  Mat4 passive;
};

/// Symmetric square root of a symmetric positive definite matrix, together
/// with its inverse.
inline std::pair<Mat4, Mat4> spd_sqrt_and_inverse(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(m);
  const Vec4 ev = es.eigenvalues();
  if (!(ev.minCoeff() > 0.0)) {
    throw NumericalError("matrix is not positive definite");
  }
  const Mat4& v = es.eigenvectors();
  const Vec4 r = ev.cwiseSqrt();
  return {v * r.asDiagonal() * v.transpose(),
          v * r.cwiseInverse().asDiagonal() * v.transpose()};
}

/// Polar decomposition S = P K via P = (S S^T)^(1/2), K = P^-1 S. Both
/// factors are checked for symplecticity; K is also checked for the U(2)
/// block form.
inline PolarFactors polar_decompose(const Mat4& s, double tol = tol::validation) {
  require_symplectic(s, "polar_decompose", tol);
  const Mat4 sst = s * s.transpose();
  auto [p, p_inv] = spd_sqrt_and_inverse(0.5 * (sst + sst.transpose()));
  p = (0.5 * (p + p.transpose())).eval();
  const Mat4 k = p_inv * s;

  require_symplectic(p, "polar_decompose (positive factor)", tol);
  require_symplectic(k, "polar_decompose (passive factor)", tol);
  const double ortho = max_abs(k * k.transpose() - Mat4::Identity());
  if (ortho > scaled_tolerance(tol, s)) {
    std::ostringstream msg;
    msg << "polar_decompose: passive factor is not orthogonal (residual "
        << ortho << ")";
    throw NumericalError(msg.str());
  }
  return {p, k};
}

}  // namespace sp4
