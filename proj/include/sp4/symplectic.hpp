#pragma once

// The symplectic form, the complex change of basis, and the embedding of
// U(2) as the passive subgroup Sp(4,R) ∩ O(4).

#include "sp4/core.hpp"

#include <cmath>
#include <sstream>

namespace sp4 {

/// beta = [[0, I2], [-I2, 0]], so that [xi_a, xi_b] = i beta_ab.
inline Mat4 beta_form() {
  Mat4 b = Mat4::Zero();
  b(0, 2) = 1.0;
  b(1, 3) = 1.0;
  b(2, 0) = -1.0;
  b(3, 1) = -1.0;
  return b;
}

/// Omega with xi^(c) = Omega xi, where xi^(c) = (a1, a2, a1^dag, a2^dag).
inline CMat4 omega_map() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  CMat4 o;
  // clang-format off
  o << 1, 0,  i,  0,
       0, 1,  0,  i,
       1, 0, -i,  0,
       0, 1,  0, -i;
  // clang-format on
  return s * o;
}

/// max |S beta S^T - beta|.
inline double symplectic_residual(const Mat4& s) {
  const Mat4 b = beta_form();
  return max_abs(s * b * s.transpose() - b);
}

inline bool is_symplectic(const Mat4& s, double tol) {
  if (!(tol > 0)) throw InputError("is_symplectic: tolerance must be positive");
  return symplectic_residual(s) <= tol;
}

/// Throws NumericalError when S fails the symplectic condition. The
/// threshold is tol * max(1, |S|max^2).
inline void require_symplectic(const Mat4& s, const char* where,
                               double tol = tol::validation) {
  if (!s.allFinite()) {
    throw NumericalError(std::string(where) + ": matrix has non-finite entries");
  }
  const double res = symplectic_residual(s);
  if (res > scaled_tolerance(tol, s)) {
    std::ostringstream msg;
    msg << where << ": matrix is not symplectic (residual |S B S^T - B| = "
        << res << ")";
    throw NumericalError(msg.str());
  }
}

inline double unitarity_residual(const CMat2& u) {
  return max_abs(u.adjoint() * u - CMat2::Identity());
}

inline bool is_unitary(const CMat2& u, double tol = tol::structural) {
  return u.allFinite() && unitarity_residual(u) <= tol;
}

/// S(X, Y) = [[X, Y], [-Y, X]] for u = X - iY. Rejects non-unitary u.
inline Mat4 embed_u2(const U2Element& u, double tol = tol::structural) {
  if (!is_unitary(u, tol)) {
    std::ostringstream msg;
    msg << "embed_u2: matrix is not unitary (residual "
        << unitarity_residual(u) << ")";
    throw InputError(msg.str());
  }
  const Mat2 x = u.real();
  const Mat2 y = -u.imag();
  Mat4 s;
  s << x, y, -y, x;
  return s;
}

/// Inverse of embed_u2. Requires S orthogonal and of the [[X, Y], [-Y, X]]
/// block form within tol; the blocks are averaged before reading them off.
inline U2Element extract_u2(const Mat4& s, double tol = tol::structural) {
  const double ortho = max_abs(s * s.transpose() - Mat4::Identity());
  const double block = std::max(max_abs(s.topLeftCorner<2, 2>() - s.bottomRightCorner<2, 2>()),
                                max_abs(s.topRightCorner<2, 2>() + s.bottomLeftCorner<2, 2>()));
  if (!s.allFinite() || ortho > tol || block > tol) {
    std::ostringstream msg;
    msg << "extract_u2: matrix is not a passive U(2) element (orthogonality "
           "residual "
        << ortho << ", block-form residual " << block << ")";
    throw NumericalError(msg.str());
  }
  const Mat2 x = 0.5 * (s.topLeftCorner<2, 2>() + s.bottomRightCorner<2, 2>());
  const Mat2 y = 0.5 * (s.topRightCorner<2, 2>() - s.bottomLeftCorner<2, 2>());
  return x.cast<Complex>() - Complex{0.0, 1.0} * y.cast<Complex>();
}

/// S^(c) = Omega S Omega^dag, the action on (a1, a2, a1^dag, a2^dag).
inline CMat4 complex_form(const Mat4& s) {
  const CMat4 o = omega_map();
  return o * s.cast<Complex>() * o.adjoint();
}

}  // namespace sp4
