#pragma once

// U(2)-invariant classification of two-mode squeezing transformations.
//
// A squeezing transformation exp(i(k.K + l.L)) is labelled by the pair
// (a, b), a >= b >= 0, fixed by det M = a^2 b^2 and tr M = a^2 + b^2 where M
// is the Gram matrix of (k, l). The class representative is the diagonal
// matrix S0(a, b) = diag(e^((a-b)/2), e^((a+b)/2), e^(-(a-b)/2), e^(-(a+b)/2)).

#include "sp4/core.hpp"
#include "sp4/expm.hpp"
#include "sp4/generators.hpp"
#include "sp4/polar.hpp"
#include "sp4/symplectic.hpp"

#include <cmath>
#include <sstream>

namespace sp4 {

struct SqueezeVectors {
  Vec3 k = Vec3::Zero();
  Vec3 l = Vec3::Zero();

  bool is_zero() const { return k.isZero(0.0) && l.isZero(0.0); }
};

/// (k.k, k.l; k.l, l.l)
using GramMatrix = Mat2;

struct InvariantPair {
  double i1 = 0.0;  // det M = |k x l|^2
  double i2 = 0.0;  // tr M = |k|^2 + |l|^2
};

/// Below this a class label is treated as the identity (no squeeze).
inline constexpr double no_squeeze_threshold = 1e-12;

struct ClassLabel {
  double a = 0.0;
  double b = 0.0;
  /// The origin (0, 0) is not a squeezing class; it marks the identity.
  bool no_squeeze = true;

  static ClassLabel make(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw InputError("class label must be finite");
    }
    if (b < 0.0 || a < b) {
      std::ostringstream msg;
      msg << "class label requires a >= b >= 0, got (" << a << ", " << b << ")";
      throw InputError(msg.str());
    }
    return {a, b, a <= no_squeeze_threshold};
  }
};

inline GramMatrix gram_matrix(const SqueezeVectors& v) {
  GramMatrix m;
  m << v.k.dot(v.k), v.k.dot(v.l), v.k.dot(v.l), v.l.dot(v.l);
  return m;
}

inline InvariantPair invariants(const SqueezeVectors& v) {
  return {v.k.cross(v.l).squaredNorm(), v.k.squaredNorm() + v.l.squaredNorm()};
}

/// Solves a^2 b^2 = i1, a^2 + b^2 = i2 with a >= b >= 0. i2 = 0 yields the
/// flagged identity label.
inline ClassLabel class_from_invariants(const InvariantPair& p) {
  if (!(p.i1 >= 0.0) || !(p.i2 >= 0.0)) {
    throw InputError("invariants must be non-negative");
  }
  if (p.i2 == 0.0) return {};
  const double disc = p.i2 * p.i2 - 4.0 * p.i1;
  if (disc < -1e-12 * p.i2 * p.i2) {
    throw InputError("invariants violate i2^2 >= 4 i1");
  }
  const double a2 = 0.5 * (p.i2 + std::sqrt(std::max(disc, 0.0)));
  const double b2 = p.i1 / a2;
  const double a = std::sqrt(a2);
  const double b = std::min(std::sqrt(b2), a);
  return ClassLabel::make(a, b);
}

/// Class of exp(i(k.K + l.L)) from the eigenvalues a^2 >= b^2 of the Gram
/// matrix. Unlike class_from_invariants this stays accurate near a = b,
/// where recovering the roots from det and trace loses half the digits.
inline ClassLabel class_from_vectors(const SqueezeVectors& v) {
  if (v.is_zero()) return {};
  const GramMatrix m = gram_matrix(v);
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double rad = std::hypot(0.5 * (m(0, 0) - m(1, 1)), m(0, 1));
  const double a2 = mean + rad;
  // The smaller root via det / a2 avoids cancellation when b << a.
  const double b2 = std::max(0.0, v.k.cross(v.l).squaredNorm() / a2);
  const double a = std::sqrt(a2);
  return ClassLabel::make(a, std::min(std::sqrt(b2), a));
}

/// Conjugation by exp(theta g_Q): (k, l) -> (cos k - sin l, sin k + cos l).
inline SqueezeVectors rotate_u1(const SqueezeVectors& v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.k - s * v.l, s * v.k + c * v.l};
}

/// Conjugation by exp(alpha . g_J): both vectors rotate by R(alpha).
inline SqueezeVectors rotate_su2(const SqueezeVectors& v, const Mat3& rot) {
  return {rot * v.k, rot * v.l};
}

struct CanonicalForm {
  double theta = 0.0;
  Mat3 rotation = Mat3::Identity();
  ClassLabel label;
};

namespace detail {

/// Proper rotation of least angle taking unit vector `from` to unit `to`.
inline Mat3 minimal_rotation(const Vec3& from, const Vec3& to) {
  const double c = from.dot(to);
  if (c < -1.0 + 1e-12) {
    // Antiparallel: half turn about any axis perpendicular to `from`.
    Vec3 axis = from.unitOrthogonal();
    return Eigen::AngleAxisd(pi, axis).toRotationMatrix();
  }
  return Eigen::Quaterniond::FromTwoVectors(from, to).toRotationMatrix();
}

}  // namespace detail

/// Finds theta and a rotation taking (k, l) to ((0, a, 0), (b, 0, 0)): first
/// rotate_u1 by theta, then rotate_su2 by the rotation.
inline CanonicalForm canonicalize(const SqueezeVectors& v) {
  if (v.is_zero()) throw InputError("canonicalize: zero squeeze vectors");

  const GramMatrix m = gram_matrix(v);
  // Diagonalizes M with the larger eigenvalue first. Ties give theta = 0.
  const double theta = 0.5 * std::atan2(-2.0 * m(0, 1), m(0, 0) - m(1, 1));
  const SqueezeVectors w = rotate_u1(v, theta);

  const double a = w.k.norm();
  const double b = w.l.norm();
  const Vec3 e2 = Vec3::UnitY();

  Mat3 rot;
  const Vec3 kh = w.k / a;
  if (b <= 1e-12 * a) {
    rot = detail::minimal_rotation(kh, e2);
  } else {
    // Orthogonalize l against k to absorb rounding, then send k -> e2, l -> e1.
    Vec3 lh = w.l - w.l.dot(kh) * kh;
    lh.normalize();
    rot.row(0) = lh.transpose();
    rot.row(1) = kh.transpose();
    rot.row(2) = lh.cross(kh).transpose();
  }
  return {theta, rot, class_from_vectors(v)};
}

/// The passive matrix K with K * squeeze_symplectic(v) * K^T equal to the
/// class representative, built from a canonical form.
inline Mat4 canonical_passive(const CanonicalForm& c) {
  const auto& g = generator_basis();
  const Vec3 alpha = su2_angles(c.rotation);
  const Mat4 su2 = expm<4>(alpha.x() * g[Generator::J1] +
                           alpha.y() * g[Generator::J2] +
                           alpha.z() * g[Generator::J3]);
  const Mat4 u1 = expm<4>(c.theta * g[Generator::Q]);
  return su2 * u1;
}

/// exp(k.g_K + l.g_L), a symmetric positive definite symplectic matrix.
inline Mat4 squeeze_symplectic(const SqueezeVectors& v) {
  return expm<4>(algebra_element(0.0, Vec3::Zero(), v.k, v.l));
}

inline Mat4 representative_symplectic(const ClassLabel& label) {
  const ClassLabel c = ClassLabel::make(label.a, label.b);
  const double d = 0.5 * (c.a - c.b), s = 0.5 * (c.a + c.b);
  return Vec4(std::exp(d), std::exp(s), std::exp(-d), std::exp(-s)).asDiagonal();
}

/// Class of a positive squeezing matrix from its eigenvalues. With the
/// eigenvalues paired reciprocally as mu1 >= mu2 >= 1, a = ln(mu1 mu2) and
/// b = ln(mu1 / mu2).
inline ClassLabel class_of_positive(const Mat4& p, double tol = tol::validation) {
  if (!p.allFinite()) throw NumericalError("class_of_positive: non-finite input");
  const double asym = max_abs(p - p.transpose());
  if (asym > tol * std::max(1.0, max_abs(p))) {
    throw NumericalError("class_of_positive: matrix is not symmetric");
  }
  require_symplectic(p, "class_of_positive", tol);

  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (p + p.transpose()),
                                         Eigen::EigenvaluesOnly);
  const Vec4 ev = es.eigenvalues();  // ascending
  if (!(ev[0] > 0.0)) {
    throw NumericalError("class_of_positive: matrix is not positive definite");
  }
  // Reciprocal pairs (ev3, ev0) and (ev2, ev1); symmetrizing each pair keeps
  // the logs consistent with a >= b >= 0 under rounding.
  const double log_mu1 = 0.5 * (std::log(ev[3]) - std::log(ev[0]));
  const double log_mu2 = std::max(0.0, 0.5 * (std::log(ev[2]) - std::log(ev[1])));
  const double a = log_mu1 + log_mu2;
  const double b = std::max(0.0, log_mu1 - log_mu2);
  return ClassLabel::make(a, std::min(a, b));
}

/// Tr(P) and Tr(P^2) predicted for a class: 2[cosh((a-b)/2) + cosh((a+b)/2)]
/// and 2[cosh(a-b) + cosh(a+b)].
inline std::pair<double, double> class_traces(const ClassLabel& c) {
  return {2.0 * (std::cosh(0.5 * (c.a - c.b)) + std::cosh(0.5 * (c.a + c.b))),
          2.0 * (std::cosh(c.a - c.b) + std::cosh(c.a + c.b))};
}

struct Classification {
  ClassLabel label;
  U2Element passive;
};

/// Polar-decomposes S and classifies its positive factor.
inline Classification classify_symplectic(const Mat4& s,
                                          double tol = tol::validation) {
  const PolarFactors f = polar_decompose(s, tol);
  const double ptol = std::max(tol::structural, scaled_tolerance(tol, s));
  return {class_of_positive(f.positive, tol), extract_u2(f.passive, ptol)};
}

/// exp(z a1^dag a2^dag - z* a1 a2): k = -2(0, 0, Im z), l = 2(0, 0, Re z).
inline SqueezeVectors caves_schumaker_vectors(Complex z) {
  return {Vec3(0.0, 0.0, -2.0 * z.imag()), Vec3(0.0, 0.0, 2.0 * z.real())};
}

/// Single-mode squeeze of the dressed mode alpha a1 + beta a2:
/// k + il = 2z(-i(a*^2 - b*^2), a*^2 + b*^2, 2i a* b*).
inline SqueezeVectors single_mode_vectors(Complex z, Complex alpha, Complex beta,
                                          double tol = tol::structural) {
  const double n = std::norm(alpha) + std::norm(beta);
  if (!(std::abs(n - 1.0) <= tol)) {
    std::ostringstream msg;
    msg << "single_mode_vectors: |alpha|^2 + |beta|^2 = " << n << ", expected 1";
    throw InputError(msg.str());
  }
  const Complex i{0.0, 1.0};
  const Complex ac = std::conj(alpha), bc = std::conj(beta);
  const Complex c[3] = {2.0 * z * (-i * (ac * ac - bc * bc)),
                        2.0 * z * (ac * ac + bc * bc),
                        2.0 * z * (2.0 * i * ac * bc)};
  return {Vec3(c[0].real(), c[1].real(), c[2].real()),
          Vec3(c[0].imag(), c[1].imag(), c[2].imag())};
}

inline void require_positive_squeeze(const Mat4& p, const char* where,
                                     double tol) {
  if (max_abs(p - p.transpose()) > tol * std::max(1.0, max_abs(p))) {
    throw InputError(std::string(where) + ": factor is not symmetric");
  }
  require_symplectic(p, where, tol);
  Eigen::SelfAdjointEigenSolver<Mat4> es(p, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()[0] > 0.0)) {
    throw InputError(std::string(where) + ": factor is not positive definite");
  }
}

/// Class of the positive polar factor of P1 P2. The label depends on the
/// particular factors, not only on their classes.
inline ClassLabel product_class(const Mat4& p1, const Mat4& p2,
                                double tol = tol::validation) {
  require_positive_squeeze(p1, "product_class", tol);
  require_positive_squeeze(p2, "product_class", tol);
  const Mat4 prod = p1 * p2;
  return class_of_positive(polar_decompose(prod, tol).positive, tol);
}

/// Relative residuals of the two product trace equations
/// 2[cosh(a-b) + cosh(a+b)] = Tr(M M^T) and
/// 2[cosh 2(a-b) + cosh 2(a+b)] = Tr((M M^T)^2) for M = P1 P2.
inline std::pair<double, double> product_trace_residuals(const ClassLabel& c,
                                                         const Mat4& p1,
                                                         const Mat4& p2) {
  const Mat4 prod = p1 * p2;
  const Mat4 mmt = prod * prod.transpose();
  const double t1 = mmt.trace();
  const double t2 = (mmt * mmt).trace();
  const double e1 = 2.0 * (std::cosh(c.a - c.b) + std::cosh(c.a + c.b));
  const double e2 = 2.0 * (std::cosh(2.0 * (c.a - c.b)) + std::cosh(2.0 * (c.a + c.b)));
  return {std::abs(e1 - t1) / t1, std::abs(e2 - t2) / t2};
}

/// 1 - b/a: 1 for the Caves-Schumaker line b = 0, 0 on the single-mode line
/// a = b.
inline double two_mode_character(const ClassLabel& c) {
  if (!(c.a > 0.0)) throw InputError("two_mode_character: requires a > 0");
  return 1.0 - c.b / c.a;
}

}  // namespace sp4
