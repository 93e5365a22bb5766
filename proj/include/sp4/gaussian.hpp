#pragma once

// Gaussian two-mode states described by first and second moments, and the
// U(2)-invariant squeezing test: a state is squeezed iff the least
// eigenvalue of its variance matrix is below 1/2.

#include "sp4/classification.hpp"
#include "sp4/core.hpp"
#include "sp4/symplectic.hpp"

#include <cmath>
#include <sstream>

namespace sp4 {

/// Variances within this relative distance of 1/2 count as the boundary,
/// which is not squeezed.
inline constexpr double squeezing_boundary_tol = 1e-12;

inline bool below_vacuum(double variance) {
  return variance < 0.5 * (1.0 - squeezing_boundary_tol);
}

/// Least eigenvalue of V + (i/2) beta. Physical states have it >= 0.
inline double uncertainty_margin(const Mat4& v) {
  const CMat4 h = v.cast<Complex>() + Complex{0.0, 0.5} * beta_form().cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMat4> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

/// Symmetric, positive definite, and V + (i/2) beta >= 0.
class VarianceMatrix {
 public:
  static VarianceMatrix make(const Mat4& v, double tol = tol::structural) {
    VarianceMatrix m = quadratic_form(v, tol);
    if (!m.physical_) {
      std::ostringstream msg;
      msg << "variance matrix violates the uncertainty relation (least "
             "eigenvalue of V + i beta/2 is "
          << m.margin_ << ")";
      throw InputError(msg.str());
    }
    return m;
  }

  /// Only symmetry and positive definiteness are enforced. For witness
  /// computations on matrices that need not describe a quantum state;
  /// physical() reports whether the uncertainty relation holds.
  static VarianceMatrix quadratic_form(const Mat4& v, double tol = tol::structural) {
    if (!v.allFinite()) throw InputError("variance matrix has non-finite entries");
    const double scale = std::max(1.0, max_abs(v));
    if (max_abs(v - v.transpose()) > tol * scale) {
      throw InputError("variance matrix is not symmetric");
    }
    const Mat4 sym = 0.5 * (v + v.transpose());
    Eigen::SelfAdjointEigenSolver<Mat4> es(sym, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues()[0] > 0.0)) {
      throw InputError("variance matrix is not positive definite");
    }
    const double margin = uncertainty_margin(sym);
    return VarianceMatrix(sym, margin, margin >= -tol * scale);
  }

  const Mat4& matrix() const { return m_; }
  bool physical() const { return physical_; }

 private:
  VarianceMatrix(const Mat4& m, double margin, bool physical)
      : m_(m), margin_(margin), physical_(physical) {}
  Mat4 m_;
  double margin_;
  bool physical_;
};

struct GaussianState {
  Vec4 mean = Vec4::Zero();
  VarianceMatrix variance;
};

struct SqueezingVerdict {
  double least_eigenvalue = 0.0;
  bool squeezed = false;
  /// embed_u2(optimal_passive) V embed_u2(optimal_passive)^T has the least
  /// eigenvalue in its (0, 0) entry.
  U2Element optimal_passive = U2Element::Identity();
  /// Number of eigenvalues equal to the least one.
  int multiplicity = 1;
};

/// Mean sqrt(2)(Re a1, Re a2, Im a1, Im a2), variance I/2.
inline GaussianState coherent_state(Complex alpha1, Complex alpha2) {
  const double r2 = std::sqrt(2.0);
  return {r2 * Vec4(alpha1.real(), alpha2.real(), alpha1.imag(), alpha2.imag()),
          VarianceMatrix::make(0.5 * Mat4::Identity())};
}

/// beta = hbar omega / kT. Variance coth(beta/2)/2 times the identity.
inline GaussianState thermal_state(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InputError("thermal_state: beta must be positive and finite");
  }
  const double v = 0.5 / std::tanh(0.5 * beta);
  return {Vec4::Zero(), VarianceMatrix::make(v * Mat4::Identity())};
}

/// mean -> S mean, V -> S V S^T.
inline GaussianState apply_symplectic(const Mat4& s, const GaussianState& st,
                                      double tol = tol::validation) {
  require_symplectic(s, "apply_symplectic", tol);
  const Mat4 v = s * st.variance.matrix() * s.transpose();
  // The result is valid by construction; validate with a tolerance that
  // tracks the conditioning of S.
  return {s * st.mean,
          VarianceMatrix::make(0.5 * (v + v.transpose()),
                               std::max(tol::structural, scaled_tolerance(tol, s)))};
}

inline double least_eigenvalue(const VarianceMatrix& v) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(v.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

inline SqueezingVerdict squeezing_verdict(const VarianceMatrix& vm) {
  const Mat4& v = vm.matrix();
  Eigen::SelfAdjointEigenSolver<Mat4> es(v);
  const Vec4 ev = es.eigenvalues();
  const double ell = ev[0];

  SqueezingVerdict out;
  out.least_eigenvalue = ell;
  out.squeezed = below_vacuum(ell);
  out.multiplicity = 0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ev[i] - ell) <= 1e-9 * std::max(1.0, std::abs(ell))) {
      ++out.multiplicity;
    }
  }

  if (v(0, 0) - ell <= 1e-12 * std::max(1.0, max_abs(v))) {
    out.optimal_passive = U2Element::Identity();
    return out;
  }
  // The first row of S(X, Y) is (X00, X01, Y00, Y01), so a passive element
  // whose first row is the eigenvector e has u row 0 = (e0 - i e2, e1 - i e3).
  // Completing it to an SU(2) matrix gives the second row.
  const Vec4 e = es.eigenvectors().col(0).normalized();
  const Complex u00{e[0], -e[2]}, u01{e[1], -e[3]};
  U2Element u;
  u << u00, u01, -std::conj(u01), std::conj(u00);
  out.optimal_passive = u;
  return out;
}

/// U0(a, b) applied to the coherent state |alpha1, alpha2>.
inline GaussianState squeezed_coherent(Complex alpha1, Complex alpha2,
                                       const ClassLabel& label) {
  return apply_symplectic(representative_symplectic(label),
                          coherent_state(alpha1, alpha2));
}

/// The thermal state conjugated by U0(a, b).
inline GaussianState squeezed_thermal(double beta, const ClassLabel& label) {
  return apply_symplectic(representative_symplectic(label), thermal_state(beta));
}

/// Squeezed thermal states are squeezed once a + b exceeds ln coth(beta/2).
inline double thermal_squeeze_threshold(double beta) {
  if (!(beta > 0.0)) {
    throw InputError("thermal_squeeze_threshold: beta must be positive");
  }
  return -std::log(std::tanh(0.5 * beta));
}

/// Single-mode squeezed coherent wavefunction
/// e^(-a/4) pi^(-1/4) exp[i alpha Im(alpha) - (q e^(-a/2) - sqrt(2) alpha)^2 / 2].
inline Complex squeezed_mode_wavefunction(double q, Complex alpha, double a) {
  const Complex i{0.0, 1.0};
  const Complex d = q * std::exp(-0.5 * a) - std::sqrt(2.0) * alpha;
  return std::exp(-0.25 * a) / std::pow(pi, 0.25) *
         std::exp(i * alpha * alpha.imag() - 0.5 * d * d);
}

/// <q1, q2 | alpha; a, b> for the diagonal representative family. It is a
/// product of single-mode factors with squeeze parameters a - b and a + b.
inline Complex wavefunction(double q1, double q2, Complex alpha1, Complex alpha2,
                            const ClassLabel& label) {
  const ClassLabel c = ClassLabel::make(label.a, label.b);
  return squeezed_mode_wavefunction(q1, alpha1, c.a - c.b) *
         squeezed_mode_wavefunction(q2, alpha2, c.a + c.b);
}

}  // namespace sp4
