#pragma once

// Detection models and passive-optics synthesis: the heterodyne family
// U_H(psi), Mach-Zehnder settings, and quarter-half-quarter wave plates.

#include "sp4/core.hpp"
#include "sp4/gaussian.hpp"
#include "sp4/symplectic.hpp"

#include <cmath>
#include <vector>

namespace sp4 {

/// psi in [0, 4 pi).
struct HeterodyneSetting {
  double psi = 0.0;
};

/// Phases phi, psi1, psi2 and mixing angle theta in [0, pi/2].
struct MachZehnderParams {
  double phi = 0.0;
  double theta = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
};

/// Slow-axis angles of Q1, H, Q2, each in [0, pi).
struct WaveplateParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

struct WaveplateSynthesis {
  WaveplateParams params;
  /// u = e^(i global_phase) waveplate_forward(params).
  double global_phase = 0.0;
};

struct HeterodyneScan {
  double psi_min = 0.0;
  double var_min = 0.0;
  bool detects = false;
  /// (psi, variance) on a uniform grid over [0, 4 pi).
  std::vector<std::pair<double, double>> samples;
};

/// (1/sqrt2) [[e^(-i psi/2), e^(-i psi/2)], [-e^(i psi/2), e^(i psi/2)]].
inline U2Element heterodyne_unitary(const HeterodyneSetting& s) {
  const Complex m = std::polar(1.0 / std::sqrt(2.0), -0.5 * s.psi);
  const Complex p = std::polar(1.0 / std::sqrt(2.0), 0.5 * s.psi);
  U2Element u;
  u << m, m, -p, p;
  return u;
}

/// Coefficients w of q(psi) = w . xi, the measured quadrature.
inline Vec4 heterodyne_quadrature_vector(const HeterodyneSetting& s) {
  const double c = std::cos(0.5 * s.psi) / std::sqrt(2.0);
  const double d = std::sin(0.5 * s.psi) / std::sqrt(2.0);
  return Vec4(c, c, d, d);
}

/// w^T V w.
inline double quadrature_variance(const VarianceMatrix& v, const Vec4& w) {
  if (!(w.norm() > 0.0)) throw InputError("quadrature_variance: zero vector");
  return w.dot(v.matrix() * w);
}

/// Minimizes the heterodyne variance over psi. The variance is
/// A cos^2(psi/2) + B sin^2(psi/2) + 2C sin(psi/2) cos(psi/2), so the
/// minimum is the smaller eigenvalue of [[A, C], [C, B]]. The grid is kept
/// for output and as a cross-check.
inline HeterodyneScan heterodyne_scan(const VarianceMatrix& vm, int samples) {
  if (samples < 8) throw InputError("heterodyne_scan: need at least 8 samples");
  const Mat4& v = vm.matrix();
  // Exact halves of sums avoid the rounding of (1/sqrt2)^2.
  const double a = 0.5 * (v(0, 0) + v(1, 1) + 2.0 * v(0, 1));
  const double b = 0.5 * (v(2, 2) + v(3, 3) + 2.0 * v(2, 3));
  const double c = 0.5 * (v(0, 2) + v(0, 3) + v(1, 2) + v(1, 3));

  HeterodyneScan out;
  double half;  // psi/2 in [0, pi)
  if (c == 0.0) {
    if (a <= b) {
      half = 0.0;
      out.var_min = a;
    } else {
      half = 0.5 * pi;
      out.var_min = b;
    }
  } else {
    const double mean = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), c);
    out.var_min = mean - rad;
    // Eigenvector of the smaller eigenvalue: (c, var_min - a) or
    // (var_min - b, c); pick the better-conditioned one.
    double x, y;
    if (std::abs(out.var_min - a) > std::abs(out.var_min - b)) {
      x = c;
      y = out.var_min - a;
    } else {
      x = out.var_min - b;
      y = c;
    }
    half = wrap_positive(std::atan2(y, x), pi);
  }
  out.psi_min = 2.0 * half;
  out.detects = below_vacuum(out.var_min);

  out.samples.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double psi = 4.0 * pi * i / samples;
    out.samples.emplace_back(
        psi, quadrature_variance(vm, heterodyne_quadrature_vector({psi})));
  }
  return out;
}

inline U2Element mz_forward(const MachZehnderParams& p) {
  const Complex i{0.0, 1.0};
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  U2Element u;
  u << std::exp(i * (p.phi + p.psi1)) * c, -i * std::exp(-i * (p.phi - p.psi1)) * s,
      -i * std::exp(i * (p.phi + p.psi2)) * s, std::exp(-i * (p.phi - p.psi2)) * c;
  return u;
}

/// Mach-Zehnder settings realizing u. theta = arccos|u00|; when a phase is
/// undetermined (theta at 0 or pi/2) phi is set to 0.
inline MachZehnderParams mz_synthesize(const U2Element& u,
                                       double tol = tol::structural) {
  if (!is_unitary(u, tol)) throw InputError("mz_synthesize: matrix is not unitary");
  const Complex i{0.0, 1.0};
  const double c = std::min(1.0, std::abs(u(0, 0)));
  const double s = std::min(1.0, std::abs(u(0, 1)));

  MachZehnderParams p;
  p.theta = std::atan2(s, c);
  constexpr double degenerate = 1e-13;
  if (s <= degenerate) {
    p.phi = 0.0;
    p.psi1 = std::arg(u(0, 0));
    p.psi2 = std::arg(u(1, 1));
  } else if (c <= degenerate) {
    p.phi = 0.0;
    p.psi1 = std::arg(i * u(0, 1));
    p.psi2 = std::arg(i * u(1, 0));
  } else {
    // arg u00 = phi + psi1, arg(i u01) = psi1 - phi.
    const double sum = std::arg(u(0, 0));
    const double diff = std::arg(i * u(0, 1));
    p.phi = 0.5 * (sum - diff);
    p.psi1 = 0.5 * (sum + diff);
    // Take psi2 from whichever of the second-row entries is larger.
    if (std::abs(u(1, 0)) >= std::abs(u(1, 1))) {
      p.psi2 = std::arg(i * u(1, 0)) - p.phi;
    } else {
      p.psi2 = std::arg(u(1, 1)) + p.phi;
    }
  }
  p.phi = wrap_angle(p.phi);
  p.psi1 = wrap_angle(p.psi1);
  p.psi2 = wrap_angle(p.psi2);
  return p;
}

/// Jones matrix of a plate with retardance delta and slow axis at chi:
/// R(chi) diag(e^(-i delta/2), e^(i delta/2)) R(-chi).
inline U2Element waveplate(double delta, double chi) {
  Mat2 r;
  r << std::cos(chi), -std::sin(chi), std::sin(chi), std::cos(chi);
  const Complex i{0.0, 1.0};
  const CMat2 d = Eigen::Vector2cd(std::exp(-0.5 * i * delta), std::exp(0.5 * i * delta))
                      .asDiagonal();
  return r.cast<Complex>() * d * r.transpose().cast<Complex>();
}

/// Q(gamma) H(beta) Q(alpha), an SU(2) matrix.
inline U2Element waveplate_forward(const WaveplateParams& p) {
  return waveplate(0.5 * pi, p.gamma) * waveplate(pi, p.beta) *
         waveplate(0.5 * pi, p.alpha);
}

/// Plate angles and global phase with e^(i phase) Q(gamma) H(beta) Q(alpha) = u.
///
/// Writing R(x) = exp(-i x sigma_y), the gadget equals
/// -R(gamma) exp(i x sigma_x) R(-alpha) with x = 2 beta - gamma - alpha, a
/// Y-X-Y Euler product. Conjugating by the cyclic basis change
/// W = (1 - i sigma_x - i sigma_y - i sigma_z)/2 turns it into the standard
/// Z-Y-Z form whose angles are read off the matrix entries.
inline WaveplateSynthesis waveplate_synthesize(const U2Element& u, bool det_one,
                                               double tol = tol::structural) {
  if (!is_unitary(u, tol)) {
    throw InputError("waveplate_synthesize: matrix is not unitary");
  }
  const Complex det = u.determinant();
  if (det_one && std::abs(det - 1.0) > std::sqrt(tol)) {
    throw InputError("waveplate_synthesize: determinant is not 1");
  }
  const Complex i{0.0, 1.0};
  const double half_phase = 0.5 * std::arg(det);
  const U2Element v = -std::exp(-i * half_phase) * u;  // in SU(2)

  U2Element w;
  w << Complex{0.5, -0.5}, Complex{-0.5, -0.5}, Complex{0.5, -0.5}, Complex{0.5, 0.5};
  const U2Element z = w * v * w.adjoint();
  // z = exp(-i p sz) exp(-i q sy) exp(-i r sz)
  //   = [[e^(-i(p+r)) cos q, .], [e^(i(p-r)) sin q, .]]
  const double q = std::atan2(std::abs(z(1, 0)), std::abs(z(0, 0)));
  const double sum = std::abs(z(0, 0)) > 1e-14 ? -std::arg(z(0, 0)) : 0.0;
  const double diff = std::abs(z(1, 0)) > 1e-14 ? std::arg(z(1, 0)) : 0.0;
  const double p_angle = 0.5 * (sum + diff);
  const double r_angle = 0.5 * (sum - diff);

  const double gamma = p_angle;
  const double alpha = -r_angle;
  const double x = -q;
  const double beta = 0.5 * (x + gamma + alpha);

  WaveplateSynthesis out;
  out.params = {wrap_positive(alpha, pi), wrap_positive(beta, pi),
                wrap_positive(gamma, pi)};
  const U2Element f = waveplate_forward(out.params);
  out.global_phase = wrap_angle(std::arg((f.adjoint() * u).trace()));
  return out;
}

}  // namespace sp4
