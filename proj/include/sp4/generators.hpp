#pragma once

// The ten metaplectic generators Q, J_r, K_r, L_r and their 4x4 matrices in
// the quadrature representation.
//
// Each generator is a hermitian quadratic X = 1/2 xi^T G_X xi + const. With
// U(S)^-1 xi U(S) = S xi, the one-parameter group exp(i t X) acts on xi as
// exp(t g_X) with g_X = -beta G_X. The map iX -> g_X is a Lie algebra
// homomorphism, so [X, Y] = i Z becomes [g_X, g_Y] = -g_Z.

#include "sp4/core.hpp"
#include "sp4/symplectic.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace sp4 {

enum class Generator { Q, J1, J2, J3, K1, K2, K3, L1, L2, L3 };

inline constexpr std::array<Generator, 10> all_generators = {
    Generator::Q,  Generator::J1, Generator::J2, Generator::J3, Generator::K1,
    Generator::K2, Generator::K3, Generator::L1, Generator::L2, Generator::L3};

inline constexpr std::array<std::string_view, 10> generator_names = {
    "Q", "J1", "J2", "J3", "K1", "K2", "K3", "L1", "L2", "L3"};

inline std::string_view name(Generator g) {
  return generator_names[static_cast<std::size_t>(g)];
}

inline std::optional<Generator> find_generator(std::string_view n) {
  for (std::size_t i = 0; i < generator_names.size(); ++i) {
    if (generator_names[i] == n) return all_generators[i];
  }
  return std::nullopt;
}

inline Generator parse_generator(std::string_view n) {
  if (auto g = find_generator(n)) return *g;
  throw InputError("unknown generator name '" + std::string(n) + "'");
}

/// Generators spanning the passive u(2) subalgebra.
inline bool is_compact(Generator g) {
  return g == Generator::Q || g == Generator::J1 || g == Generator::J2 ||
         g == Generator::J3;
}

/// Coefficients A with X = sum_ab A_ab xi^(c)_a xi^(c)_b + const, where
/// xi^(c) = (a1, a2, a1^dag, a2^dag).
inline CMat4 ladder_coefficients(Generator g) {
  constexpr int a1 = 0, a2 = 1, c1 = 2, c2 = 3;
  const Complex i{0.0, 1.0};
  CMat4 c = CMat4::Zero();
  switch (g) {
    case Generator::Q:  // (a1^dag a1 + a2^dag a2 + 1) / 2
      c(c1, a1) = 0.5;
      c(c2, a2) = 0.5;
      break;
    case Generator::J1:
      c(c1, a2) = 0.5;
      c(c2, a1) = 0.5;
      break;
    case Generator::J2:
      c(c2, a1) = 0.5 * i;
      c(c1, a2) = -0.5 * i;
      break;
    case Generator::J3:
      c(c1, a1) = 0.5;
      c(c2, a2) = -0.5;
      break;
    case Generator::K1:
      c(c1, c1) = 0.25;
      c(a1, a1) = 0.25;
      c(c2, c2) = -0.25;
      c(a2, a2) = -0.25;
      break;
    case Generator::K2:
      c(c1, c1) = -0.25 * i;
      c(a1, a1) = 0.25 * i;
      c(c2, c2) = -0.25 * i;
      c(a2, a2) = 0.25 * i;
      break;
    case Generator::K3:
      c(c1, c2) = -0.5;
      c(a1, a2) = -0.5;
      break;
    case Generator::L1:
      c(c1, c1) = 0.25 * i;
      c(a1, a1) = -0.25 * i;
      c(c2, c2) = -0.25 * i;
      c(a2, a2) = 0.25 * i;
      break;
    case Generator::L2:
      c(c1, c1) = 0.25;
      c(a1, a1) = 0.25;
      c(c2, c2) = 0.25;
      c(a2, a2) = 0.25;
      break;
    case Generator::L3:
      c(c1, c2) = -0.5 * i;
      c(a1, a2) = 0.5 * i;
      break;
  }
  return c;
}

/// Symmetric G_X with X = 1/2 xi^T G_X xi + const.
inline Mat4 quadratic_form_of_generator(Generator g) {
  const CMat4 o = omega_map();
  const CMat4 m = o.transpose() * ladder_coefficients(g) * o;
  const CMat4 sym = m + m.transpose();
  // Hermiticity of X forces the imaginary part to cancel.
  if (max_abs(sym.imag()) > 1e-14) {
    throw NumericalError("quadratic form of " + std::string(name(g)) +
                         " is not real");
  }
  return sym.real();
}

inline Mat4 quadratic_form_of_generator(std::string_view n) {
  return quadratic_form_of_generator(parse_generator(n));
}

/// g_X = -beta G_X.
inline Mat4 generator_matrix(Generator g) {
  return -beta_form() * quadratic_form_of_generator(g);
}

inline Mat4 generator_matrix(std::string_view n) {
  return generator_matrix(parse_generator(n));
}

/// All ten generator matrices, indexed like all_generators.
struct GeneratorBasis {
  std::array<Mat4, 10> g;

  GeneratorBasis() {
    for (std::size_t i = 0; i < all_generators.size(); ++i) {
      g[i] = generator_matrix(all_generators[i]);
    }
  }

  const Mat4& operator[](Generator x) const {
    return g[static_cast<std::size_t>(x)];
  }
};

inline const GeneratorBasis& generator_basis() {
  static const GeneratorBasis basis;
  return basis;
}

/// qc g_Q + j.g_J + k.g_K + l.g_L.
inline Mat4 algebra_element(double qc, const Vec3& j, const Vec3& k,
                            const Vec3& l) {
  const auto& b = generator_basis();
  Mat4 m = qc * b[Generator::Q];
  for (int r = 0; r < 3; ++r) {
    m += j[r] * b.g[1 + r] + k[r] * b.g[4 + r] + l[r] * b.g[7 + r];
  }
  return m;
}

/// Rotation R(alpha) acting on k and l under conjugation by
/// exp(alpha . g_J): R_rs = d_rs cos a + alpha_r alpha_s (1 - cos a)/a^2
/// + eps_rst alpha_t sin(a)/a.
inline Mat3 su2_rotation(const Vec3& alpha) {
  const double a = alpha.norm();
  if (a == 0.0) return Mat3::Identity();
  Mat3 cross;
  // eps_rst alpha_t
  cross << 0, alpha.z(), -alpha.y(),
      -alpha.z(), 0, alpha.x(),
      alpha.y(), -alpha.x(), 0;
  return std::cos(a) * Mat3::Identity() +
         (1.0 - std::cos(a)) / (a * a) * alpha * alpha.transpose() +
         std::sin(a) / a * cross;
}

/// Inverse of su2_rotation: the vector alpha with |alpha| in [0, pi].
inline Vec3 su2_angles(const Mat3& rot) {
  const Eigen::AngleAxisd aa(rot);
  // su2_rotation(alpha) is the transpose of the usual right-handed rotation
  // about alpha, hence the sign.
  return -aa.angle() * aa.axis();
}

}  // namespace sp4
