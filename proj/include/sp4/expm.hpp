#pragma once

// Matrix exponential for small dense real matrices.
//
// Symmetric inputs go through the symmetric eigensolver, which keeps the
// result exactly symmetric positive definite. Everything else uses the
// degree-13 Pade approximant with scaling and squaring (Higham 2005).

#include "sp4/core.hpp"

#include <cmath>
#include <string>

namespace sp4 {

namespace detail {

template <int N>
Eigen::Matrix<double, N, N> expm_pade13(const Eigen::Matrix<double, N, N>& a) {
  using M = Eigen::Matrix<double, N, N>;
  static constexpr double b[] = {64764752532480000.0,
                                 32382376266240000.0,
                                 7771770303897600.0,
                                 1187353796428800.0,
                                 129060195264000.0,
                                 10559470521600.0,
                                 670442572800.0,
                                 33522128640.0,
                                 1323241920.0,
                                 40840800.0,
                                 960960.0,
                                 16380.0,
                                 182.0,
                                 1.0};
  static constexpr double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const M x = a / std::ldexp(1.0, squarings);

  const M id = M::Identity();
  const M x2 = x * x;
  const M x4 = x2 * x2;
  const M x6 = x4 * x2;

  const M u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 +
                    b[5] * x4 + b[3] * x2 + b[1] * id;
  const M u = x * u_inner;
  const M v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 +
              b[4] * x4 + b[2] * x2 + b[0] * id;

  M r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace detail

/// exp(m). Throws NumericalError for non-finite input or overflow.
template <int N>
Eigen::Matrix<double, N, N> expm(const Eigen::Matrix<double, N, N>& m) {
  if (!m.allFinite()) throw NumericalError("expm: non-finite input");

  Eigen::Matrix<double, N, N> r;
  if (m == m.transpose()) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(m);
    const auto& vecs = es.eigenvectors();
    const Eigen::Matrix<double, N, N> t =
        vecs * es.eigenvalues().array().exp().matrix().asDiagonal() * vecs.transpose();
    r = 0.5 * (t + t.transpose());
  } else {
    r = detail::expm_pade13<N>(m);
  }

  if (!r.allFinite()) {
    throw NumericalError("expm: result overflowed (input max-norm " +
                         std::to_string(max_abs(m)) + ")");
  }
  return r;
}

}  // namespace sp4
