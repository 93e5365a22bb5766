#include "sp4/detection.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace sp4;
using namespace sp4::testing;

namespace {

const Complex I{0.0, 1.0};

Mat4 diag4(double a, double b, double c, double d) { return Vec4(a, b, c, d).asDiagonal(); }

VarianceMatrix cs_state(double a) {
  return squeezed_coherent(0, 0, ClassLabel::make(a, 0)).variance;
}

}  // namespace

TEST(Heterodyne, UnitaryExamples) {
  U2Element e;
  e << 1, 1, -1, 1;
  e /= std::sqrt(2.0);
  EXPECT_LT(max_diff(heterodyne_unitary({0.0}), e), 1e-15);

  Rng rng(1);
  for (int n = 0; n < 100; ++n) {
    const double psi = uniform(rng, 0, 4 * pi);
    const U2Element u = heterodyne_unitary({psi});
    EXPECT_NEAR(std::abs(u.determinant() - 1.0), 0.0, 1e-15);
    EXPECT_LT(unitarity_residual(u), 1e-15);
    // |u00| = 1/sqrt2 for every psi, so the identity is never reached.
    EXPECT_GT(max_diff(u, U2Element::Identity()), 0.5);
  }
}

TEST(Heterodyne, QuadratureVector) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_diff(heterodyne_quadrature_vector({0}), Vec4(r, r, 0, 0)), 1e-15);
  EXPECT_LT(max_diff(heterodyne_quadrature_vector({pi}), Vec4(0, 0, r, r)), 1e-15);
  EXPECT_LT(max_diff(heterodyne_quadrature_vector({pi / 2}), Vec4(0.5, 0.5, 0.5, 0.5)), 1e-15);
}

TEST(Heterodyne, VarianceIsLeadingEntryAfterMixing) {
  // Row 0 of embed_u2(U_H(psi)) is the measured quadrature vector, so
  // w^T V w = (S V S^T)_00.
  Rng rng(2);
  for (int n = 0; n < 100; ++n) {
    const VarianceMatrix v =
        apply_symplectic(random_symplectic(rng, 0.6), coherent_state(0, 0)).variance;
    const double psi = uniform(rng, 0, 4 * pi);
    const Mat4 s = embed_u2(heterodyne_unitary({psi}));
    const Vec4 w = heterodyne_quadrature_vector({psi});
    EXPECT_LT(max_diff(Vec4(s.row(0).transpose()), w), 1e-15);
    EXPECT_NEAR(quadrature_variance(v, w), (s * v.matrix() * s.transpose())(0, 0),
                1e-12 * std::max(1.0, max_abs(v.matrix())));
  }
}

TEST(QuadratureVariance, Examples) {
  const VarianceMatrix vac = VarianceMatrix::make(0.5 * Mat4::Identity());
  Rng rng(3);
  for (int n = 0; n < 10; ++n) {
    Vec4 w(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    w.normalize();
    EXPECT_NEAR(quadrature_variance(vac, w), 0.5, 1e-15);
  }
  const double e = std::exp(1.0);
  EXPECT_NEAR(quadrature_variance(cs_state(1), heterodyne_quadrature_vector({pi})), 0.5 / e,
              1e-15);
  EXPECT_NEAR(quadrature_variance(cs_state(1), heterodyne_quadrature_vector({0})), 0.5 * e,
              1e-14);
  EXPECT_THROW(quadrature_variance(vac, Vec4::Zero()), InputError);
}

TEST(HeterodyneScan, Examples) {
  const HeterodyneScan vac = heterodyne_scan(VarianceMatrix::make(0.5 * Mat4::Identity()), 64);
  EXPECT_FALSE(vac.detects);
  EXPECT_DOUBLE_EQ(vac.var_min, 0.5);
  for (auto [psi, v] : vac.samples) EXPECT_NEAR(v, 0.5, 1e-15);

  const HeterodyneScan cs = heterodyne_scan(cs_state(1), 64);
  EXPECT_TRUE(cs.detects);
  EXPECT_NEAR(cs.psi_min, pi, 1e-14);
  EXPECT_NEAR(cs.var_min, 0.5 / std::exp(1.0), 1e-15);

  const VarianceMatrix witness = VarianceMatrix::quadratic_form(diag4(0.4, 0.7, 0.5, 0.5));
  const HeterodyneScan w = heterodyne_scan(witness, 64);
  EXPECT_FALSE(w.detects);
  EXPECT_NEAR(w.var_min, 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(least_eigenvalue(witness), 0.4);
  EXPECT_TRUE(squeezing_verdict(witness).squeezed);

  EXPECT_THROW(heterodyne_scan(witness, 4), InputError);
}

TEST(HeterodyneScan, ClosedFormMatchesDenseGrid) {
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    const VarianceMatrix v =
        apply_symplectic(random_symplectic(rng, 0.8), coherent_state(0, 0)).variance;
    const HeterodyneScan scan = heterodyne_scan(v, 4096);
    double grid_min = 1e300;
    for (auto [psi, var] : scan.samples) grid_min = std::min(grid_min, var);
    EXPECT_LE(scan.var_min, grid_min + 1e-12);
    EXPECT_NEAR(scan.var_min, grid_min, 1e-4 * std::max(1.0, grid_min));
    EXPECT_NEAR(quadrature_variance(v, heterodyne_quadrature_vector({scan.psi_min})),
                scan.var_min, 1e-11 * std::max(1.0, scan.var_min));
    EXPECT_GE(scan.psi_min, 0.0);
    EXPECT_LT(scan.psi_min, 4 * pi);
    // Never below the U(2)-invariant minimum.
    EXPECT_GE(scan.var_min, least_eigenvalue(v) - 1e-12);
  }
}

TEST(HeterodyneScan, DiagonalRepresentativeMinimum) {
  // For S0(a, b) on the vacuum the scan minimum is e^-a cosh(b) / 2 at
  // psi = pi: below 1/2 for most of the octant, but above l(V) unless b = 0.
  Rng rng(10);
  for (int n = 0; n < 200; ++n) {
    const ClassLabel c = random_label(rng, 3.0);
    const VarianceMatrix v = squeezed_coherent(0, 0, c).variance;
    const HeterodyneScan scan = heterodyne_scan(v, 64);
    const double expected = 0.5 * std::exp(-c.a) * std::cosh(c.b);
    EXPECT_NEAR(scan.var_min, expected, 1e-14);
    EXPECT_EQ(scan.detects, below_vacuum(expected));
    EXPECT_GE(scan.var_min, least_eigenvalue(v) - 1e-15);
  }
  const HeterodyneScan cs = heterodyne_scan(squeezed_coherent(0, 0, ClassLabel::make(1.2, 0)).variance, 64);
  EXPECT_NEAR(cs.var_min, 0.5 * std::exp(-1.2), 1e-15);
}

TEST(HeterodyneScan, PhysicalWitness) {
  // A physical state squeezed in q1 that the heterodyne family misses.
  const VarianceMatrix v = VarianceMatrix::make(diag4(0.4, 0.7, 0.625, 0.5));
  EXPECT_TRUE(v.physical());
  EXPECT_TRUE(squeezing_verdict(v).squeezed);
  EXPECT_FALSE(heterodyne_scan(v, 64).detects);
}

TEST(MachZehnder, ForwardExamples) {
  EXPECT_LT(max_diff(mz_forward({}), U2Element::Identity()), 1e-15);
  MachZehnderParams p;
  p.theta = pi / 2;
  U2Element e;
  e << 0, -I, -I, 0;
  EXPECT_LT(max_diff(mz_forward(p), e), 1e-15);

  Rng rng(5);
  for (int n = 0; n < 50; ++n) {
    MachZehnderParams q{uniform(rng, -pi, pi), uniform(rng, 0, pi / 2), uniform(rng, -pi, pi),
                        0};
    q.psi2 = -q.psi1;
    EXPECT_NEAR(std::abs(mz_forward(q).determinant() - 1.0), 0.0, 1e-14);
  }
}

TEST(MachZehnder, SynthesizeExamples) {
  const MachZehnderParams id = mz_synthesize(U2Element::Identity());
  EXPECT_EQ(id.phi, 0.0);
  EXPECT_EQ(id.theta, 0.0);
  EXPECT_EQ(id.psi1, 0.0);
  EXPECT_EQ(id.psi2, 0.0);

  U2Element x;
  x << 0, -I, -I, 0;
  const MachZehnderParams p = mz_synthesize(x);
  EXPECT_NEAR(p.theta, pi / 2, 1e-15);
  EXPECT_NEAR(p.phi, 0.0, 1e-15);
  EXPECT_NEAR(p.psi1, 0.0, 1e-15);
  EXPECT_NEAR(p.psi2, 0.0, 1e-15);

  const U2Element uh = heterodyne_unitary({0});
  EXPECT_LT(max_diff(mz_forward(mz_synthesize(uh)), uh), 1e-10);

  U2Element bad = U2Element::Identity();
  bad(1, 0) = 0.3;
  EXPECT_THROW(mz_synthesize(bad), InputError);
}

TEST(MachZehnder, RandomRoundTrip) {
  Rng rng(6);
  for (int n = 0; n < 1000; ++n) {
    const U2Element u = random_u2(rng);
    const MachZehnderParams p = mz_synthesize(u);
    EXPECT_LT(max_diff(mz_forward(p), u), 1e-12);
    EXPECT_GE(p.theta, 0.0);
    EXPECT_LE(p.theta, pi / 2);
  }
  // Diagonal and anti-diagonal unitaries.
  for (int n = 0; n < 50; ++n) {
    const Complex a = std::polar(1.0, uniform(rng, -pi, pi));
    const Complex b = std::polar(1.0, uniform(rng, -pi, pi));
    U2Element d, o;
    d << a, 0, 0, b;
    o << 0, a, b, 0;
    EXPECT_LT(max_diff(mz_forward(mz_synthesize(d)), d), 1e-14);
    EXPECT_LT(max_diff(mz_forward(mz_synthesize(o)), o), 1e-14);
  }
}

TEST(Waveplate, ForwardExamples) {
  U2Element h;
  h << -I, 0, 0, I;
  EXPECT_LT(max_diff(waveplate(pi, 0), h), 1e-15);
  EXPECT_LT(max_diff(waveplate(pi / 2, 0) * waveplate(pi / 2, 0), waveplate(pi, 0)), 1e-15);
  EXPECT_LT(max_diff(waveplate_forward({0, 0, 0}), -U2Element::Identity()), 1e-15);

  Rng rng(7);
  for (int n = 0; n < 50; ++n) {
    const WaveplateParams p{uniform(rng, 0, pi), uniform(rng, 0, pi), uniform(rng, 0, pi)};
    const U2Element f = waveplate_forward(p);
    EXPECT_NEAR(std::abs(f.determinant() - 1.0), 0.0, 1e-14);
    // Each plate angle only matters modulo pi.
    const WaveplateParams q{p.alpha + pi, p.beta - pi, p.gamma + pi};
    EXPECT_LT(max_diff(waveplate_forward(q), f), 1e-14);
  }
}

TEST(Waveplate, SynthesizeExamples) {
  const U2Element u = waveplate_forward({0.3, 1.1, -0.4});
  const WaveplateSynthesis s = waveplate_synthesize(u, true);
  EXPECT_LT(max_diff(waveplate_forward(s.params), u), 1e-12);
  EXPECT_NEAR(s.global_phase, 0.0, 1e-12);

  const WaveplateSynthesis m = waveplate_synthesize(-U2Element::Identity(), true);
  EXPECT_LT(max_diff(waveplate_forward(m.params), -U2Element::Identity()), 1e-12);

  EXPECT_THROW(waveplate_synthesize(I * U2Element::Identity(), true), InputError);
  const WaveplateSynthesis g = waveplate_synthesize(I * U2Element::Identity(), false);
  EXPECT_LT(max_diff(std::polar(1.0, g.global_phase) * waveplate_forward(g.params),
                     I * U2Element::Identity()),
            1e-12);
}

TEST(Waveplate, RandomRoundTrip) {
  Rng rng(8);
  for (int n = 0; n < 1000; ++n) {
    const U2Element su = random_su2(rng);
    const WaveplateSynthesis s = waveplate_synthesize(su, true);
    EXPECT_LT(max_diff(std::polar(1.0, s.global_phase) * waveplate_forward(s.params), su), 1e-12);
    // On SU(2) the phase is 0 or pi.
    EXPECT_NEAR(std::abs(std::sin(s.global_phase)), 0.0, 1e-10);
    for (double x : {s.params.alpha, s.params.beta, s.params.gamma}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LT(x, pi);
    }
    const U2Element u = random_u2(rng);
    const WaveplateSynthesis t = waveplate_synthesize(u, false);
    EXPECT_LT(max_diff(std::polar(1.0, t.global_phase) * waveplate_forward(t.params), u), 1e-12);
  }
}

TEST(Synthesis, EndToEndMakesSqueezingManifest) {
  Rng rng(9);
  for (int n = 0; n < 100; ++n) {
    const ClassLabel c = random_label(rng, 2.0);
    const GaussianState hidden =
        apply_symplectic(embed_u2(random_u2(rng)), squeezed_coherent(0, 0, c));
    const SqueezingVerdict v = squeezing_verdict(hidden.variance);
    const U2Element mz = mz_forward(mz_synthesize(v.optimal_passive));
    const Mat4 k = embed_u2(mz);
    const double lead = (k * hidden.variance.matrix() * k.transpose())(0, 0);
    EXPECT_NEAR(lead, v.least_eigenvalue, 1e-9);
    EXPECT_NEAR(lead, 0.5 * std::exp(-(c.a + c.b)), 1e-9);

    const WaveplateSynthesis w = waveplate_synthesize(v.optimal_passive, false);
    const Mat4 kw = embed_u2(std::polar(1.0, w.global_phase) * waveplate_forward(w.params));
    EXPECT_NEAR((kw * hidden.variance.matrix() * kw.transpose())(0, 0), v.least_eigenvalue,
                1e-9);
  }
}
