#include "oracles.hpp"

#include <cdual/dual.hpp>
#include <cdual/models.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cdual;

TEST(WeightedShift, MatrixEntries) {
  const ShiftTruncation s = weighted_shift(3);
  ASSERT_EQ(s.matrix.rows(), 6);
  EXPECT_EQ(s.matrix(0, 1), Complex(1.0));
  EXPECT_EQ(s.matrix(2, 3), Complex(2.0));
  EXPECT_EQ(s.matrix(4, 5), Complex(3.0));
  EXPECT_DOUBLE_EQ(s.matrix.norm(), std::sqrt(14.0));
  EXPECT_THROW(weighted_shift(0), InvalidArgument);
}

TEST(WeightedShift, DualHasReciprocalPattern) {
  for (int n : {1, 5, 50}) {
    const ShiftTruncation s = weighted_shift(n);
    for (DualRoute r : {DualRoute::product, DualRoute::adjoint_pinv, DualRoute::regularized}) {
      const ShiftDualPatternError e = shift_dual_pattern_error(dual(s.matrix, r).dual, n);
      EXPECT_LE(e.pattern_error, 1e-12);
      EXPECT_LE(e.off_pattern, 1e-14);
    }
  }
  EXPECT_THROW(shift_dual_pattern_error(ComplexMatrix::Zero(3, 3), 2), ShapeError);
}

TEST(WeightedShift, PatternErrorDetectsWrongDual) {
  const ShiftTruncation s = weighted_shift(4);
  const ShiftDualPatternError e = shift_dual_pattern_error(s.matrix, 4);
  EXPECT_NEAR(e.pattern_error, 4.0 - 0.25, 1e-15);
}

TEST(Quadrature, TrapezoidIntegratesLinearExactly) {
  const Quadrature q = make_quadrature(QuadratureRule::trapezoid, 0.0, 2.0, 5);
  EXPECT_NEAR(q.weights.sum(), 2.0, 1e-15);
  EXPECT_NEAR(q.weights.dot(q.nodes), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(q.nodes(0), 0.0);
  EXPECT_DOUBLE_EQ(q.nodes(4), 2.0);
}

TEST(Quadrature, GaussLegendreExactToDegreeTwoMMinusOne) {
  for (int m : {2, 3, 7, 20}) {
    const Quadrature q = make_quadrature(QuadratureRule::gauss_legendre, -1.0, 3.0, m);
    for (int d = 0; d <= 2 * m - 1; ++d) {
      double got = 0.0;
      for (int i = 0; i < m; ++i) got += q.weights(i) * std::pow(q.nodes(i), d);
      const double exact = (std::pow(3.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);
      EXPECT_NEAR(got, exact, 1e-12 * (1 + std::abs(exact))) << "m=" << m << " d=" << d;
    }
  }
}

TEST(Quadrature, RejectsBadParameters) {
  EXPECT_THROW(make_quadrature(QuadratureRule::trapezoid, 0.0, 1.0, 1), InvalidArgument);
  EXPECT_THROW(make_quadrature(QuadratureRule::gauss_legendre, 1.0, 1.0, 4), InvalidArgument);
  EXPECT_THROW(parse_quadrature_rule("simpson"), InvalidArgument);
  EXPECT_EQ(parse_quadrature_rule("gauss_legendre"), QuadratureRule::gauss_legendre);
}

TEST(Kernels, BuiltinsEvaluate) {
  EXPECT_EQ(kernel_function("min")(0.3, 0.7), Complex(0.3));
  EXPECT_EQ(kernel_function("rank1")(2.0, 3.0), Complex(6.0));
  EXPECT_EQ(kernel_function("expr:zero")(2.0, 3.0), Complex(0.0));
  EXPECT_NEAR(kernel_function("expr:exp_abs")(0.0, 1.0).real(), std::exp(-1.0), 1e-15);
  EXPECT_THROW(kernel_function("sinc"), InvalidArgument);
}

TEST(Nystrom, MinKernelEigenvaluesApproachAnalyticValues) {
  KernelSpec spec;
  spec.m = 200;
  const NystromResult nr = nystrom(spec, {});
  for (int k = 1; k <= 5; ++k) {
    const double exact = 1.0 / ((k - 0.5) * (k - 0.5) * std::numbers::pi * std::numbers::pi);
    EXPECT_DOUBLE_EQ(min_kernel_eigenvalue(k), exact);
    const double got = nr.decomposition.eigenvalues(k - 1);
    EXPECT_LT(std::abs(got - exact) / (1 + std::max(got, exact)), 1e-4);
    EXPECT_LT(std::abs(got - exact) / exact, 1e-3);
  }
  const Eigen::VectorXd ref = oracle::hermitian_eigenvalues(nr.op);
  EXPECT_LT((ref - nr.decomposition.eigenvalues).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Nystrom, RankOneKernelHasOneNonzeroEigenvalue) {
  KernelSpec spec;
  spec.kernel = "rank1";
  spec.m = 40;
  spec.rule = QuadratureRule::gauss_legendre;
  const NystromResult nr = nystrom(spec, {});
  EXPECT_NEAR(nr.decomposition.eigenvalues(0), 1.0 / 3.0, 1e-12);  // integral of x^2 on [0,1]
  EXPECT_LT(std::abs(nr.decomposition.eigenvalues(1)), 1e-14);
  EXPECT_LT(oracle::rel(reconstruct(nr.decomposition), nr.op), 1e-13);
}

TEST(Nystrom, ZeroKernelGivesZeroOperator) {
  KernelSpec spec;
  spec.kernel = "expr:zero";
  spec.m = 10;
  const NystromResult nr = nystrom(spec, {});
  EXPECT_EQ(nr.op.norm(), 0.0);
  EXPECT_THROW(spectral_dual_shift(nr.decomposition, 1, {}), PreconditionError);
}

TEST(SpectralDualShift, MatchesDenseDualOfShiftedOperator) {
  KernelSpec spec;
  spec.m = 80;
  const NystromResult nr = nystrom(spec, {});
  for (int k : {1, 2, 5}) {
    const double lk = nr.decomposition.eigenvalues(k - 1);
    const ComplexMatrix shifted = nr.op - lk * ComplexMatrix::Identity(80, 80);
    const ComplexMatrix formula = spectral_dual_shift(nr.decomposition, k, {});
    EXPECT_LT(oracle::rel(formula, oracle::pinv(shifted).adjoint()), 1e-6) << k;
  }
  EXPECT_THROW(spectral_dual_shift(nr.decomposition, 0, {}), InvalidArgument);
  EXPECT_THROW(spectral_dual_shift(nr.decomposition, 81, {}), InvalidArgument);
}

TEST(SpectralDecomposition, ReconstructsHermitianInput) {
  oracle::Random rng(501);
  const ComplexMatrix g = rng.gaussian(6, 6);
  const ComplexMatrix h = g + g.adjoint();
  EXPECT_LT(oracle::rel(reconstruct(spectral_decomposition(h)), h), 1e-13);
}
