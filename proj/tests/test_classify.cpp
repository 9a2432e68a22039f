#include "oracles.hpp"

#include <cdual/classify.hpp>
#include <cdual/generators.hpp>

#include <gtest/gtest.h>

using namespace cdual;

TEST(Classify, IdentityIsEverything) {
  const OperatorClassification c = classify(ComplexMatrix::Identity(4, 4));
  for (const Verdict* v : {&c.selfadjoint, &c.normal, &c.quasinormal_commutation,
                           &c.quasinormal_literal, &c.ep, &c.hypo_ep, &c.partial_isometry,
                           &c.psd}) {
    EXPECT_TRUE(v->applicable);
    EXPECT_TRUE(v->holds);
  }
}

TEST(Classify, NilpotentJordanBlock) {
  ComplexMatrix j(2, 2);
  j << 0.0, 1.0, 0.0, 0.0;
  const OperatorClassification c = classify(j);
  EXPECT_FALSE(c.selfadjoint.holds);
  EXPECT_FALSE(c.normal.holds);
  EXPECT_FALSE(c.ep.holds);
  EXPECT_FALSE(c.hypo_ep.holds);
  EXPECT_TRUE(c.partial_isometry.holds);
  EXPECT_FALSE(c.psd.holds);
}

TEST(Classify, CounterexampleMatrixIsNotEp) {
  ComplexMatrix t(2, 2);
  t << 1.0, 0.0, 1.0, 0.0;
  const OperatorClassification c = classify(t);
  EXPECT_FALSE(c.ep.holds);
  EXPECT_FALSE(c.normal.holds);
  EXPECT_FALSE(c.partial_isometry.holds);
}

TEST(Classify, RectangularOnlyAdmitsPartialIsometry) {
  ComplexMatrix v = ComplexMatrix::Zero(3, 2);
  v(0, 0) = 1.0;
  v(1, 1) = Complex(0, 1);
  const OperatorClassification c = classify(v);
  EXPECT_FALSE(c.selfadjoint.applicable);
  EXPECT_FALSE(c.normal.applicable);
  EXPECT_FALSE(c.ep.applicable);
  EXPECT_FALSE(c.psd.applicable);
  EXPECT_TRUE(c.partial_isometry.applicable);
  EXPECT_TRUE(c.partial_isometry.holds);
}

TEST(Classify, ImplicationChainOnGenerators) {
  // selfadjoint => normal => quasinormal => EP => hypo-EP
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
    const Eigen::Index r = static_cast<Eigen::Index>(seed % n);
    for (const ComplexMatrix& a :
         {gen_normal_ep(n, r, seed, EigenvalueKind::real), gen_normal_ep(n, r, seed),
          gen_ep(n, r, seed), gen_random(n, n, r, seed)}) {
      const OperatorClassification c = classify(a);
      if (c.selfadjoint.holds) EXPECT_TRUE(c.normal.holds);
      if (c.normal.holds) EXPECT_TRUE(c.quasinormal_commutation.holds);
      if (c.quasinormal_commutation.holds) EXPECT_TRUE(c.ep.holds);
      if (c.ep.holds) EXPECT_TRUE(c.hypo_ep.holds);
    }
  }
}

TEST(Classify, GeneratorsLandInTheirClasses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(is_selfadjoint(gen_normal_ep(6, 3, seed, EigenvalueKind::real)));
    EXPECT_TRUE(is_normal(gen_normal_ep(6, 3, seed)));
    EXPECT_TRUE(is_normal(gen_normal_ep(6, 3, seed, EigenvalueKind::unit_circle)));
    EXPECT_TRUE(is_ep(gen_ep(6, 3, seed)));
    EXPECT_FALSE(is_normal(gen_ep(6, 3, seed)));
    EXPECT_FALSE(is_ep(gen_random(6, 6, 3, seed)));
  }
}

TEST(Classify, PsdRequiresNonnegativeSpectrum) {
  oracle::Random rng(301);
  const ComplexMatrix g = rng.low_rank(5, 5, 3);
  EXPECT_TRUE(classify(g.adjoint() * g).psd.holds);
  EXPECT_FALSE(classify(-(g.adjoint() * g)).psd.holds);
}

TEST(Classify, LiteralQuasinormalFormDiffersFromCommutationForm) {
  // S^*S S = 0 = S S S^*, while S (S^*S) = S != 0 = (S^*S) S.
  ComplexMatrix s(2, 2);
  s << 0.0, 0.0, 1.0, 0.0;
  const OperatorClassification c = classify(s);
  EXPECT_TRUE(c.quasinormal_literal.holds);
  EXPECT_FALSE(c.quasinormal_commutation.holds);
}

TEST(Classify, SameRangeComparesColumnSpaces) {
  const auto [s, t] = gen_range_matched_pair(5, 2, 9);
  EXPECT_TRUE(same_range(s, t));
  EXPECT_FALSE(same_range(s, gen_random(5, 5, 2, 10)));
}
