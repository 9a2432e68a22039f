#include "oracles.hpp"

#include <cdual/classify.hpp>
#include <cdual/generators.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace cdual;

TEST(Seeds, DeriveSeedIsDeterministicAndSpreads) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Seeds, SplitmixReferenceValue) {
  // First output of the SplitMix64 reference generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Sampler, UnitaryAndSingularValueRanges) {
  Sampler s(5);
  const ComplexMatrix q = s.unitary(7);
  EXPECT_LT((q.adjoint() * q - ComplexMatrix::Identity(7, 7)).norm(), 1e-13);
  const RealVector sv = s.singular_values(50);
  EXPECT_GE(sv.minCoeff(), 0.5);
  EXPECT_LE(sv.maxCoeff(), 2.0);
  for (int i = 0; i < 100; ++i) {
    const int v = s.uniform_int(2, 4);
    EXPECT_GE(v, 2);
    EXPECT_LE(v, 4);
  }
}

TEST(Generators, ExactRankAndReproducible) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(seed % 9);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>((seed * 7) % 11);
    const Eigen::Index r = static_cast<Eigen::Index>(seed % (std::min(m, n) + 1));
    const ComplexMatrix a = gen_random(m, n, r, seed);
    EXPECT_EQ(oracle::rank(a), r);
    EXPECT_EQ(a, gen_random(m, n, r, seed));
    const Eigen::VectorXd sv = oracle::singular_values(a);
    for (Eigen::Index i = 0; i < r; ++i) {
      EXPECT_GE(sv(i), 0.5 - 1e-12);
      EXPECT_LE(sv(i), 2.0 + 1e-12);
    }
  }
  EXPECT_NE(gen_random(4, 4, 2, 1), gen_random(4, 4, 2, 2));
}

TEST(Generators, RejectInfeasibleRanks) {
  EXPECT_THROW(gen_random(3, 2, 3, 0), InvalidArgument);
  EXPECT_THROW(gen_random(0, 2, 0, 0), InvalidArgument);
  EXPECT_THROW(gen_ep(3, 4, 0), InvalidArgument);
  EXPECT_THROW(gen_normal_ep(3, -1, 0), InvalidArgument);
  EXPECT_THROW(gen_orthogonal_range_blocks(BlockLayout::upper_1x2, {2, 3}, {2, 1, 0, 0}, 0),
               InvalidArgument);
  EXPECT_THROW(gen_orthogonal_range_blocks(BlockLayout::lower_triangular, {3, 3}, {1, 0, 1, 0}, 0),
               InvalidArgument);
}

TEST(Generators, EpAndNormalClasses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix e = gen_ep(6, 4, seed);
    EXPECT_EQ(oracle::rank(e), 4);
    EXPECT_LT((oracle::range_projector(e) - oracle::range_projector(e.adjoint())).norm(), 1e-9);

    const ComplexMatrix nr = gen_normal_ep(6, 4, seed, EigenvalueKind::real);
    EXPECT_LT((nr - nr.adjoint()).norm(), 1e-13);
    const ComplexMatrix nu = gen_normal_ep(6, 4, seed, EigenvalueKind::unit_circle);
    EXPECT_LT((nu * nu.adjoint() - nu.adjoint() * nu).norm(), 1e-12);
    // Nonzero eigenvalues on the unit circle make nu a partial isometry.
    EXPECT_TRUE(classify(nu).partial_isometry.holds);
  }
}

TEST(Generators, RangeMatchedPairsShareRange) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [s, t] = gen_range_matched_pair(6, 3, seed);
    EXPECT_EQ(oracle::rank(t), 3);
    EXPECT_LT((oracle::range_projector(s) - oracle::range_projector(t)).norm(), 1e-9);
  }
}

TEST(Generators, OrthogonalRangeBlocksHaveRequestedRanksAndShapes) {
  const BlockOperator up =
      gen_orthogonal_range_blocks(BlockLayout::upper_1x2, {5, 3}, {2, 3, 0, 0}, 4);
  EXPECT_EQ(up.t1.rows(), 5);
  EXPECT_EQ(up.t1.cols(), 5);
  EXPECT_EQ(up.t2.cols(), 3);
  EXPECT_EQ(oracle::rank(up.t1), 2);
  EXPECT_EQ(oracle::rank(up.t2), 3);
  EXPECT_LT((oracle::range_projector(up.t1) * oracle::range_projector(up.t2)).norm(), 1e-9);

  const BlockOperator lo =
      gen_orthogonal_range_blocks(BlockLayout::lower_triangular, {4, 5}, {1, 0, 3, 2}, 4);
  EXPECT_EQ(oracle::rank(lo.t1), 1);
  EXPECT_EQ(oracle::rank(lo.t3), 3);
  EXPECT_EQ(oracle::rank(lo.t4), 2);
  EXPECT_EQ(lo.t2.norm(), 0.0);
}
