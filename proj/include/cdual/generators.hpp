#pragma once

// Seeded random matrices in each hypothesis class. Every generator is a
// pure function of (parameters, seed).

#include <cdual/blocks.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <utility>

namespace cdual {

/// Recorded in reports next to the seed.
inline constexpr const char* kGeneratorName = "splitmix64+mt19937_64";

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` of a run with master seed `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Wraps the engine and the complex Gaussian / uniform draws used below.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  Complex gaussian();
  ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
  /// Haar-like unitary from QR of a complex Gaussian with phase fix-up.
  ComplexMatrix unitary(Eigen::Index n);
  /// Positive singular values drawn from [0.5, 2].
  RealVector singular_values(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
};

/// Exact-rank U_r diag(sigma) V_r^* with sigma in [0.5, 2].
ComplexMatrix gen_random(Eigen::Index m, Eigen::Index n, Eigen::Index rank, std::uint64_t seed);

/// Q [[A, 0], [0, 0]] Q^* with Q unitary and A invertible (rank x rank).
ComplexMatrix gen_ep(Eigen::Index n, Eigen::Index rank, std::uint64_t seed);

enum class EigenvalueKind { complex, real, unit_circle };

/// Q diag(lambda_1..lambda_rank, 0..0) Q^* with nonzero lambda. Normal, hence
/// quasinormal (commutation form) and EP.
ComplexMatrix gen_normal_ep(Eigen::Index n, Eigen::Index rank, std::uint64_t seed,
                            EigenvalueKind kind = EigenvalueKind::complex);

/// S = gen_ep(n, rank), T = S M with M invertible, so R(S) = R(T).
std::pair<ComplexMatrix, ComplexMatrix> gen_range_matched_pair(Eigen::Index n, Eigen::Index rank,
                                                               std::uint64_t seed);

struct BlockDims {
  Eigen::Index h = 0;  // dim H
  Eigen::Index k = 0;  // dim K
};

/// Ranks of T1..T4 (entries for slots a layout does not use are ignored).
using BlockRanks = std::array<Eigen::Index, 4>;

/// Blocks whose ranges (and adjoint ranges) sit on disjoint orthonormal
/// column frames, so every orthogonality hypothesis of the layout holds.
/// T1 is h x h, T2 h x k, T3 k x h, T4 k x k. Throws InvalidArgument when
/// the ranks cannot fit:
///  - direct_sum: r1 <= h, r4 <= k
///  - upper_1x2: r1 + r2 <= h, r2 <= k
///  - lower_triangular: r1 + r3 == h, r3 + r4 <= k
///  - full_2x2: r1 + r3 <= h, r2 + r4 <= k, r1 + r2 <= h, r3 + r4 <= k
BlockOperator gen_orthogonal_range_blocks(BlockLayout layout, BlockDims dims, BlockRanks ranks,
                                          std::uint64_t seed);

}  // namespace cdual
