#include <cdual/generators.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

namespace cdual {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Sampler::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Complex Sampler::gaussian() {
  std::normal_distribution<double> nd(0.0, std::numbers::sqrt2 / 2.0);
  const double re = nd(engine_);
  const double im = nd(engine_);
  return {re, im};
}

ComplexMatrix Sampler::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = gaussian();
  return g;
}

ComplexMatrix Sampler::unitary(Eigen::Index n) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix g = gaussian_matrix(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

RealVector Sampler::singular_values(Eigen::Index n) {
  RealVector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = uniform(0.5, 2.0);
  return s;
}

namespace {

void check_rank(Eigen::Index rank, Eigen::Index limit, const char* who) {
  if (rank < 0 || rank > limit) {
    throw InvalidArgument(std::string(who) + ": rank " + std::to_string(rank) +
                          " outside [0, " + std::to_string(limit) + "]");
  }
}

ComplexMatrix frame_product(const ComplexMatrix& left, const RealVector& sigma,
                            const ComplexMatrix& right) {
  return left * sigma.cast<Complex>().asDiagonal() * right.adjoint();
}

// Well-conditioned invertible r x r matrix.
ComplexMatrix invertible(Sampler& rng, Eigen::Index r) {
  const ComplexMatrix w1 = rng.unitary(r);
  const RealVector s = rng.singular_values(r);
  const ComplexMatrix w2 = rng.unitary(r);
  return frame_product(w1, s, w2);
}

}  // namespace

ComplexMatrix gen_random(Eigen::Index m, Eigen::Index n, Eigen::Index rank, std::uint64_t seed) {
  if (m < 1 || n < 1) throw InvalidArgument("gen_random: dimensions must be positive");
  check_rank(rank, std::min(m, n), "gen_random");
  Sampler rng(seed);
  const ComplexMatrix u = rng.unitary(m);
  const ComplexMatrix v = rng.unitary(n);
  const RealVector s = rng.singular_values(rank);
  return frame_product(u.leftCols(rank), s, v.leftCols(rank));
}

ComplexMatrix gen_ep(Eigen::Index n, Eigen::Index rank, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("gen_ep: dimension must be positive");
  check_rank(rank, n, "gen_ep");
  Sampler rng(seed);
  const ComplexMatrix q = rng.unitary(n).leftCols(rank);
  return q * invertible(rng, rank) * q.adjoint();
}

ComplexMatrix gen_normal_ep(Eigen::Index n, Eigen::Index rank, std::uint64_t seed,
                            EigenvalueKind kind) {
  if (n < 1) throw InvalidArgument("gen_normal_ep: dimension must be positive");
  check_rank(rank, n, "gen_normal_ep");
  Sampler rng(seed);
  const ComplexMatrix q = rng.unitary(n).leftCols(rank);
  Eigen::VectorXcd lambda(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    const double modulus = kind == EigenvalueKind::unit_circle ? 1.0 : rng.uniform(0.5, 2.0);
    if (kind == EigenvalueKind::real) {
      lambda(i) = rng.uniform(0.0, 1.0) < 0.5 ? -modulus : modulus;
    } else {
      lambda(i) = std::polar(modulus, rng.uniform(-std::numbers::pi, std::numbers::pi));
    }
  }
  ComplexMatrix t = q * lambda.asDiagonal() * q.adjoint();
  if (kind == EigenvalueKind::real) t = 0.5 * (t + t.adjoint());
  return t;
}

std::pair<ComplexMatrix, ComplexMatrix> gen_range_matched_pair(Eigen::Index n, Eigen::Index rank,
                                                               std::uint64_t seed) {
  ComplexMatrix s = gen_ep(n, rank, seed);
  Sampler rng(derive_seed(seed, 1));
  ComplexMatrix t = s * invertible(rng, n);
  return {std::move(s), std::move(t)};
}

BlockOperator gen_orthogonal_range_blocks(BlockLayout layout, BlockDims dims, BlockRanks ranks,
                                          std::uint64_t seed) {
  const auto [h, k] = dims;
  const auto [r1, r2, r3, r4] = ranks;
  if (h < 1 || k < 1) throw InvalidArgument("block generator: dimensions must be positive");
  for (auto r : ranks) {
    if (r < 0) throw InvalidArgument("block generator: negative rank");
  }
  auto infeasible = [&](const char* rule) {
    throw InvalidArgument(std::string("block generator (") + to_string(layout) +
                          "): infeasible ranks, need " + rule);
  };

  Sampler rng(seed);
  // Output frames of H and K, domain frames of H and K.
  const ComplexMatrix out_h = rng.unitary(h);
  const ComplexMatrix out_k = rng.unitary(k);
  const ComplexMatrix in_h = rng.unitary(h);
  const ComplexMatrix in_k = rng.unitary(k);
  auto piece = [&](const ComplexMatrix& out, Eigen::Index out_off, const ComplexMatrix& in,
                   Eigen::Index in_off, Eigen::Index r) {
    return frame_product(out.middleCols(out_off, r), rng.singular_values(r), in.middleCols(in_off, r));
  };

  switch (layout) {
    case BlockLayout::direct_sum: {
      if (r1 > h || r4 > k) infeasible("r1 <= h and r4 <= k");
      ComplexMatrix t1 = piece(out_h, 0, in_h, 0, r1);
      ComplexMatrix t4 = piece(out_k, 0, in_k, 0, r4);
      return BlockOperator::direct_sum(t1, t4);
    }
    case BlockLayout::upper_1x2: {
      if (r1 + r2 > h || r2 > k) infeasible("r1 + r2 <= h and r2 <= k");
      ComplexMatrix t1 = piece(out_h, 0, in_h, 0, r1);
      ComplexMatrix t2 = piece(out_h, r1, in_k, 0, r2);
      return BlockOperator::upper(t1, t2);
    }
    case BlockLayout::lower_triangular: {
      if (r1 + r3 != h || r3 + r4 > k) infeasible("r1 + r3 == h and r3 + r4 <= k");
      ComplexMatrix t1 = piece(out_h, 0, in_h, 0, r1);
      ComplexMatrix t3 = piece(out_k, 0, in_h, r1, r3);
      ComplexMatrix t4 = piece(out_k, r3, in_k, 0, r4);
      return BlockOperator::lower(t1, t3, t4);
    }
    case BlockLayout::full_2x2: {
      if (r1 + r3 > h || r2 + r4 > k || r1 + r2 > h || r3 + r4 > k) {
        infeasible("r1 + r3 <= h, r2 + r4 <= k, r1 + r2 <= h, r3 + r4 <= k");
      }
      ComplexMatrix t1 = piece(out_h, 0, in_h, 0, r1);
      ComplexMatrix t2 = piece(out_h, r1, in_k, 0, r2);
      ComplexMatrix t3 = piece(out_k, 0, in_h, r1, r3);
      ComplexMatrix t4 = piece(out_k, r3, in_k, r2, r4);
      return BlockOperator::full(t1, t2, t3, t4);
    }
  }
  throw InvalidArgument("unknown block layout");
}

}  // namespace cdual
