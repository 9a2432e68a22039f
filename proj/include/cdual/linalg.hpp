#pragma once

// Numeric substrate: SVD, Hermitian eigensolver, projectors, PSD square root.
//
// Both factorizations are Jacobi methods written against plain Eigen
// storage, so results are deterministic for a fixed input and failures
// carry the sweep count.

#include <cdual/core.hpp>

namespace cdual {

/// A = U * diag(sigma) * V^*, U (m x m) and V (n x n) unitary,
/// sigma descending of length min(m, n).
struct SvdFactorization {
  ComplexMatrix u;
  RealVector sigma;
  ComplexMatrix v;
  Eigen::Index numerical_rank = 0;
  double rank_cutoff = 0.0;

  /// First numerical_rank columns of u / v.
  ComplexMatrix range_basis() const { return u.leftCols(numerical_rank); }
  ComplexMatrix corange_basis() const { return v.leftCols(numerical_rank); }
};

struct HermitianEigen {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // unitary, columns match eigenvalues
};

/// Orthogonal projector onto a subspace of dimension subspace_dim.
struct Projector {
  ComplexMatrix matrix;
  Eigen::Index subspace_dim = 0;

  Eigen::Index dim() const { return matrix.rows(); }
};

enum class SubspaceRelation { equal, contained, incomparable };

struct SubspaceComparison {
  SubspaceRelation relation = SubspaceRelation::incomparable;
  double difference = 0.0;  // ||P - Q||_F
  double containment = 0.0; // ||Q P - P||_F, small iff R(P) is inside R(Q)
};

/// Sweep caps for the Jacobi iterations.
inline constexpr int kSvdMaxSweeps = 80;
inline constexpr int kEigMaxSweeps = 100;

/// tau = sigma_max * max(m, n) * eps * rank_safety.
double rank_cutoff(double sigma_max, Eigen::Index rows, Eigen::Index cols,
                   const ToleranceConfig& cfg);

SvdFactorization svd(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Eigen-decomposition of a Hermitian matrix. Throws PreconditionError when
/// the relative asymmetry exceeds identity_tol.
HermitianEigen hermitian_eig(const ComplexMatrix& a,
                             const ToleranceConfig& cfg = {});

/// P_{R(A)} from the leading numerical_rank left singular vectors.
Projector range_projector(const ComplexMatrix& a,
                          const ToleranceConfig& cfg = {});
Projector range_projector(const SvdFactorization& f);

/// P_{N(A)} = I - P_{R(A^*)}.
Projector null_projector(const ComplexMatrix& a,
                         const ToleranceConfig& cfg = {});

/// Carrier projector, onto N(A)^perp = R(A^*).
Projector carrier_projector(const ComplexMatrix& a,
                            const ToleranceConfig& cfg = {});

/// Compares R(p) with R(q). equal iff ||P - Q||_F <= subspace_tol,
/// contained iff ||Q P - P||_F <= subspace_tol.
SubspaceComparison subspace_relation(const Projector& p, const Projector& q,
                                     const ToleranceConfig& cfg = {});

/// Hermitian PSD square root through the eigen route. Eigenvalues inside the
/// rank cutoff (or mildly negative) are clamped to zero; eigenvalues below
/// -identity_tol * (1 + ||A||_F) raise PreconditionError.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Projector invariants: idempotent, Hermitian, trace equals subspace_dim.
/// Returns the largest of the three relative defects.
double projector_defect(const Projector& p);

const char* to_string(SubspaceRelation r);

}  // namespace cdual
