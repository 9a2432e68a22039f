#pragma once

// Reference computations that do not go through the library's own
// factorizations. Used to cross-check results in the unit tests.

#include <cdual/core.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <random>

namespace oracle {

using cdual::Complex;
using cdual::ComplexMatrix;

/// Pseudoinverse through Eigen's two-sided Jacobi SVD with the same cutoff
/// convention (sigma_max * max(m, n) * eps * 10).
inline ComplexMatrix pinv(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = (s.size() ? s(0) : 0.0) * static_cast<double>(std::max(a.rows(), a.cols())) *
                     std::numeric_limits<double>::epsilon() * 10.0;
  ComplexMatrix sinv = ComplexMatrix::Zero(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) sinv(i, i) = 1.0 / s(i);
  return svd.matrixV() * sinv * svd.matrixU().adjoint();
}

inline Eigen::VectorXd singular_values(const ComplexMatrix& a) {
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
}

inline Eigen::Index rank(const ComplexMatrix& a, double rel = 1e-10) {
  const Eigen::VectorXd s = singular_values(a);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return s.size() && s(0) > 0 ? r : 0;
}

/// Eigenvalues of a Hermitian matrix in descending order.
inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  Eigen::VectorXd v = es.eigenvalues();
  return v.reverse();
}

/// Square root of a PSD matrix; eigenvalues at roundoff level are zeroed
/// before the root so they do not turn into spurious small singular values.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  Eigen::VectorXd l = es.eigenvalues();
  const double cut = l.cwiseAbs().maxCoeff() * static_cast<double>(a.rows()) *
                     std::numeric_limits<double>::epsilon() * 10.0;
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = l(i) > cut ? std::sqrt(l(i)) : 0.0;
  return es.eigenvectors() * l.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Orthogonal projector onto the column space, from Eigen's SVD.
inline ComplexMatrix range_projector(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU);
  const Eigen::Index r = rank(a);
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

/// Generic rank-r matrix as a product of Gaussian factors.
class Random {
 public:
  explicit Random(std::uint64_t seed) : eng_(seed) {}

  ComplexMatrix gaussian(Eigen::Index m, Eigen::Index n) {
    std::normal_distribution<double> nd;
    ComplexMatrix a(m, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < m; ++i) a(i, j) = Complex(nd(eng_), nd(eng_));
    return a;
  }
  ComplexMatrix low_rank(Eigen::Index m, Eigen::Index n, Eigen::Index r) {
    if (r == 0) return ComplexMatrix::Zero(m, n);
    return gaussian(m, r) * gaussian(r, n);
  }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

 private:
  std::mt19937_64 eng_;
};

inline double rel(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x - y).norm() / (1.0 + std::max(x.norm(), y.norm()));
}

}  // namespace oracle
