#include <cdual/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace cdual {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<Eigen::Index> descending_order(const RealVector& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return values(l) > values(r); });
  return order;
}

// Extends the orthonormal columns `basis` (m x k) to an m x m unitary by
// greedily orthogonalizing standard basis vectors.
ComplexMatrix complete_unitary(const ComplexMatrix& basis, Eigen::Index m) {
  ComplexMatrix out(m, m);
  Eigen::Index filled = basis.cols();
  out.leftCols(filled) = basis;
  while (filled < m) {
    double best_norm = -1.0;
    Eigen::VectorXcd best;
    for (Eigen::Index k = 0; k < m; ++k) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Unit(m, k);
      // Two passes of classical Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass) {
        const auto q = out.leftCols(filled);
        e -= q * (q.adjoint() * e);
      }
      const double nrm = e.norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = e;
      }
    }
    out.col(filled) = best / best_norm;
    ++filled;
  }
  return out;
}

// One-sided (Hestenes) Jacobi on a tall matrix, rows >= cols.
SvdFactorization svd_tall(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  ComplexMatrix g = a;
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double tol = kEps * static_cast<double>(std::max<Eigen::Index>(m, 1));
  // Columns below this squared norm are roundoff relative to A; rotating
  // them against each other need not settle.
  const double negligible = std::pow(kEps * a.norm(), 2);

  int sweep = 0;
  for (bool rotated = true; rotated;) {
    if (sweep >= kSvdMaxSweeps) {
      throw FactorizationError("one-sided Jacobi SVD did not converge", sweep);
    }
    ++sweep;
    rotated = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = g.col(i).squaredNorm();
        const double beta = g.col(j).squaredNorm();
        const Complex gamma = g.col(i).dot(g.col(j));
        const double mag = std::abs(gamma);
        if (alpha <= negligible || beta <= negligible ||
            mag < std::numeric_limits<double>::min() ||
            mag <= tol * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        // Rotate column j by the phase of gamma so the pair becomes real.
        const Complex phase = std::conj(gamma) / mag;
        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        Eigen::VectorXcd gi = g.col(i);
        Eigen::VectorXcd gj = phase * g.col(j);
        g.col(i) = c * gi - s * gj;
        g.col(j) = s * gi + c * gj;

        Eigen::VectorXcd vi = v.col(i);
        Eigen::VectorXcd vj = phase * v.col(j);
        v.col(i) = c * vi - s * vj;
        v.col(j) = s * vi + c * vj;
      }
    }
  }

  RealVector norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms(j) = g.col(j).norm();
  const auto order = descending_order(norms);

  SvdFactorization f;
  f.sigma.resize(n);
  f.v.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    f.sigma(k) = norms(order[static_cast<std::size_t>(k)]);
    f.v.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }

  const double sigma_max = n > 0 ? f.sigma(0) : 0.0;
  // Columns this small carry no reliable direction; they are replaced by
  // the orthogonal completion.
  const double direction_floor = sigma_max * kEps;
  Eigen::Index kept = 0;
  while (kept < n && f.sigma(kept) > direction_floor && f.sigma(kept) > 0.0) ++kept;
  ComplexMatrix left(m, kept);
  for (Eigen::Index k = 0; k < kept; ++k) {
    left.col(k) = g.col(order[static_cast<std::size_t>(k)]) / f.sigma(k);
  }
  f.u = complete_unitary(left, m);

  f.rank_cutoff = rank_cutoff(sigma_max, m, n, cfg);
  f.numerical_rank = 0;
  if (sigma_max > 0.0) {
    while (f.numerical_rank < n && f.sigma(f.numerical_rank) > f.rank_cutoff) {
      ++f.numerical_rank;
    }
  }
  return f;
}

}  // namespace

double rank_cutoff(double sigma_max, Eigen::Index rows, Eigen::Index cols,
                   const ToleranceConfig& cfg) {
  return sigma_max * static_cast<double>(std::max(rows, cols)) * kEps *
         cfg.rank_safety;
}

SvdFactorization svd(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  require_finite(a, "svd input");
  if (a.rows() >= a.cols()) return svd_tall(a, cfg);
  SvdFactorization t = svd_tall(a.adjoint(), cfg);
  std::swap(t.u, t.v);
  return t;
}

HermitianEigen hermitian_eig(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  require_finite(a, "hermitian_eig input");
  if (a.rows() != a.cols()) throw ShapeError("hermitian_eig needs a square matrix");
  const double asym = (a - a.adjoint()).norm();
  if (asym > cfg.identity_tol * (1.0 + a.norm())) {
    throw PreconditionError("hermitian_eig input is not Hermitian", asym);
  }

  const Eigen::Index n = a.rows();
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  ComplexMatrix q = ComplexMatrix::Identity(n, n);
  const double threshold = kEps * h.norm() / static_cast<double>(std::max<Eigen::Index>(n, 1));

  int sweep = 0;
  for (bool rotated = true; rotated;) {
    if (sweep >= kEigMaxSweeps) {
      throw FactorizationError("Hermitian Jacobi eigensolver did not converge", sweep);
    }
    ++sweep;
    rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const Complex z = h(p, r);
        const double mag = std::abs(z);
        if (mag <= threshold) continue;
        rotated = true;
        const Complex e = z / mag;
        const Complex ce = std::conj(e);
        const double tau = (h(r, r).real() - h(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        // J = [[c, s], [-s conj(e), c conj(e)]] on coordinates (p, r).
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex hp = h(k, p);
          const Complex hr = h(k, r);
          h(k, p) = c * hp - s * ce * hr;
          h(k, r) = s * hp + c * ce * hr;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex hp = h(p, k);
          const Complex hr = h(r, k);
          h(p, k) = c * hp - s * e * hr;
          h(r, k) = s * hp + c * e * hr;
        }
        h(p, r) = 0.0;
        h(r, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(r, r) = h(r, r).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex qp = q(k, p);
          const Complex qr = q(k, r);
          q(k, p) = c * qp - s * ce * qr;
          q(k, r) = s * qp + c * ce * qr;
        }
      }
    }
  }

  RealVector diag(n);
  for (Eigen::Index k = 0; k < n; ++k) diag(k) = h(k, k).real();
  const auto order = descending_order(diag);
  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = diag(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = q.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Projector range_projector(const SvdFactorization& f) {
  const ComplexMatrix basis = f.range_basis();
  return Projector{basis * basis.adjoint(), f.numerical_rank};
}

Projector range_projector(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return range_projector(svd(a, cfg));
}

Projector carrier_projector(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const SvdFactorization f = svd(a, cfg);
  const ComplexMatrix basis = f.corange_basis();
  return Projector{basis * basis.adjoint(), f.numerical_rank};
}

Projector null_projector(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const Projector carrier = carrier_projector(a, cfg);
  return Projector{identity(a.cols()) - carrier.matrix, a.cols() - carrier.subspace_dim};
}

SubspaceComparison subspace_relation(const Projector& p, const Projector& q,
                                     const ToleranceConfig& cfg) {
  if (p.dim() != q.dim() || p.matrix.cols() != q.matrix.cols()) {
    throw ShapeError("subspace_relation: projectors act on different spaces");
  }
  SubspaceComparison out;
  out.difference = (p.matrix - q.matrix).norm();
  out.containment = (q.matrix * p.matrix - p.matrix).norm();
  if (out.difference <= cfg.subspace_tol) {
    out.relation = SubspaceRelation::equal;
  } else if (out.containment <= cfg.subspace_tol) {
    out.relation = SubspaceRelation::contained;
  } else {
    out.relation = SubspaceRelation::incomparable;
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const HermitianEigen he = hermitian_eig(a, cfg);
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double lowest = he.eigenvalues(n - 1);
  if (lowest < -cfg.identity_tol * (1.0 + a.norm())) {
    throw PreconditionError("psd_sqrt input is indefinite", lowest);
  }
  const double scale = std::max(std::abs(he.eigenvalues(0)), std::abs(lowest));
  const double cutoff = rank_cutoff(scale, n, n, cfg);
  RealVector root(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = he.eigenvalues(k);
    root(k) = lambda > cutoff ? std::sqrt(lambda) : 0.0;
  }
  const ComplexMatrix& q = he.eigenvectors;
  ComplexMatrix b = q * root.cast<Complex>().asDiagonal() * q.adjoint();
  return 0.5 * (b + b.adjoint());
}

double spectral_norm(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  if (a.size() == 0) return 0.0;
  return svd(a, cfg).sigma(0);
}

double projector_defect(const Projector& p) {
  const ComplexMatrix& m = p.matrix;
  const double idempotent = relative_residual(m * m, m);
  const double hermitian = relative_residual(m.adjoint(), m);
  const double trace = std::abs(m.trace().real() - static_cast<double>(p.subspace_dim)) /
                       std::max<double>(1.0, static_cast<double>(m.rows()));
  return std::max({idempotent, hermitian, trace});
}

const char* to_string(SubspaceRelation r) {
  switch (r) {
    case SubspaceRelation::equal: return "equal";
    case SubspaceRelation::contained: return "contained";
    case SubspaceRelation::incomparable: return "incomparable";
  }
  return "unknown";
}

// core.hpp helpers

void ToleranceConfig::validate() const {
  if (!(rank_safety > 0) || !(identity_tol > 0) || !(subspace_tol > 0) ||
      !(orth_tol > 0) || !(recon_tol > 0)) {
    throw InvalidArgument("tolerance configuration values must be strictly positive");
  }
}

double relative_residual(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ShapeError("relative_residual: shape mismatch " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                     std::to_string(y.cols()));
  }
  return (x - y).norm() / (1.0 + std::max(x.norm(), y.norm()));
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!all_finite(a)) {
    throw PreconditionError(std::string(what) + " has non-finite entries",
                            std::numeric_limits<double>::quiet_NaN());
  }
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int n) {
  if (a.rows() != a.cols()) throw ShapeError("matrix_power needs a square matrix");
  if (n < 0) throw InvalidArgument("matrix_power exponent must be nonnegative");
  ComplexMatrix out = identity(a.rows());
  for (int k = 0; k < n; ++k) out = out * a;
  return out;
}

}  // namespace cdual
