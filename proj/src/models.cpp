#include <cdual/models.hpp>

#include <cmath>
#include <numbers>

namespace cdual {

ShiftTruncation weighted_shift(int pairs) {
  if (pairs < 1) throw InvalidArgument("weighted_shift: N must be >= 1");
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(pairs);
  ShiftTruncation s{pairs, ComplexMatrix::Zero(dim, dim)};
  // 1-based (2n-1, 2n) is 0-based (2n-2, 2n-1).
  for (int n = 1; n <= pairs; ++n) s.matrix(2 * n - 2, 2 * n - 1) = static_cast<double>(n);
  return s;
}

ShiftDualPatternError shift_dual_pattern_error(const ComplexMatrix& w, int pairs) {
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(pairs);
  if (w.rows() != dim || w.cols() != dim) throw ShapeError("shift dual has the wrong shape");
  ShiftDualPatternError e;
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const bool on_pattern = (j % 2 == 1) && (i == j - 1);
      if (on_pattern) {
        const double expected = 1.0 / static_cast<double>((j + 1) / 2);
        e.pattern_error = std::max(e.pattern_error, std::abs(w(i, j) - expected));
      } else {
        e.off_pattern = std::max(e.off_pattern, std::abs(w(i, j)));
      }
    }
  }
  return e;
}

const char* to_string(QuadratureRule r) {
  return r == QuadratureRule::trapezoid ? "trapezoid" : "gauss_legendre";
}

QuadratureRule parse_quadrature_rule(std::string_view name) {
  if (name == "trapezoid") return QuadratureRule::trapezoid;
  if (name == "gauss_legendre") return QuadratureRule::gauss_legendre;
  throw InvalidArgument("unknown quadrature rule '" + std::string(name) + "'");
}

namespace {

// Nodes and weights on [-1, 1] by Newton iteration on P_m.
Quadrature gauss_legendre_reference(int m) {
  Quadrature q{RealVector(m), RealVector(m)};
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes(i) = -x;
    q.nodes(m - 1 - i) = x;
    q.weights(i) = w;
    q.weights(m - 1 - i) = w;
  }
  return q;
}

}  // namespace

Quadrature make_quadrature(QuadratureRule rule, double a, double b, int m) {
  if (m < 2) throw InvalidArgument("quadrature needs at least 2 nodes");
  if (!(b > a)) throw InvalidArgument("quadrature interval must satisfy a < b");
  Quadrature q{RealVector(m), RealVector(m)};
  if (rule == QuadratureRule::trapezoid) {
    const double h = (b - a) / (m - 1);
    for (int i = 0; i < m; ++i) {
      q.nodes(i) = a + h * i;
      q.weights(i) = h;
    }
    q.weights(0) = q.weights(m - 1) = h / 2;
    return q;
  }
  const Quadrature ref = gauss_legendre_reference(m);
  const double half = (b - a) / 2;
  const double mid = (a + b) / 2;
  q.nodes = (ref.nodes.array() * half + mid).matrix();
  q.weights = ref.weights * half;
  return q;
}

KernelFunction kernel_function(const std::string& id) {
  if (id == "min") return [](double x, double y) { return Complex(std::min(x, y), 0.0); };
  if (id == "rank1") return [](double x, double y) { return Complex(x * y, 0.0); };
  if (id == "expr:zero") return [](double, double) { return Complex(0.0, 0.0); };
  if (id == "expr:exp_abs")
    return [](double x, double y) { return Complex(std::exp(-std::abs(x - y)), 0.0); };
  if (id == "expr:gaussian")
    return [](double x, double y) { return Complex(std::exp(-(x - y) * (x - y)), 0.0); };
  if (id == "expr:cos") return [](double x, double y) { return Complex(std::cos(x - y), 0.0); };
  throw InvalidArgument("unknown kernel '" + id +
                        "' (built-ins: min, rank1, expr:zero, expr:exp_abs, expr:gaussian, expr:cos)");
}

NystromResult nystrom(const KernelFunction& kernel, const Quadrature& quad,
                      const ToleranceConfig& cfg) {
  const Eigen::Index m = quad.nodes.size();
  const RealVector root_w = quad.weights.array().sqrt().matrix();
  ComplexMatrix op(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex k = kernel(quad.nodes(i), quad.nodes(j));
      if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) {
        throw PreconditionError("kernel evaluation failed at node pair", quad.nodes(i));
      }
      op(i, j) = root_w(i) * k * root_w(j);
    }
  }
  op = 0.5 * (op + op.adjoint());

  NystromResult out;
  const HermitianEigen he = hermitian_eig(op, cfg);
  out.op = std::move(op);
  out.decomposition.eigenvalues = he.eigenvalues;
  out.decomposition.eigenvectors = he.eigenvectors;
  out.decomposition.quadrature_weights = quad.weights;
  out.decomposition.nodes = quad.nodes;
  return out;
}

NystromResult nystrom(const KernelSpec& spec, const ToleranceConfig& cfg) {
  return nystrom(kernel_function(spec.kernel), make_quadrature(spec.rule, spec.a, spec.b, spec.m),
                 cfg);
}

SpectralDecomposition spectral_decomposition(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const HermitianEigen he = hermitian_eig(a, cfg);
  SpectralDecomposition d;
  d.eigenvalues = he.eigenvalues;
  d.eigenvectors = he.eigenvectors;
  d.quadrature_weights = RealVector::Ones(a.rows());
  return d;
}

ComplexMatrix spectral_dual_shift(const SpectralDecomposition& decomp, int k,
                                  const ToleranceConfig& cfg) {
  const Eigen::Index n = decomp.eigenvalues.size();
  if (k < 1 || k > n) {
    throw InvalidArgument("spectral_dual_shift: eigen-index " + std::to_string(k) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  const RealVector& lambda = decomp.eigenvalues;
  const double lk = lambda(k - 1);
  const double scale = lambda.cwiseAbs().maxCoeff();
  if (std::abs(lk) <= rank_cutoff(scale, n, n, cfg)) {
    throw PreconditionError("spectral_dual_shift: lambda_k is zero", lk);
  }
  const RealVector shifted = (lambda.array() - lk).matrix();
  const double cutoff = rank_cutoff(shifted.cwiseAbs().maxCoeff(), n, n, cfg);

  const ComplexMatrix& phi = decomp.eigenvectors;
  ComplexMatrix out = ComplexMatrix::Zero(phi.rows(), phi.rows());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(shifted(i)) > cutoff) {
      out.noalias() += (1.0 / shifted(i)) * phi.col(i) * phi.col(i).adjoint();
    }
  }
  return out;
}

ComplexMatrix reconstruct(const SpectralDecomposition& decomp) {
  const ComplexMatrix& q = decomp.eigenvectors;
  return q * decomp.eigenvalues.cast<Complex>().asDiagonal() * q.adjoint();
}

double min_kernel_eigenvalue(int k) {
  const double c = (k - 0.5) * std::numbers::pi;
  return 1.0 / (c * c);
}

}  // namespace cdual
