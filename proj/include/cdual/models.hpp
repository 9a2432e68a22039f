#pragma once

// Finite realizations of two model operators: the finite section of the
// weighted shift e_{2n} -> n e_{2n-1}, and a Nystrom-discretized Hermitian
// integral operator together with its spectral formula for the dual of a
// spectral shift.

#include <cdual/linalg.hpp>

#include <functional>
#include <string>

namespace cdual {

struct ShiftTruncation {
  int pairs = 0;         // N
  ComplexMatrix matrix;  // 2N x 2N
};

/// Entry (2n-1, 2n) = n for n = 1..N (1-based), zero elsewhere.
ShiftTruncation weighted_shift(int pairs);

/// Largest deviation of w from the closed form: (2n-1, 2n) -> 1/n.
/// `pattern_error` covers the pattern entries, `off_pattern` all others.
struct ShiftDualPatternError {
  double pattern_error = 0.0;
  double off_pattern = 0.0;
};
ShiftDualPatternError shift_dual_pattern_error(const ComplexMatrix& w, int pairs);

enum class QuadratureRule { trapezoid, gauss_legendre };

const char* to_string(QuadratureRule r);
QuadratureRule parse_quadrature_rule(std::string_view name);

struct Quadrature {
  RealVector nodes;
  RealVector weights;
};

/// m-point rule on [a, b].
Quadrature make_quadrature(QuadratureRule rule, double a, double b, int m);

/// Built-in kernels:
///   "min"             K(x, y) = min(x, y)
///   "rank1"           K(x, y) = phi(x) phi(y), phi(x) = x
///   "expr:zero"       K = 0
///   "expr:exp_abs"    K(x, y) = exp(-|x - y|)
///   "expr:gaussian"   K(x, y) = exp(-(x - y)^2)
///   "expr:cos"        K(x, y) = cos(x - y)
struct KernelSpec {
  std::string kernel = "min";
  double a = 0.0;
  double b = 1.0;
  int m = 200;
  QuadratureRule rule = QuadratureRule::trapezoid;
};

using KernelFunction = std::function<Complex(double, double)>;

/// Throws InvalidArgument for an unknown kernel id.
KernelFunction kernel_function(const std::string& id);

struct SpectralDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // orthonormal columns
  RealVector quadrature_weights;
  RealVector nodes;
};

struct NystromResult {
  ComplexMatrix op;  // W^{1/2} K W^{1/2}, symmetrized
  SpectralDecomposition decomposition;
};

NystromResult nystrom(const KernelSpec& spec, const ToleranceConfig& cfg = {});
NystromResult nystrom(const KernelFunction& kernel, const Quadrature& quad,
                      const ToleranceConfig& cfg = {});

/// Decomposition of a Hermitian matrix, weights set to 1.
SpectralDecomposition spectral_decomposition(const ComplexMatrix& a,
                                             const ToleranceConfig& cfg = {});

/// sum over n with |lambda_n - lambda_k| > cutoff of (lambda_n - lambda_k)^{-1} phi_n phi_n^*.
/// `k` is 1-based in descending order. The cutoff is the pseudoinverse rank
/// rule applied to the shifted spectrum, so an eigenspace of lambda_k is
/// excluded as a whole. Throws PreconditionError when lambda_k is zero at
/// the rank cutoff of the unshifted spectrum.
ComplexMatrix spectral_dual_shift(const SpectralDecomposition& decomp, int k,
                                  const ToleranceConfig& cfg = {});

/// Rebuilds Q diag(lambda) Q^*.
ComplexMatrix reconstruct(const SpectralDecomposition& decomp);

/// Analytic eigenvalues of the min kernel on [0, 1]: 1 / ((k - 1/2)^2 pi^2).
double min_kernel_eigenvalue(int k);

}  // namespace cdual
