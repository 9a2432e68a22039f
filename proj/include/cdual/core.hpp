#pragma once

// Shared value types, tolerance policy and error hierarchy.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cdual {

using Complex = std::complex<double>;

/// Dense complex matrix, row/column counts carried by the Eigen object.
/// Every operator T, T*, S, T1..T4 lives in one of these.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Knobs for every numerical decision in the library.
///
/// The rank cutoff is tau = sigma_max * max(m, n) * eps * rank_safety.
/// identity_tol is compared against the relative residual
/// ||X - Y||_F / (1 + max(||X||_F, ||Y||_F)).
struct ToleranceConfig {
  double rank_safety = 10.0;
  double identity_tol = 1e-10;
  double subspace_tol = 1e-8;
  double orth_tol = 1e-10;
  double recon_tol = 1e-10;

  /// Throws InvalidArgument unless every field is strictly positive.
  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative factorization hit its sweep cap.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, int iterations)
      : Error(what + " (after " + std::to_string(iterations) + " sweeps)"),
        iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// Input violates an operation precondition; carries the offending measure.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double measure)
      : Error(what + " (measure " + std::to_string(measure) + ")"),
        measure_(measure) {}
  double measure() const noexcept { return measure_; }

 private:
  double measure_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The regularized dual route could not be trusted (conditioning cap hit).
class RouteFailure : public Error {
 public:
  RouteFailure(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

inline ComplexMatrix identity(Eigen::Index n) {
  return ComplexMatrix::Identity(n, n);
}

/// ||x - y||_F / (1 + max(||x||_F, ||y||_F)); throws ShapeError on mismatch.
double relative_residual(const ComplexMatrix& x, const ComplexMatrix& y);

bool all_finite(const ComplexMatrix& a);

/// Throws PreconditionError when any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, const char* what);

/// Integer power by repeated multiplication; n = 0 gives the identity.
ComplexMatrix matrix_power(const ComplexMatrix& a, int n);

}  // namespace cdual
