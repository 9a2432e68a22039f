#pragma once

// Moore-Penrose pseudoinverse, the four Penrose conditions, and the
// polar decomposition T = U_T |T|.

#include <cdual/linalg.hpp>
#include <cdual/report.hpp>

namespace cdual {

/// Relative residuals of the four Penrose conditions for a candidate X:
/// AXA = A, XAX = X, (AX)^* = AX, (XA)^* = XA.
struct PenroseResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;

  double max() const;
  bool is_mp_inverse(const ToleranceConfig& cfg) const { return max() <= cfg.identity_tol; }
};

/// A^dagger = V diag(1/sigma_i for i < rank, 0 otherwise) U^*.
/// Singular values at or below the rank cutoff are treated as exact zeros.
ComplexMatrix pinv(const ComplexMatrix& a, const ToleranceConfig& cfg = {});
ComplexMatrix pinv(const SvdFactorization& f);

/// X must be n x m when A is m x n.
PenroseResiduals penrose_residuals(const ComplexMatrix& a, const ComplexMatrix& x);

/// Finite-dimensional forms of the standard Moore-Penrose property list:
/// double pseudoinverse, adjoint commutation, the T^*T and TT^* product
/// rules, N(T^dagger) = N(T^*), R(T^dagger) = carrier, and the two
/// projector identities T^dagger T = P_{R(T^*)}, T T^dagger = P_{R(T)}.
CheckReport mp_property_battery(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

struct PolarDecomposition {
  ComplexMatrix u;    // U_T, partial isometry with initial space R(|T|)
  ComplexMatrix abs;  // |T| = (T^*T)^{1/2}
  Projector initial_projector;  // P_{R(|T|)}
  Projector final_projector;    // P_{R(T)}
};

/// |T| = psd_sqrt(T^*T), U_T = T pinv(|T|).
PolarDecomposition polar(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Residuals of the polar invariants, the agreement of U_T with the SVD
/// frame route U_r V_r^*, and the identities
/// T^dagger = |T|^dagger U_{T^*}, (T^*)^dagger = U_T |T|^dagger.
CheckReport polar_report(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

}  // namespace cdual
