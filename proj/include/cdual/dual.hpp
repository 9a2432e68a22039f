#pragma once

// Generalized Cauchy dual w(T) = T (T^*T)^dagger and the identities built
// on it. Closures of products in the unbounded setting are realized here as
// plain matrix products; every finite matrix is bounded and defined
// everywhere.

#include <cdual/classify.hpp>
#include <cdual/pinv.hpp>
#include <cdual/report.hpp>

#include <optional>

namespace cdual {

enum class DualRoute {
  product,       // T (T^*T)^dagger
  adjoint_pinv,  // (T^dagger)^*
  regularized,   // T (T^*T + P_{N(T)})^{-1}
};

const char* to_string(DualRoute r);
/// Throws InvalidArgument for an unknown name.
DualRoute parse_dual_route(std::string_view name);

/// Condition-number cap for the regularized route's dense solve.
inline constexpr double kRegularizedConditionCap = 1e12;

struct DualComputation {
  ComplexMatrix dual;
  DualRoute route = DualRoute::adjoint_pinv;
  /// Relative residual against the reference route (adjoint_pinv, or
  /// product when the requested route is adjoint_pinv).
  double cross_route_residual = 0.0;
  /// Regularized route only: condition estimate of T^*T + P_{N(T)} and the
  /// residual of (T^*T + P_{N(T)})^{-1} = T^dagger (T^*)^dagger + P_{N(T)}.
  std::optional<double> condition;
  std::optional<double> regularized_inverse_residual;
};

/// w(T) through the default route; the fast path used inside batteries.
ComplexMatrix cauchy_dual(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Route-specific computation with cross-validation. The regularized route
/// throws RouteFailure when the condition estimate exceeds the cap.
DualComputation dual(const ComplexMatrix& a, DualRoute route, const ToleranceConfig& cfg = {});

/// All three routes, pairwise agreement.
CheckReport dual_route_agreement(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// Finite-dimensional dual identities: w(T) = (T^dagger)^* = (T^*)^dagger,
/// w(w(T)) = T, w(T)^* = w(T^*), T^* w(T) = w(T^*) T = P_{R(T^*)},
/// w(T) T^* = T w(T^*) = P_{R(T)}, w(T)^* w(T) = w(T^*T).
CheckReport dual_identity_battery(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// w(T) = U_T |T|^dagger, |w(T)| = w(|T|) = |T|^dagger, U_{w(T)} = U_T,
/// w(T) = U_T |w(T)|, U_T = w(T) |T|, ||T^dagger||_2 = || |T|^dagger ||_2.
CheckReport dual_polar(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

struct PowerGap {
  double absolute = 0.0;  // ||w(A^n) - w(A)^n||_F
  double relative = 0.0;  // same, relative residual convention
};

/// Both sides computed independently. Requires a square matrix and n >= 1.
PowerGap power_gap(const ComplexMatrix& a, int n, const ToleranceConfig& cfg = {});

/// w(ST) = w(S) w(T) when S is square EP and R(S) = R(T). If the hypotheses
/// do not verify, the residual is still reported but not asserted.
CheckReport product_law_check(const ComplexMatrix& s, const ComplexMatrix& t,
                              const ToleranceConfig& cfg = {});

/// w(T^dagger) w(T) = P_{R(T^*)}, w(T) w(T^dagger) = P_{R(T)}, w(P) = P for
/// the range projector P of T.
CheckReport dual_of_pinv_products(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// T^*T + P_{N(T)} is invertible with inverse T^dagger (T^*)^dagger + P_{N(T)}.
CheckReport regularized_inverse_check(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

}  // namespace cdual
