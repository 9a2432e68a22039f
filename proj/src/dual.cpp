#include <cdual/dual.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

namespace cdual {

const char* to_string(DualRoute r) {
  switch (r) {
    case DualRoute::product: return "product";
    case DualRoute::adjoint_pinv: return "adjoint_pinv";
    case DualRoute::regularized: return "regularized";
  }
  return "unknown";
}

DualRoute parse_dual_route(std::string_view name) {
  if (name == "product") return DualRoute::product;
  if (name == "adjoint_pinv") return DualRoute::adjoint_pinv;
  if (name == "regularized") return DualRoute::regularized;
  throw InvalidArgument("unknown dual route '" + std::string(name) +
                        "' (expected product, adjoint_pinv or regularized)");
}

ComplexMatrix cauchy_dual(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return pinv(a, cfg).adjoint();
}

namespace {

ComplexMatrix product_route(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return a * pinv(a.adjoint() * a, cfg);
}

struct RegularizedSolve {
  ComplexMatrix inverse;  // (T^*T + P_{N(T)})^{-1}
  ComplexMatrix null_projector;
  double condition = 0.0;
};

RegularizedSolve regularized_solve(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  RegularizedSolve out;
  out.null_projector = null_projector(a, cfg).matrix;
  const ComplexMatrix m = a.adjoint() * a + out.null_projector;
  const Eigen::Index n = m.rows();
  if (n == 0) return out;
  const SvdFactorization f = svd(m, cfg);
  const double smallest = f.sigma(n - 1);
  out.condition = smallest > 0.0 ? f.sigma(0) / smallest : INFINITY;
  if (!(out.condition <= kRegularizedConditionCap)) {
    throw RouteFailure("regularized dual route: T^*T + P_N(T) condition " +
                           std::to_string(out.condition) + " exceeds cap",
                       out.condition);
  }
  out.inverse = m.partialPivLu().solve(identity(n));
  return out;
}

}  // namespace

DualComputation dual(const ComplexMatrix& a, DualRoute route, const ToleranceConfig& cfg) {
  require_finite(a, "dual input");
  DualComputation out;
  out.route = route;
  switch (route) {
    case DualRoute::product:
      out.dual = product_route(a, cfg);
      break;
    case DualRoute::adjoint_pinv:
      out.dual = cauchy_dual(a, cfg);
      break;
    case DualRoute::regularized: {
      const RegularizedSolve solve = regularized_solve(a, cfg);
      out.dual = a * solve.inverse;
      out.condition = solve.condition;
      const ComplexMatrix expected =
          pinv(a, cfg) * pinv(a.adjoint(), cfg) + solve.null_projector;
      out.regularized_inverse_residual = relative_residual(solve.inverse, expected);
      break;
    }
  }
  const ComplexMatrix reference =
      route == DualRoute::adjoint_pinv ? product_route(a, cfg) : cauchy_dual(a, cfg);
  out.cross_route_residual = relative_residual(out.dual, reference);
  return out;
}

CheckReport dual_route_agreement(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const double tol = cfg.identity_tol;
  const ComplexMatrix w_prod = product_route(a, cfg);
  const ComplexMatrix w_adj = cauchy_dual(a, cfg);
  const RegularizedSolve solve = regularized_solve(a, cfg);
  const ComplexMatrix w_reg = a * solve.inverse;
  CheckReport rep;
  rep.add("product_vs_adjoint_pinv", relative_residual(w_prod, w_adj), tol);
  rep.add("regularized_vs_adjoint_pinv", relative_residual(w_reg, w_adj), tol);
  rep.add("product_vs_regularized", relative_residual(w_prod, w_reg), tol);
  return rep;
}

CheckReport dual_identity_battery(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const double tol = cfg.identity_tol;
  const ComplexMatrix as = a.adjoint();
  const ComplexMatrix w = cauchy_dual(a, cfg);
  const ComplexMatrix ws = cauchy_dual(as, cfg);
  const ComplexMatrix p_range = range_projector(a, cfg).matrix;
  const ComplexMatrix p_corange = range_projector(as, cfg).matrix;

  CheckReport rep;
  rep.add("product_form", relative_residual(product_route(a, cfg), w), tol);
  rep.add("adjoint_pinv_form", relative_residual(pinv(as, cfg), w), tol);
  rep.add("involution", relative_residual(cauchy_dual(w, cfg), a), tol);
  rep.add("adjoint_commutes", relative_residual(w.adjoint(), ws), tol);
  rep.add("adjoint_times_dual", relative_residual(as * w, p_corange), tol);
  rep.add("dual_adjoint_times_t", relative_residual(ws * a, p_corange), tol);
  rep.add("dual_times_adjoint", relative_residual(w * as, p_range), tol);
  rep.add("t_times_dual_adjoint", relative_residual(a * ws, p_range), tol);
  rep.add("gram_dual", relative_residual(w.adjoint() * w, cauchy_dual(as * a, cfg)), tol);
  return rep;
}

CheckReport dual_polar(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const double tol = cfg.identity_tol;
  const ComplexMatrix w = cauchy_dual(a, cfg);
  const PolarDecomposition p = polar(a, cfg);
  const PolarDecomposition pw = polar(w, cfg);
  const ComplexMatrix abs_pinv = pinv(p.abs, cfg);
  const ComplexMatrix w_abs = cauchy_dual(p.abs, cfg);

  CheckReport rep;
  rep.add("dual_eq_u_abs_pinv", relative_residual(w, p.u * abs_pinv), tol);
  rep.add("abs_dual_eq_dual_abs", relative_residual(pw.abs, w_abs), tol);
  rep.add("dual_abs_eq_abs_pinv", relative_residual(w_abs, abs_pinv), tol);
  rep.add("dual_partial_isometry", relative_residual(pw.u, p.u), tol);
  rep.add("dual_polar_factorization", relative_residual(w, p.u * pw.abs), tol);
  rep.add("u_eq_dual_abs", relative_residual(p.u, w * p.abs), tol);

  const double n_pinv = spectral_norm(pinv(a, cfg), cfg);
  const double n_abs_pinv = spectral_norm(abs_pinv, cfg);
  rep.add("pinv_norm_eq_abs_pinv_norm",
          std::abs(n_pinv - n_abs_pinv) / (1.0 + std::max(n_pinv, n_abs_pinv)), tol);
  return rep;
}

PowerGap power_gap(const ComplexMatrix& a, int n, const ToleranceConfig& cfg) {
  if (a.rows() != a.cols()) throw ShapeError("power_gap needs a square matrix");
  if (n < 1) throw InvalidArgument("power_gap exponent must be >= 1");
  const ComplexMatrix lhs = cauchy_dual(matrix_power(a, n), cfg);
  const ComplexMatrix rhs = matrix_power(cauchy_dual(a, cfg), n);
  return PowerGap{(lhs - rhs).norm(), relative_residual(lhs, rhs)};
}

CheckReport product_law_check(const ComplexMatrix& s, const ComplexMatrix& t,
                              const ToleranceConfig& cfg) {
  if (s.cols() != t.rows()) throw ShapeError("product_law_check: S and T are not conformable");
  CheckReport rep;
  if (s.rows() != s.cols() || !is_ep(s, cfg)) {
    rep.hypotheses_met = false;
    rep.notes.emplace_back("S is not a square EP matrix; identity not asserted");
  }
  if (!same_range(s, t, cfg)) {
    rep.hypotheses_met = false;
    rep.notes.emplace_back("R(S) != R(T); identity not asserted");
  }
  const ComplexMatrix lhs = cauchy_dual(s * t, cfg);
  const ComplexMatrix rhs = cauchy_dual(s, cfg) * cauchy_dual(t, cfg);
  rep.add("product_law", relative_residual(lhs, rhs), cfg.identity_tol);
  return rep;
}

CheckReport dual_of_pinv_products(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const double tol = cfg.identity_tol;
  const ComplexMatrix ad = pinv(a, cfg);
  const ComplexMatrix w = cauchy_dual(a, cfg);
  const ComplexMatrix w_pinv = cauchy_dual(ad, cfg);
  const Projector p_range = range_projector(a, cfg);
  const ComplexMatrix p_corange = range_projector(a.adjoint(), cfg).matrix;

  CheckReport rep;
  rep.add("dual_pinv_times_dual", relative_residual(w_pinv * w, p_corange), tol);
  rep.add("dual_times_dual_pinv", relative_residual(w * w_pinv, p_range.matrix), tol);
  rep.add("projector_self_dual", relative_residual(cauchy_dual(p_range.matrix, cfg), p_range.matrix),
          tol);
  return rep;
}

CheckReport regularized_inverse_check(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const DualComputation reg = dual(a, DualRoute::regularized, cfg);
  CheckReport rep;
  rep.add("regularized_inverse", *reg.regularized_inverse_residual, cfg.identity_tol);
  rep.add("regularized_route", reg.cross_route_residual, cfg.identity_tol);
  rep.note_value("condition", *reg.condition);
  return rep;
}

}  // namespace cdual
