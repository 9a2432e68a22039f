#include <cdual/pinv.hpp>

#include <algorithm>

namespace cdual {

double PenroseResiduals::max() const { return std::max({r1, r2, r3, r4}); }

ComplexMatrix pinv(const SvdFactorization& f) {
  const Eigen::Index r = f.numerical_rank;
  const ComplexMatrix vr = f.v.leftCols(r);
  const ComplexMatrix ur = f.u.leftCols(r);
  RealVector inv(r);
  for (Eigen::Index i = 0; i < r; ++i) inv(i) = 1.0 / f.sigma(i);
  return vr * inv.cast<Complex>().asDiagonal() * ur.adjoint();
}

ComplexMatrix pinv(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return pinv(svd(a, cfg));
}

PenroseResiduals penrose_residuals(const ComplexMatrix& a, const ComplexMatrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw ShapeError("penrose_residuals: X must have the shape of A^*");
  }
  const ComplexMatrix ax = a * x;
  const ComplexMatrix xa = x * a;
  PenroseResiduals r;
  r.r1 = relative_residual(ax * a, a);
  r.r2 = relative_residual(xa * x, x);
  r.r3 = relative_residual(ax.adjoint(), ax);
  r.r4 = relative_residual(xa.adjoint(), xa);
  return r;
}

CheckReport mp_property_battery(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const double tol = cfg.identity_tol;
  const ComplexMatrix as = a.adjoint();
  const ComplexMatrix ad = pinv(a, cfg);
  const ComplexMatrix asd = pinv(as, cfg);

  CheckReport rep;
  rep.add("penrose", penrose_residuals(a, ad).max(), tol);
  rep.add("double_pinv", relative_residual(pinv(ad, cfg), a), tol);
  rep.add("adjoint_pinv", relative_residual(asd, ad.adjoint()), tol);
  rep.add("gram_pinv", relative_residual(pinv(as * a, cfg), ad * asd), tol);
  rep.add("cogram_pinv", relative_residual(pinv(a * as, cfg), asd * ad), tol);

  const ComplexMatrix pr_range = range_projector(a, cfg).matrix;
  const ComplexMatrix pr_corange = range_projector(as, cfg).matrix;
  rep.add("pinv_a_projector", relative_residual(ad * a, pr_corange), tol);
  rep.add("a_pinv_projector", relative_residual(a * ad, pr_range), tol);

  const auto nulls = subspace_relation(null_projector(ad, cfg), null_projector(as, cfg), cfg);
  rep.add("null_pinv_eq_null_adjoint", nulls.difference, cfg.subspace_tol);
  const auto ranges = subspace_relation(range_projector(ad, cfg), carrier_projector(a, cfg), cfg);
  rep.add("range_pinv_eq_carrier", ranges.difference, cfg.subspace_tol);
  // K = R(T) (+) N(T^*) orthogonally.
  rep.add("range_plus_null_adjoint",
          relative_residual(pr_range + null_projector(as, cfg).matrix, identity(a.rows())), tol);
  return rep;
}

PolarDecomposition polar(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  PolarDecomposition p;
  p.abs = psd_sqrt(a.adjoint() * a, cfg);
  p.u = a * pinv(p.abs, cfg);
  p.initial_projector = range_projector(p.abs, cfg);
  p.final_projector = range_projector(a, cfg);
  return p;
}

CheckReport polar_report(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const double tol = cfg.identity_tol;
  const PolarDecomposition p = polar(a, cfg);
  const PolarDecomposition ps = polar(a.adjoint(), cfg);
  const ComplexMatrix abs_pinv = pinv(p.abs, cfg);

  CheckReport rep;
  rep.add("factorization", relative_residual(p.u * p.abs, a), tol);
  rep.add("initial_space", relative_residual(p.u.adjoint() * p.u, p.initial_projector.matrix), tol);
  rep.add("final_space", relative_residual(p.u * p.u.adjoint(), p.final_projector.matrix), tol);
  rep.add("partial_isometry", relative_residual(p.u * p.u.adjoint() * p.u, p.u), tol);
  rep.add("abs_hermitian", relative_residual(p.abs.adjoint(), p.abs), tol);

  const SvdFactorization f = svd(a, cfg);
  rep.add("frame_route", relative_residual(p.u, f.range_basis() * f.corange_basis().adjoint()),
          tol);

  rep.add("pinv_via_polar", relative_residual(pinv(a, cfg), abs_pinv * ps.u), tol);
  rep.add("adjoint_pinv_via_polar", relative_residual(pinv(a.adjoint(), cfg), p.u * abs_pinv),
          tol);
  return rep;
}

}  // namespace cdual
