#include <cdual/classify.hpp>

namespace cdual {

namespace {

Verdict residual_verdict(double residual, double tol) {
  return Verdict{true, residual <= tol, residual};
}

Verdict not_applicable() { return Verdict{false, false, 0.0}; }

}  // namespace

OperatorClassification classify(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  require_finite(a, "classify input");
  const double tol = cfg.identity_tol;
  const ComplexMatrix as = a.adjoint();
  OperatorClassification c;

  c.partial_isometry = residual_verdict(relative_residual(a * as * a, a), tol);

  if (a.rows() != a.cols()) {
    c.selfadjoint = c.normal = c.quasinormal_commutation = c.quasinormal_literal =
        c.ep = c.hypo_ep = c.psd = not_applicable();
    return c;
  }

  const ComplexMatrix gram = as * a;
  c.selfadjoint = residual_verdict(relative_residual(a, as), tol);
  c.normal = residual_verdict(relative_residual(a * as, gram), tol);
  c.quasinormal_commutation = residual_verdict(relative_residual(a * gram, gram * a), tol);
  c.quasinormal_literal = residual_verdict(relative_residual(gram * a, a * a * as), tol);

  const auto rel = subspace_relation(range_projector(a, cfg), range_projector(as, cfg), cfg);
  c.ep = Verdict{true, rel.relation == SubspaceRelation::equal, rel.difference};
  c.hypo_ep = Verdict{true, rel.relation != SubspaceRelation::incomparable, rel.containment};

  c.psd = c.selfadjoint;
  if (c.selfadjoint.holds) {
    const auto he = hermitian_eig(a, cfg);
    const double lowest = he.eigenvalues.size() ? he.eigenvalues(he.eigenvalues.size() - 1) : 0.0;
    c.psd.residual = lowest < 0 ? -lowest : 0.0;
    c.psd.holds = lowest >= -tol * (1.0 + a.norm());
  }
  return c;
}

bool is_selfadjoint(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return a.rows() == a.cols() && relative_residual(a, a.adjoint()) <= cfg.identity_tol;
}

bool is_normal(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  return a.rows() == a.cols() &&
         relative_residual(a * a.adjoint(), a.adjoint() * a) <= cfg.identity_tol;
}

bool is_ep(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  if (a.rows() != a.cols()) return false;
  return subspace_relation(range_projector(a, cfg), range_projector(a.adjoint(), cfg), cfg)
             .relation == SubspaceRelation::equal;
}

bool same_range(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& cfg) {
  if (a.rows() != b.rows()) return false;
  return subspace_relation(range_projector(a, cfg), range_projector(b, cfg), cfg).relation ==
         SubspaceRelation::equal;
}

}  // namespace cdual
