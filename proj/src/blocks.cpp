#include <cdual/blocks.hpp>

namespace cdual {

const char* to_string(BlockLayout l) {
  switch (l) {
    case BlockLayout::direct_sum: return "direct_sum";
    case BlockLayout::upper_1x2: return "upper_1x2";
    case BlockLayout::lower_triangular: return "lower_triangular";
    case BlockLayout::full_2x2: return "full_2x2";
  }
  return "unknown";
}

BlockLayout parse_block_layout(std::string_view name) {
  if (name == "direct_sum") return BlockLayout::direct_sum;
  if (name == "upper_1x2") return BlockLayout::upper_1x2;
  if (name == "lower_triangular") return BlockLayout::lower_triangular;
  if (name == "full_2x2") return BlockLayout::full_2x2;
  throw InvalidArgument("unknown block layout '" + std::string(name) + "'");
}

ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                           const ComplexMatrix& c, const ComplexMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols()) {
    throw ShapeError("block_matrix: blocks do not conform to a 2x2 partition");
  }
  ComplexMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out << a, b, c, d;
  return out;
}

ComplexMatrix BlockOperator::assemble() const { return block_matrix(t1, t2, t3, t4); }

BlockOperator BlockOperator::direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  return BlockOperator{BlockLayout::direct_sum, a, ComplexMatrix::Zero(a.rows(), b.cols()),
                       ComplexMatrix::Zero(b.rows(), a.cols()), b};
}

BlockOperator BlockOperator::upper(const ComplexMatrix& t1, const ComplexMatrix& t2) {
  if (t1.rows() != t2.rows()) throw ShapeError("upper block: T1 and T2 need equal row counts");
  const Eigen::Index k = t2.cols();
  return BlockOperator{BlockLayout::upper_1x2, t1, t2, ComplexMatrix::Zero(k, t1.cols()),
                       ComplexMatrix::Zero(k, k)};
}

BlockOperator BlockOperator::lower(const ComplexMatrix& t1, const ComplexMatrix& t3,
                                   const ComplexMatrix& t4) {
  if (t1.cols() != t3.cols() || t3.rows() != t4.rows()) {
    throw ShapeError("lower-triangular block: T1/T3 columns or T3/T4 rows differ");
  }
  return BlockOperator{BlockLayout::lower_triangular, t1,
                       ComplexMatrix::Zero(t1.rows(), t4.cols()), t3, t4};
}

BlockOperator BlockOperator::full(const ComplexMatrix& t1, const ComplexMatrix& t2,
                                  const ComplexMatrix& t3, const ComplexMatrix& t4) {
  BlockOperator op{BlockLayout::full_2x2, t1, t2, t3, t4};
  (void)op.assemble();  // shape validation
  return op;
}

namespace {

// ||P_{R(a)} P_{R(b)}||_F, zero iff the ranges are orthogonal.
double range_overlap(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& cfg) {
  return (range_projector(a, cfg).matrix * range_projector(b, cfg).matrix).norm();
}

HypothesisCheck orthogonal_ranges(std::string name, const ComplexMatrix& a,
                                  const ComplexMatrix& b, const ToleranceConfig& cfg) {
  const double r = range_overlap(a, b, cfg);
  return HypothesisCheck{std::move(name), r, r <= cfg.subspace_tol};
}

void apply_hypotheses(BlockResult& out) {
  for (const auto& h : out.hypotheses) {
    if (!h.verified) {
      out.report.hypotheses_met = false;
      out.report.notes.push_back("hypothesis-not-met: " + h.name + " (residual " +
                                 std::to_string(h.residual) + "); formulas not asserted");
    }
  }
}

ComplexMatrix zeros(Eigen::Index r, Eigen::Index c) { return ComplexMatrix::Zero(r, c); }

}  // namespace

BlockResult direct_sum_pinv(const ComplexMatrix& a, const ComplexMatrix& b,
                            const ToleranceConfig& cfg) {
  const ComplexMatrix t = BlockOperator::direct_sum(a, b).assemble();
  const ComplexMatrix ad = pinv(a, cfg);
  const ComplexMatrix bd = pinv(b, cfg);
  BlockResult out;
  out.pinv = block_matrix(ad, zeros(a.cols(), b.rows()), zeros(b.cols(), a.rows()), bd);
  out.dual = block_matrix(cauchy_dual(a, cfg), zeros(a.rows(), b.cols()),
                          zeros(b.rows(), a.cols()), cauchy_dual(b, cfg));
  out.report.add("pinv_structured_vs_dense", relative_residual(out.pinv, pinv(t, cfg)),
                 cfg.identity_tol);
  out.report.add("dual_structured_vs_dense", relative_residual(out.dual, cauchy_dual(t, cfg)),
                 cfg.identity_tol);
  return out;
}

BlockResult upper_block_pinv(const ComplexMatrix& t1, const ComplexMatrix& t2,
                             const ToleranceConfig& cfg) {
  const BlockOperator op = BlockOperator::upper(t1, t2);
  const ComplexMatrix t = op.assemble();
  const Eigen::Index h = t1.cols();
  const Eigen::Index k = t2.cols();

  BlockResult out;
  out.hypotheses.push_back(orthogonal_ranges("range_t1_perp_range_t2", t1, t2, cfg));
  apply_hypotheses(out);

  out.pinv = block_matrix(pinv(t1, cfg), zeros(h, k), pinv(t2, cfg), zeros(k, k));
  out.dual = block_matrix(cauchy_dual(t1, cfg), cauchy_dual(t2, cfg), zeros(k, h), zeros(k, k));
  const ComplexMatrix abs1 = psd_sqrt(t1.adjoint() * t1, cfg);
  const ComplexMatrix abs2 = psd_sqrt(t2.adjoint() * t2, cfg);
  out.abs_dual = block_matrix(cauchy_dual(abs1, cfg), zeros(h, k), zeros(k, h),
                              cauchy_dual(abs2, cfg));

  const double tol = cfg.identity_tol;
  out.report.add("pinv_structured_vs_dense", relative_residual(out.pinv, pinv(t, cfg)), tol);
  out.report.add("dual_structured_vs_dense", relative_residual(out.dual, cauchy_dual(t, cfg)), tol);
  const ComplexMatrix abs_t = psd_sqrt(t.adjoint() * t, cfg);
  out.report.add("abs_dual_structured_vs_dense",
                 relative_residual(*out.abs_dual, cauchy_dual(abs_t, cfg)), tol);
  return out;
}

BlockResult lower_tri_pinv(const ComplexMatrix& t1, const ComplexMatrix& t3,
                           const ComplexMatrix& t4, const ToleranceConfig& cfg) {
  const BlockOperator op = BlockOperator::lower(t1, t3, t4);
  const ComplexMatrix t = op.assemble();
  const Eigen::Index h = t1.cols();
  const double tol = cfg.identity_tol;

  BlockResult out;
  out.hypotheses.push_back(
      orthogonal_ranges("adjoint_range_t1_perp_adjoint_range_t3", t1.adjoint(), t3.adjoint(), cfg));
  {
    const ComplexMatrix sum =
        range_projector(t1.adjoint(), cfg).matrix + range_projector(t3.adjoint(), cfg).matrix;
    const double r = (sum - identity(h)).norm();
    out.hypotheses.push_back(HypothesisCheck{"adjoint_ranges_fill_domain", r, r <= cfg.subspace_tol});
  }
  out.hypotheses.push_back(orthogonal_ranges("range_t3_perp_range_t4", t3, t4, cfg));
  apply_hypotheses(out);

  const ComplexMatrix t1d = pinv(t1, cfg);
  const ComplexMatrix t3d = pinv(t3, cfg);
  const ComplexMatrix t4d = pinv(t4, cfg);

  const ComplexMatrix g1 = t1.adjoint() * t1;
  const ComplexMatrix g3 = t3.adjoint() * t3;
  const ComplexMatrix sd = pinv(g1 + g3, cfg);
  out.report.add("S.pinv_sum_rule", relative_residual(sd, pinv(g1, cfg) + pinv(g3, cfg)), tol);
  out.report.add("S.t1_pinv_eq_s_pinv_t1_adjoint", relative_residual(t1d, sd * t1.adjoint()), tol);
  out.report.add("S.t3_pinv_eq_s_pinv_t3_adjoint", relative_residual(t3d, sd * t3.adjoint()), tol);

  out.pinv = block_matrix(t1d, t3d, zeros(t4.cols(), t1.rows()), t4d);
  out.dual = block_matrix(cauchy_dual(t1, cfg), zeros(t1.rows(), t4.cols()),
                          cauchy_dual(t3, cfg), cauchy_dual(t4, cfg));
  out.report.add("pinv_structured_vs_dense", relative_residual(out.pinv, pinv(t, cfg)), tol);
  out.report.add("dual_structured_vs_dense", relative_residual(out.dual, cauchy_dual(t, cfg)), tol);
  return out;
}

BlockResult full_2x2_pinv(const ComplexMatrix& t1, const ComplexMatrix& t2,
                          const ComplexMatrix& t3, const ComplexMatrix& t4,
                          const ToleranceConfig& cfg) {
  const ComplexMatrix t = BlockOperator::full(t1, t2, t3, t4).assemble();
  const double tol = cfg.identity_tol;

  BlockResult out;
  out.hypotheses.push_back(orthogonal_ranges("adjoint_range_t1_perp_adjoint_range_t3",
                                             t1.adjoint(), t3.adjoint(), cfg));
  out.hypotheses.push_back(orthogonal_ranges("adjoint_range_t2_perp_adjoint_range_t4",
                                             t2.adjoint(), t4.adjoint(), cfg));
  out.hypotheses.push_back(orthogonal_ranges("range_t1_perp_range_t2", t1, t2, cfg));
  out.hypotheses.push_back(orthogonal_ranges("range_t3_perp_range_t4", t3, t4, cfg));
  apply_hypotheses(out);

  out.pinv = block_matrix(pinv(t1, cfg), pinv(t3, cfg), pinv(t2, cfg), pinv(t4, cfg));
  out.dual = block_matrix(cauchy_dual(t1, cfg), cauchy_dual(t2, cfg), cauchy_dual(t3, cfg),
                          cauchy_dual(t4, cfg));
  out.report.add("pinv_structured_vs_dense", relative_residual(out.pinv, pinv(t, cfg)), tol);
  out.report.add("dual_structured_vs_dense", relative_residual(out.dual, cauchy_dual(t, cfg)), tol);
  return out;
}

BlockResult block_pinv(const BlockOperator& op, const ToleranceConfig& cfg) {
  switch (op.layout) {
    case BlockLayout::direct_sum: return direct_sum_pinv(op.t1, op.t4, cfg);
    case BlockLayout::upper_1x2: return upper_block_pinv(op.t1, op.t2, cfg);
    case BlockLayout::lower_triangular: return lower_tri_pinv(op.t1, op.t3, op.t4, cfg);
    case BlockLayout::full_2x2: return full_2x2_pinv(op.t1, op.t2, op.t3, op.t4, cfg);
  }
  throw InvalidArgument("unknown block layout");
}

}  // namespace cdual
