#include <cdual/harness.hpp>

#include <cdual/blocks.hpp>
#include <cdual/classify.hpp>
#include <cdual/dual.hpp>
#include <cdual/generators.hpp>
#include <cdual/pinv.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace cdual {

namespace {

constexpr const char* kClosureNote =
    "closures of unbounded products are realized as plain matrix products";

// Draws trial dimensions and ranks from the trial seed.
struct Dims {
  Sampler rng;
  const SizeParams& size;

  Dims(std::uint64_t seed, const SizeParams& s) : rng(derive_seed(seed, 0xd1)), size(s) {}

  Eigen::Index dim(int lo = 2) { return rng.uniform_int(lo, std::max(lo, size.max_dim)); }
  Eigen::Index rank_upto(Eigen::Index hi) { return rng.uniform_int(0, static_cast<int>(hi)); }
  /// Rank strictly below hi when hi > 1, so the matrix is deficient.
  Eigen::Index deficient_rank(Eigen::Index hi) {
    return hi > 1 ? rng.uniform_int(1, static_cast<int>(hi) - 1) : 0;
  }
};

double flag(bool ok) { return ok ? 0.0 : 1.0; }

CheckReport subset(const CheckReport& rep, std::initializer_list<std::string_view> names) {
  CheckReport out;
  out.hypotheses_met = rep.hypotheses_met;
  out.notes = rep.notes;
  for (const auto& c : rep.checks)
    if (std::find(names.begin(), names.end(), c.name) != names.end()) out.checks.push_back(c);
  return out;
}

void require_hypotheses(CheckReport& rep, const BlockResult& r) {
  bool all = true;
  for (const auto& h : r.hypotheses) {
    rep.note_value("hypothesis." + h.name, h.residual);
    all = all && h.verified;
  }
  rep.add("hypotheses_verified", flag(all), 0.0);
}

// Equivalence theorems: positives from a constructed class on even trials,
// generic square matrices on odd trials.
ComplexMatrix equivalence_input(const TrialContext& ctx, EigenvalueKind positive_kind) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index n = d.dim();
  const Eigen::Index r = d.rank_upto(n);
  if (ctx.index % 2 == 0) return gen_normal_ep(n, r, derive_seed(ctx.seed, 1), positive_kind);
  return gen_random(n, n, std::max<Eigen::Index>(r, 1), derive_seed(ctx.seed, 1));
}

void coincidence(CheckReport& rep, const std::vector<std::pair<std::string, bool>>& verdicts) {
  bool same = true;
  for (const auto& [name, v] : verdicts) {
    rep.note_value("verdict." + name, v ? 1.0 : 0.0);
    same = same && (v == verdicts.front().second);
  }
  rep.add("verdicts_coincide", flag(same), 0.0);
}

// ---- individual theorem checks ----

CheckReport mp_properties(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  return mp_property_battery(t, ctx.cfg);
}

CheckReport direct_sums(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m1 = d.dim(1), n1 = d.dim(1), m2 = d.dim(1), n2 = d.dim(1);
  const ComplexMatrix a = gen_random(m1, n1, d.rank_upto(std::min(m1, n1)), derive_seed(ctx.seed, 1));
  ctx.record("A", a);
  const ComplexMatrix b = gen_random(m2, n2, d.rank_upto(std::min(m2, n2)), derive_seed(ctx.seed, 2));
  ctx.record("B", b);
  CheckReport rep;
  rep.merge(direct_sum_pinv(a, b, ctx.cfg).report, "direct_sum");

  // Powers of a quasinormal operator.
  const Eigen::Index n = d.dim();
  const ComplexMatrix t = gen_normal_ep(n, d.rank_upto(n), derive_seed(ctx.seed, 3));
  ctx.record("T", t);
  const ComplexMatrix gram = t.adjoint() * t;
  for (int p = 1; p <= ctx.size.max_power; ++p) {
    const ComplexMatrix tp = matrix_power(t, p);
    const ComplexMatrix gp = matrix_power(gram, p);
    const ComplexMatrix tps = tp.adjoint();
    const std::string tag = "power" + std::to_string(p);
    rep.add(tag + ".gram_power_eq_adjoint_power_product",
            relative_residual(gp, matrix_power(t.adjoint(), p) * tp), ctx.cfg.identity_tol);
    rep.add(tag + ".gram_power_eq_power_gram", relative_residual(gp, tps * tp), ctx.cfg.identity_tol);
    rep.add(tag + ".power_quasinormal", relative_residual(tp * (tps * tp), (tps * tp) * tp),
            ctx.cfg.identity_tol);
  }
  return rep;
}

CheckReport dual_identities(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  CheckReport rep = dual_identity_battery(t, ctx.cfg);
  rep.merge(dual_of_pinv_products(t, ctx.cfg), "pinv_products");
  rep.notes.emplace_back(kClosureNote);
  return rep;
}

CheckReport selfadjoint_characterization(const TrialContext& ctx) {
  const ComplexMatrix t = equivalence_input(ctx, EigenvalueKind::real);
  ctx.record("T", t);
  const double tol = ctx.cfg.identity_tol;
  const ComplexMatrix ts = t.adjoint();
  const ComplexMatrix w = cauchy_dual(t, ctx.cfg);
  const ComplexMatrix ws = cauchy_dual(ts, ctx.cfg);
  const double rb = relative_residual(t, (ws * t) * ts);
  const double rc = relative_residual(ts, t * ts * w);
  CheckReport rep;
  rep.note_value("residual.closure_form", rb);
  rep.note_value("residual.adjoint_form", rc);
  coincidence(rep, {{"selfadjoint", is_selfadjoint(t, ctx.cfg)},
                    {"closure_form", rb <= tol},
                    {"adjoint_form", rc <= tol}});
  return rep;
}

CheckReport selfadjoint_dual(const TrialContext& ctx) {
  const ComplexMatrix t = equivalence_input(ctx, EigenvalueKind::real);
  ctx.record("T", t);
  CheckReport rep;
  coincidence(rep, {{"T_selfadjoint", is_selfadjoint(t, ctx.cfg)},
                    {"dual_selfadjoint", is_selfadjoint(cauchy_dual(t, ctx.cfg), ctx.cfg)}});
  return rep;
}

CheckReport normal_dual(const TrialContext& ctx) {
  const ComplexMatrix t = equivalence_input(ctx, EigenvalueKind::complex);
  ctx.record("T", t);
  CheckReport rep;
  coincidence(rep, {{"T_normal", is_normal(t, ctx.cfg)},
                    {"dual_normal", is_normal(cauchy_dual(t, ctx.cfg), ctx.cfg)}});
  return rep;
}

CheckReport polar_and_dual(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  const double tol = ctx.cfg.identity_tol;
  CheckReport rep;
  rep.merge(polar_report(t, ctx.cfg), "polar");
  rep.merge(subset(dual_polar(t, ctx.cfg), {"dual_eq_u_abs_pinv", "pinv_norm_eq_abs_pinv_norm"}),
            "dual");

  // Positive operators: (A^dagger)^{1/2} = (A^{1/2})^dagger.
  const ComplexMatrix a = t.adjoint() * t;
  rep.add("positive.sqrt_pinv_commute",
          relative_residual(psd_sqrt(pinv(a, ctx.cfg), ctx.cfg), pinv(psd_sqrt(a, ctx.cfg), ctx.cfg)),
          tol);

  // Powers of an EP operator stay EP with the same range.
  const Eigen::Index k = d.dim();
  const ComplexMatrix e = gen_ep(k, d.rank_upto(k), derive_seed(ctx.seed, 2));
  ctx.record("E", e);
  const Projector range_e = range_projector(e, ctx.cfg);
  for (int p = 1; p <= ctx.size.max_power; ++p) {
    const ComplexMatrix ep = matrix_power(e, p);
    const std::string tag = "ep_power" + std::to_string(p);
    rep.add(tag + ".is_ep", flag(is_ep(ep, ctx.cfg)), 0.0);
    rep.add(tag + ".same_range",
            subspace_relation(range_projector(ep, ctx.cfg), range_e, ctx.cfg).difference,
            ctx.cfg.subspace_tol);
  }
  return rep;
}

CheckReport dual_abs(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  CheckReport rep = subset(dual_polar(t, ctx.cfg), {"abs_dual_eq_dual_abs", "dual_abs_eq_abs_pinv"});
  // (w(|T|))^2 = w(T^*T) = |w(T)|^2
  const ComplexMatrix w_abs = cauchy_dual(psd_sqrt(t.adjoint() * t, ctx.cfg), ctx.cfg);
  const ComplexMatrix w = cauchy_dual(t, ctx.cfg);
  rep.add("dual_abs_squared", relative_residual(w_abs * w_abs, cauchy_dual(t.adjoint() * t, ctx.cfg)),
          ctx.cfg.identity_tol);
  rep.add("abs_dual_squared", relative_residual(w.adjoint() * w, w_abs * w_abs), ctx.cfg.identity_tol);
  return rep;
}

CheckReport dual_polar_factor(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  CheckReport rep = subset(dual_polar(t, ctx.cfg),
                           {"u_eq_dual_abs", "dual_partial_isometry", "dual_polar_factorization"});
  rep.merge(subset(polar_report(cauchy_dual(t, ctx.cfg), ctx.cfg),
                   {"factorization", "initial_space", "final_space"}),
            "dual_polar");
  rep.notes.emplace_back(kClosureNote);
  return rep;
}

CheckReport t_abs_pinv(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  const ComplexMatrix abs = psd_sqrt(t.adjoint() * t, ctx.cfg);
  const ComplexMatrix prod = t * abs;
  CheckReport rep;
  rep.add("pinv_t_abs", relative_residual(pinv(prod, ctx.cfg), pinv(abs, ctx.cfg) * pinv(t, ctx.cfg)),
          ctx.cfg.identity_tol);
  rep.add("range_t_abs_eq_range_t",
          subspace_relation(range_projector(prod, ctx.cfg), range_projector(t, ctx.cfg), ctx.cfg)
              .difference,
          ctx.cfg.subspace_tol);
  return rep;
}

CheckReport abs_t_adjoint_pinv(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  const ComplexMatrix abs = psd_sqrt(t.adjoint() * t, ctx.cfg);
  const ComplexMatrix prod = abs * t.adjoint();
  CheckReport rep;
  rep.add("pinv_abs_t_adjoint",
          relative_residual(pinv(prod, ctx.cfg), pinv(t.adjoint(), ctx.cfg) * pinv(abs, ctx.cfg)),
          ctx.cfg.identity_tol);
  rep.add("range_abs_t_adjoint_eq_range_t_adjoint",
          subspace_relation(range_projector(prod, ctx.cfg), range_projector(t.adjoint(), ctx.cfg),
                            ctx.cfg)
              .difference,
          ctx.cfg.subspace_tol);
  return rep;
}

CheckReport abs_commutation_equivalence(const TrialContext& ctx) {
  const ComplexMatrix t = equivalence_input(ctx, EigenvalueKind::real);
  ctx.record("T", t);
  const double tol = ctx.cfg.identity_tol;
  const ComplexMatrix abs = psd_sqrt(t.adjoint() * t, ctx.cfg);
  const ComplexMatrix w = cauchy_dual(t, ctx.cfg);
  const ComplexMatrix abs_w = psd_sqrt(w.adjoint() * w, ctx.cfg);
  const double r_t = relative_residual(abs * t.adjoint(), t * abs);
  const double r_w = relative_residual(abs_w * w.adjoint(), w * abs_w);
  CheckReport rep;
  rep.note_value("residual.T", r_t);
  rep.note_value("residual.dual", r_w);
  coincidence(rep, {{"T", r_t <= tol}, {"dual", r_w <= tol}});
  return rep;
}

CheckReport quasinormal_ep_products(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index n = d.dim();
  const ComplexMatrix t = gen_normal_ep(n, d.rank_upto(n), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  const double tol = ctx.cfg.identity_tol;
  const ComplexMatrix gram = t.adjoint() * t;
  const ComplexMatrix gram_pinv = pinv(gram, ctx.cfg);
  CheckReport rep;
  rep.add("commutes_with_gram_pinv", relative_residual(t * gram_pinv, gram_pinv * t), tol);
  for (int p = 1; p <= ctx.size.max_power; ++p) {
    rep.add("gram_power" + std::to_string(p) + ".pinv",
            relative_residual(pinv(matrix_power(gram, p), ctx.cfg), matrix_power(gram_pinv, p)), tol);
  }
  return rep;
}

CheckReport regularized_inverse(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index m = d.dim(1), n = d.dim(1);
  const ComplexMatrix t = gen_random(m, n, d.rank_upto(std::min(m, n)), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  CheckReport rep = regularized_inverse_check(t, ctx.cfg);
  rep.merge(dual_route_agreement(t, ctx.cfg), "routes");
  return rep;
}

CheckReport power_law(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index n = d.dim();
  const ComplexMatrix t = gen_normal_ep(n, d.rank_upto(n), derive_seed(ctx.seed, 1));
  ctx.record("T", t);
  const double tol = ctx.cfg.identity_tol;
  const Projector null_t = null_projector(t, ctx.cfg);
  CheckReport rep;
  for (int p = 1; p <= ctx.size.max_power; ++p) {
    const std::string tag = "power" + std::to_string(p);
    const PowerGap g = power_gap(t, p, ctx.cfg);
    rep.add(tag + ".gap", g.relative, tol);
    rep.note_value(tag + ".gap_absolute", g.absolute);
    rep.add(tag + ".same_null_space",
            subspace_relation(null_projector(matrix_power(t, p), ctx.cfg), null_t, ctx.cfg).difference,
            ctx.cfg.subspace_tol);
  }
  // Selfadjoint special case: w(S^2) = w(S)^2.
  const ComplexMatrix s = gen_normal_ep(n, d.rank_upto(n), derive_seed(ctx.seed, 2), EigenvalueKind::real);
  ctx.record("S", s);
  rep.add("selfadjoint_square_gap", power_gap(s, 2, ctx.cfg).relative, tol);
  rep.notes.emplace_back(
      "quasinormal EP inputs are generated as normal rank-deficient matrices; the two classes "
      "coincide in finite dimensions");
  return rep;
}

ComplexMatrix counterexample_matrix() {
  ComplexMatrix t(2, 2);
  t << 1.0, 0.0, 1.0, 0.0;
  return t;
}

CheckReport rank_one_counterexample(const TrialContext& ctx) {
  const ComplexMatrix t = counterexample_matrix();
  ctx.record("T", t);
  const ComplexMatrix w = cauchy_dual(t, ctx.cfg);
  const PowerGap g = power_gap(t, 2, ctx.cfg);
  CheckReport rep;
  rep.add("t_squared_eq_t", (t * t - t).norm(), 0.0);
  rep.add("dual_eq_half_t", (w - 0.5 * t).cwiseAbs().maxCoeff(), 1e-12);
  rep.add("gap_above", g.absolute, 0.3, Bound::above);
  rep.add("gap_eq_quarter_norm", std::abs(g.absolute - 0.25 * t.norm()), 1e-12);
  return rep;
}

CheckReport product_law(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index n = d.dim();
  const auto [s, t] = gen_range_matched_pair(n, d.rank_upto(n), derive_seed(ctx.seed, 1));
  ctx.record("S", s);
  ctx.record("T", t);
  CheckReport rep = product_law_check(s, t, ctx.cfg);
  rep.add("hypotheses_verified", flag(rep.hypotheses_met), 0.0);
  return rep;
}

CheckReport upper_block(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index h = d.dim(1), k = d.dim(1);
  const Eigen::Index r2 = d.rank_upto(std::min(h, k));
  const Eigen::Index r1 = d.rank_upto(h - r2);
  const BlockOperator op =
      gen_orthogonal_range_blocks(BlockLayout::upper_1x2, {h, k}, {r1, r2, 0, 0}, derive_seed(ctx.seed, 1));
  ctx.record("block", block_to_json(op));
  const BlockResult r = upper_block_pinv(op.t1, op.t2, ctx.cfg);
  CheckReport rep = r.report;
  require_hypotheses(rep, r);
  return rep;
}

CheckReport lower_block(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index h = d.dim(1), k = d.dim(1);
  const Eigen::Index r3 = d.rank_upto(std::min(h, k));
  const Eigen::Index r1 = h - r3;
  const Eigen::Index r4 = d.rank_upto(k - r3);
  const BlockOperator op = gen_orthogonal_range_blocks(BlockLayout::lower_triangular, {h, k},
                                                       {r1, 0, r3, r4}, derive_seed(ctx.seed, 1));
  ctx.record("block", block_to_json(op));
  const BlockResult r = lower_tri_pinv(op.t1, op.t3, op.t4, ctx.cfg);
  CheckReport rep = r.report;
  require_hypotheses(rep, r);
  rep.notes.emplace_back(kClosureNote);
  return rep;
}

CheckReport full_block(const TrialContext& ctx) {
  Dims d(ctx.seed, ctx.size);
  const Eigen::Index h = d.dim(1), k = d.dim(1);
  const Eigen::Index r1 = d.rank_upto(h);
  const Eigen::Index r2 = d.rank_upto(std::min(k, h - r1));
  const Eigen::Index r3 = d.rank_upto(std::min(h - r1, k));
  const Eigen::Index r4 = d.rank_upto(std::min(k - r2, k - r3));
  const BlockOperator op = gen_orthogonal_range_blocks(BlockLayout::full_2x2, {h, k},
                                                       {r1, r2, r3, r4}, derive_seed(ctx.seed, 1));
  ctx.record("block", block_to_json(op));
  const BlockResult r = full_2x2_pinv(op.t1, op.t2, op.t3, op.t4, ctx.cfg);
  CheckReport rep = r.report;
  require_hypotheses(rep, r);
  return rep;
}

CheckReport shift_example(const TrialContext& ctx) {
  const int pairs = ctx.size.shift_pairs;
  ctx.record("N", Json(pairs));
  const ShiftTruncation s = weighted_shift(pairs);
  const ComplexMatrix& t = s.matrix;
  CheckReport rep;
  for (DualRoute route : {DualRoute::adjoint_pinv, DualRoute::product, DualRoute::regularized}) {
    const ComplexMatrix w = dual(t, route, ctx.cfg).dual;
    const ShiftDualPatternError e = shift_dual_pattern_error(w, pairs);
    rep.add(std::string(to_string(route)) + ".pattern_error", e.pattern_error, 1e-12);
    rep.add(std::string(to_string(route)) + ".off_pattern", e.off_pattern, 1e-14);
  }
  // N(T) is spanned by the odd basis vectors.
  ComplexMatrix odd = ComplexMatrix::Zero(t.rows(), t.cols());
  for (Eigen::Index i = 0; i < t.rows(); i += 2) odd(i, i) = 1.0;
  rep.add("null_space_odd_basis", (null_projector(t, ctx.cfg).matrix - odd).norm(),
          ctx.cfg.subspace_tol);
  // T^2 = 0, hence w(T^2) = 0; w(T)^2 vanishes as well.
  const ComplexMatrix t2 = t * t;
  const ComplexMatrix w = cauchy_dual(t, ctx.cfg);
  rep.add("t_squared_zero", t2.norm(), 0.0);
  rep.add("dual_of_t_squared_zero", cauchy_dual(t2, ctx.cfg).norm(), 0.0);
  rep.add("dual_squared_zero", (w * w).norm(), 1e-14);
  return rep;
}

CheckReport kernel_example(const TrialContext& ctx) {
  KernelSpec spec;
  spec.kernel = "min";
  spec.m = ctx.size.nystrom_nodes;
  ctx.record("kernel", kernel_spec_to_json(spec));
  const NystromResult nr = nystrom(spec, ctx.cfg);
  const RealVector& lambda = nr.decomposition.eigenvalues;
  CheckReport rep;
  for (int k = 1; k <= 5; ++k) {
    const double exact = min_kernel_eigenvalue(k);
    const double got = lambda(k - 1);
    const std::string tag = "eigenvalue" + std::to_string(k);
    rep.add(tag, std::abs(got - exact) / (1.0 + std::max(std::abs(got), std::abs(exact))), 1e-4);
    rep.note_value(tag + ".pointwise_relative", std::abs(got - exact) / exact);
  }
  const ComplexMatrix formula = spectral_dual_shift(nr.decomposition, 1, ctx.cfg);
  const ComplexMatrix shifted = nr.op - lambda(0) * identity(nr.op.rows());
  rep.add("dual_shift_vs_dense", relative_residual(formula, cauchy_dual(shifted, ctx.cfg)), 1e-6);
  return rep;
}

std::vector<TheoremEntry> build_registry() {
  std::vector<TheoremEntry> r;
  auto add = [&](std::string id, std::string summary, bool det,
                 CheckReport (*fn)(const TrialContext&)) {
    r.push_back(TheoremEntry{std::move(id), std::move(summary), det, fn});
  };
  add("thm-1.7", "Moore-Penrose property list in finite-dimensional form", false, mp_properties);
  add("thm-1.8", "direct-sum pseudoinverse and dual; power identities of quasinormal operators",
      false, direct_sums);
  add("prop-2.1", "generalized Cauchy dual identities and duals of pseudoinverse products", false,
      dual_identities);
  add("thm-2.2", "T = T^* iff T = (w(T^*)T)T^* iff T^* = T T^* w(T)", false,
      selfadjoint_characterization);
  add("thm-2.3", "T selfadjoint iff w(T) selfadjoint", false, selfadjoint_dual);
  add("thm-2.4", "T normal iff w(T) normal", false, normal_dual);
  add("thm-2.6",
      "w(T) = U_T |T|^dagger, norm identity, polar pseudoinverse lemma, positive square roots, EP powers",
      false, polar_and_dual);
  add("cor-2.9", "|w(T)| = w(|T|) = |T|^dagger", false, dual_abs);
  add("thm-2.10", "U_T = w(T)|T| and the polar decomposition of w(T)", false, dual_polar_factor);
  add("lemma-2.13", "(T|T|)^dagger = |T|^dagger T^dagger and R(T|T|) = R(T)", false, t_abs_pinv);
  add("lemma-2.14", "(|T|T^*)^dagger = (T^*)^dagger |T|^dagger and R(|T|T^*) = R(T^*)", false,
      abs_t_adjoint_pinv);
  add("thm-2.15", "|T|T^* = T|T| iff |w(T)|w(T)^* = w(T)|w(T)|", false,
      abs_commutation_equivalence);
  add("lemma-2.16", "quasinormal EP: T (T^*T)^dagger = (T^*T)^dagger T and pseudoinverse powers",
      false, quasinormal_ep_products);
  add("lemma-2.17", "(T^*T + P_N(T))^{-1} = T^dagger (T^*)^dagger + P_N(T); route agreement", false,
      regularized_inverse);
  add("thm-2.18", "w(T^n) = w(T)^n for quasinormal EP T", false, power_law);
  add("remark-counterexample", "T = [[1,0],[1,0]]: w(T^2) = w(T) != w(T)^2", true,
      rank_one_counterexample);
  add("thm-2.20", "w(ST) = w(S)w(T) for EP S with R(S) = R(T)", false, product_law);
  add("thm-2.22", "[[T1,T2],[0,0]]: structured pseudoinverse, dual and w(|T|)", false, upper_block);
  add("lower-tri", "[[T1,0],[T3,T4]]: structured pseudoinverse, S^dagger sum rule, dual", false,
      lower_block);
  add("full-2x2", "[[T1,T2],[T3,T4]] under four orthogonality conditions", false, full_block);
  add("ex-1.8", "weighted shift: w(T) e_2n = e_{2n-1}/n", true, shift_example);
  add("ex-1.9", "Nystrom min kernel: spectrum and the spectral dual-shift formula", true,
      kernel_example);
  return r;
}

}  // namespace

const std::vector<TheoremEntry>& theorem_registry() {
  static const std::vector<TheoremEntry> registry = build_registry();
  return registry;
}

std::vector<std::string> theorem_ids() {
  std::vector<std::string> ids;
  for (const auto& e : theorem_registry()) ids.push_back(e.id);
  return ids;
}

UnknownTheorem::UnknownTheorem(const std::string& id)
    : InvalidArgument([&] {
        std::string msg = "unknown theorem id '" + id + "'; registered ids:";
        for (const auto& known : theorem_ids()) msg += " " + known;
        return msg;
      }()) {}

const char* to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::pass: return "pass";
    case RunVerdict::fail: return "fail";
    case RunVerdict::hypothesis_not_met: return "hypothesis-not-met";
  }
  return "unknown";
}

SizeParams SizeParams::parse(const std::string& text) {
  SizeParams s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("size parameter '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("size parameter '" + item + "' is not an integer");
    }
    if (value < 1) throw InvalidArgument("size parameter '" + item + "' must be positive");
    if (key == "dim") s.max_dim = value;
    else if (key == "power") s.max_power = value;
    else if (key == "N") s.shift_pairs = value;
    else if (key == "m") s.nystrom_nodes = value;
    else throw InvalidArgument("unknown size parameter '" + key + "' (dim, power, N, m)");
  }
  return s;
}

Json SizeParams::to_json() const {
  return Json{{"dim", max_dim}, {"power", max_power}, {"N", shift_pairs}, {"m", nystrom_nodes}};
}

Json tolerance_to_json(const ToleranceConfig& cfg) {
  return Json{{"rank_safety", cfg.rank_safety}, {"identity_tol", cfg.identity_tol},
              {"subspace_tol", cfg.subspace_tol}, {"orth_tol", cfg.orth_tol},
              {"recon_tol", cfg.recon_tol}};
}

VerificationReport run_theorem(const std::string& theorem_id, std::size_t trials,
                               std::uint64_t seed, const SizeParams& size,
                               const ToleranceConfig& cfg) {
  const auto& reg = theorem_registry();
  const auto it = std::find_if(reg.begin(), reg.end(),
                               [&](const TheoremEntry& e) { return e.id == theorem_id; });
  if (it == reg.end()) throw UnknownTheorem(theorem_id);
  cfg.validate();

  VerificationReport rep;
  rep.theorem_id = it->id;
  rep.summary = it->summary;
  rep.seed = seed;
  rep.generator = kGeneratorName;
  rep.tolerances = cfg;
  rep.size = size;
  rep.trials = it->deterministic ? std::min<std::size_t>(trials, 1) : trials;

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < rep.trials; ++i) {
    TrialCase c;
    c.index = i;
    c.seed = derive_seed(seed, i);
    Json inputs = Json::object();
    TrialContext ctx{i, c.seed, size, cfg, &inputs};
    try {
      c.report = it->run(ctx);
    } catch (const std::exception& e) {
      c.error = e.what();
    }
    if (!c.passed()) c.inputs = std::move(inputs);
    rep.cases.push_back(std::move(c));
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool any_fail = false;
  bool all_unmet = !rep.cases.empty();
  for (const auto& c : rep.cases) {
    rep.max_residual = std::max(rep.max_residual, c.report.max_residual());
    any_fail = any_fail || !c.passed();
    all_unmet = all_unmet && !c.report.hypotheses_met;
  }
  rep.verdict = any_fail ? RunVerdict::fail
                         : (all_unmet ? RunVerdict::hypothesis_not_met : RunVerdict::pass);
  return rep;
}

std::vector<VerificationReport> run_all(std::size_t trials, std::uint64_t seed,
                                        const SizeParams& size, const ToleranceConfig& cfg) {
  std::vector<VerificationReport> out;
  for (const auto& id : theorem_ids()) out.push_back(run_theorem(id, trials, seed, size, cfg));
  return out;
}

Json VerificationReport::to_json() const {
  // Per-check extremes across trials.
  struct Extreme {
    double worst = 0.0;
    double threshold = 0.0;
    Bound bound = Bound::at_most;
    bool asserted = true;
    bool seen = false;
  };
  std::map<std::string, Extreme> extremes;
  Json cases_json = Json::array();
  for (const auto& c : cases) {
    for (const auto& chk : c.report.checks) {
      Extreme& e = extremes[chk.name];
      const bool worse = !e.seen || (chk.bound == Bound::at_most ? chk.value > e.worst
                                                                 : chk.value < e.worst);
      if (worse) e.worst = chk.value;
      e.threshold = chk.threshold;
      e.bound = chk.bound;
      e.asserted = e.asserted && chk.asserted;
      e.seen = true;
    }
    Json cj{{"trial", c.index},
            {"seed", c.seed},
            {"max_residual", c.report.max_residual()},
            {"passed", c.passed()},
            {"hypotheses_met", c.report.hypotheses_met}};
    if (!c.error.empty()) cj["error"] = c.error;
    if (!c.passed()) {
      cj["report"] = check_report_to_json(c.report);
      if (c.inputs) cj["inputs"] = *c.inputs;
    }
    cases_json.push_back(std::move(cj));
  }
  Json summary = Json::array();
  for (const auto& [name, e] : extremes) {
    summary.push_back({{"name", name},
                       {"worst", e.worst},
                       {"threshold", e.threshold},
                       {"bound", e.bound == Bound::at_most ? "at_most" : "above"},
                       {"asserted", e.asserted}});
  }
  return Json{{"theorem_id", theorem_id},
              {"summary", this->summary},
              {"trials", trials},
              {"seed", seed},
              {"generator", generator},
              {"tolerances", tolerance_to_json(tolerances)},
              {"size", size.to_json()},
              {"max_residual", max_residual},
              {"verdict", to_string(verdict)},
              {"wall_time_s", wall_seconds},
              {"notes", Json::array({kClosureNote})},
              {"checks", std::move(summary)},
              {"cases", std::move(cases_json)}};
}

Json classification_to_json(const OperatorClassification& c) {
  auto v = [](const Verdict& x) -> Json {
    if (!x.applicable) return Json{{"applicable", false}};
    return Json{{"holds", x.holds}, {"residual", x.residual}};
  };
  return Json{{"selfadjoint", v(c.selfadjoint)},
              {"normal", v(c.normal)},
              {"quasinormal_commutation", v(c.quasinormal_commutation)},
              {"quasinormal_literal", v(c.quasinormal_literal)},
              {"ep", v(c.ep)},
              {"hypo_ep", v(c.hypo_ep)},
              {"partial_isometry", v(c.partial_isometry)},
              {"psd", v(c.psd)}};
}

SearchResult search_counterexample(const std::string& property_id, std::size_t trials,
                                   std::uint64_t seed, const SearchParams& params,
                                   const ToleranceConfig& cfg) {
  const bool power = property_id == "dual-power";
  const bool product = property_id == "dual-product";
  if (!power && !product) {
    throw InvalidArgument("unknown property '" + property_id + "' (dual-power, dual-product)");
  }
  const std::string& gen = params.generator;
  if (power && gen != "random" && gen != "normal-ep") {
    throw InvalidArgument("dual-power generator must be random or normal-ep, got '" + gen + "'");
  }
  if (product && gen != "random" && gen != "range-matched") {
    throw InvalidArgument("dual-product generator must be random or range-matched, got '" + gen + "'");
  }
  if (params.dim < 1 || params.rank < 0 || params.rank > params.dim || params.power < 1) {
    throw InvalidArgument("search parameters out of range");
  }

  SearchResult out;
  out.property_id = property_id;
  out.params = params;
  out.trials = trials;
  out.seed = seed;
  const Eigen::Index n = params.dim;
  const Eigen::Index r = params.rank;
  bool first = true;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    double value = 0.0;
    Json inputs;
    Json classification;
    if (power) {
      const ComplexMatrix t =
          gen == "random" ? gen_random(n, n, r, s) : gen_normal_ep(n, r, s);
      value = power_gap(t, params.power, cfg).absolute;
      inputs = Json{{"T", matrix_to_json(t)}};
      if (first || value > out.best_value) classification = classification_to_json(classify(t, cfg));
    } else {
      ComplexMatrix sm, tm;
      if (gen == "random") {
        sm = gen_random(n, n, r, s);
        tm = gen_random(n, n, r, derive_seed(s, 1));
      } else {
        std::tie(sm, tm) = gen_range_matched_pair(n, r, s);
      }
      value = (cauchy_dual(sm * tm, cfg) - cauchy_dual(sm, cfg) * cauchy_dual(tm, cfg)).norm();
      inputs = Json{{"S", matrix_to_json(sm)}, {"T", matrix_to_json(tm)}};
      if (first || value > out.best_value) {
        classification = Json{{"S", classification_to_json(classify(sm, cfg))},
                              {"T", classification_to_json(classify(tm, cfg))},
                              {"same_range", same_range(sm, tm, cfg)}};
      }
    }
    if (first || value > out.best_value) {
      out.best_value = value;
      out.best_trial = i;
      out.best_inputs = std::move(inputs);
      out.best_classification = std::move(classification);
      first = false;
    }
  }
  return out;
}

Json SearchResult::to_json() const {
  return Json{{"property_id", property_id},
              {"generator", params.generator},
              {"dim", params.dim},
              {"rank", params.rank},
              {"power", params.power},
              {"trials", trials},
              {"seed", seed},
              {"rng", kGeneratorName},
              {"best_trial", best_trial},
              {"best_value", best_value},
              {"best_inputs", best_inputs},
              {"best_classification", best_classification}};
}

}  // namespace cdual
