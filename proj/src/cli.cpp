#include <cdual/cli.hpp>

#include <cdual/blocks.hpp>
#include <cdual/classify.hpp>
#include <cdual/dual.hpp>
#include <cdual/harness.hpp>
#include <cdual/io.hpp>
#include <cdual/models.hpp>
#include <cdual/pinv.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <optional>

namespace cdual {

namespace {

struct Options {
  bool pretty = false;
  ToleranceConfig cfg;
  std::string file;
  std::string route = "adjoint_pinv";
  std::string theorem;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  std::string size;
  std::string property;
  SearchParams search;
  std::size_t search_trials = 1000;
  int shift_n = 50;
  std::string kernel_spec;
  std::optional<int> dual_shift;
};

void emit(std::ostream& out, const Json& j, bool pretty) {
  out << (pretty ? j.dump(2) : j.dump()) << '\n';
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("CAUCHY_DUAL_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  const std::string_view text(env);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("CAUCHY_DUAL_SEED is not an unsigned integer: '" + std::string(text) + "'");
  }
  return v;
}

Json svd_summary(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  const SvdFactorization f = svd(a, cfg);
  return Json{{"numerical_rank", f.numerical_rank},
              {"rank_cutoff", f.rank_cutoff},
              {"singular_values", std::vector<double>(f.sigma.data(), f.sigma.data() + f.sigma.size())}};
}

int cmd_pinv(const Options& o, std::ostream& out) {
  const ComplexMatrix a = read_matrix_file(o.file);
  const ComplexMatrix x = pinv(a, o.cfg);
  const PenroseResiduals r = penrose_residuals(a, x);
  emit(out,
       Json{{"pinv", matrix_to_json(x)},
            {"svd", svd_summary(a, o.cfg)},
            {"penrose_residuals", {{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3}, {"r4", r.r4}}}},
       o.pretty);
  return kExitOk;
}

int cmd_dual(const Options& o, std::ostream& out) {
  const ComplexMatrix a = read_matrix_file(o.file);
  const DualComputation d = dual(a, parse_dual_route(o.route), o.cfg);
  Json j{{"dual", matrix_to_json(d.dual)},
         {"route", to_string(d.route)},
         {"cross_route_residual", d.cross_route_residual}};
  if (d.condition) j["condition"] = *d.condition;
  if (d.regularized_inverse_residual) j["regularized_inverse_residual"] = *d.regularized_inverse_residual;
  emit(out, j, o.pretty);
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const ComplexMatrix a = read_matrix_file(o.file);
  emit(out, Json{{"classification", classification_to_json(classify(a, o.cfg))}}, o.pretty);
  return kExitOk;
}

int cmd_polar(const Options& o, std::ostream& out) {
  const ComplexMatrix a = read_matrix_file(o.file);
  const PolarDecomposition p = polar(a, o.cfg);
  emit(out,
       Json{{"u", matrix_to_json(p.u)},
            {"abs", matrix_to_json(p.abs)},
            {"initial_projector", matrix_to_json(p.initial_projector.matrix)},
            {"final_projector", matrix_to_json(p.final_projector.matrix)},
            {"report", check_report_to_json(polar_report(a, o.cfg))}},
       o.pretty);
  return kExitOk;
}

int cmd_block(const Options& o, std::ostream& out) {
  const BlockOperator op = block_from_json(read_json_file(o.file));
  const BlockResult r = block_pinv(op, o.cfg);
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses)
    hyps.push_back({{"name", h.name}, {"residual", h.residual}, {"verified", h.verified}});
  Json j{{"layout", to_string(op.layout)},
         {"pinv", matrix_to_json(r.pinv)},
         {"dual", matrix_to_json(r.dual)},
         {"hypotheses", std::move(hyps)},
         {"report", check_report_to_json(r.report)}};
  if (r.abs_dual) j["abs_dual"] = matrix_to_json(*r.abs_dual);
  emit(out, j, o.pretty);
  return r.report.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const SizeParams size = SizeParams::parse(o.size);
  const VerificationReport rep = run_theorem(o.theorem, o.trials, o.seed, size, o.cfg);
  emit(out, rep.to_json(), o.pretty);
  return rep.verdict == RunVerdict::fail ? kExitVerificationFailed : kExitOk;
}

int cmd_verify_all(const Options& o, std::ostream& out) {
  const SizeParams size = SizeParams::parse(o.size);
  const auto reports = run_all(o.trials, o.seed, size, o.cfg);
  Json arr = Json::array();
  bool failed = false;
  double wall = 0.0;
  for (const auto& r : reports) {
    failed = failed || r.verdict == RunVerdict::fail;
    wall += r.wall_seconds;
    arr.push_back(r.to_json());
  }
  emit(out,
       Json{{"verdict", failed ? "fail" : "pass"},
            {"trials", o.trials},
            {"seed", o.seed},
            {"wall_time_s", wall},
            {"reports", std::move(arr)}},
       o.pretty);
  return failed ? kExitVerificationFailed : kExitOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  const SearchResult r = search_counterexample(o.property, o.search_trials, o.seed, o.search, o.cfg);
  emit(out, r.to_json(), o.pretty);
  return kExitOk;
}

int cmd_shift(const Options& o, std::ostream& out) {
  const ShiftTruncation s = weighted_shift(o.shift_n);
  const ComplexMatrix w = cauchy_dual(s.matrix, o.cfg);
  const ShiftDualPatternError e = shift_dual_pattern_error(w, o.shift_n);
  emit(out,
       Json{{"N", o.shift_n},
            {"operator", matrix_to_json(s.matrix)},
            {"dual", matrix_to_json(w)},
            {"pattern_error", e.pattern_error},
            {"off_pattern", e.off_pattern}},
       o.pretty);
  return kExitOk;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  const KernelSpec spec = kernel_spec_from_json(read_json_file(o.kernel_spec));
  const NystromResult nr = nystrom(spec, o.cfg);
  const SpectralDecomposition& d = nr.decomposition;
  auto vec = [](const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  Json j{{"spec", kernel_spec_to_json(spec)},
         {"eigenvalues", vec(d.eigenvalues)},
         {"nodes", vec(d.nodes)},
         {"weights", vec(d.quadrature_weights)}};
  if (o.dual_shift) {
    const int k = *o.dual_shift;
    const ComplexMatrix formula = spectral_dual_shift(d, k, o.cfg);
    const ComplexMatrix shifted = nr.op - d.eigenvalues(k - 1) * identity(nr.op.rows());
    j["dual_shift"] = Json{{"k", k},
                           {"lambda_k", d.eigenvalues(k - 1)},
                           {"matrix", matrix_to_json(formula)},
                           {"dense_route_residual",
                            relative_residual(formula, cauchy_dual(shifted, o.cfg))}};
  }
  emit(out, j, o.pretty);
  return kExitOk;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.seed = seed_from_env();
  } catch (const Error& e) {
    emit_error(err, "usage", e.what());
    return kExitUsage;
  }

  CLI::App app{"Moore-Penrose pseudoinverse and generalized Cauchy dual toolkit", "cdual"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "Indent the JSON output");
  app.add_option("--identity-tol", o.cfg.identity_tol, "Tolerance for identity residuals");
  app.add_option("--subspace-tol", o.cfg.subspace_tol, "Tolerance for projector comparisons");
  app.add_option("--rank-safety", o.cfg.rank_safety, "Safety factor of the numerical rank cutoff");

  auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose pseudoinverse of a matrix file");
  pinv_cmd->add_option("file", o.file, "Matrix JSON")->required();

  auto* dual_cmd = app.add_subcommand("dual", "Generalized Cauchy dual of a matrix file");
  dual_cmd->add_option("file", o.file, "Matrix JSON")->required();
  dual_cmd->add_option("--route", o.route, "product | adjoint_pinv | regularized")
      ->check(CLI::IsMember({"product", "adjoint_pinv", "regularized"}));

  auto* classify_cmd = app.add_subcommand("classify", "Operator class verdicts");
  classify_cmd->add_option("file", o.file, "Matrix JSON")->required();

  auto* polar_cmd = app.add_subcommand("polar", "Polar decomposition T = U|T|");
  polar_cmd->add_option("file", o.file, "Matrix JSON")->required();

  auto* block_cmd = app.add_subcommand("block", "Structured block pseudoinverse and dual");
  block_cmd->add_option("file", o.file, "Block operator JSON")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run one registered theorem");
  verify_cmd->add_option("--theorem", o.theorem, "Theorem id")->required();
  verify_cmd->add_option("--trials", o.trials, "Number of seeded trials");
  verify_cmd->add_option("--seed", o.seed, "Master seed");
  verify_cmd->add_option("--size", o.size, "Size parameters, e.g. dim=8,power=5,N=50,m=200");

  auto* verify_all_cmd = app.add_subcommand("verify-all", "Run every registered theorem");
  verify_all_cmd->add_option("--trials", o.trials, "Number of seeded trials per theorem");
  verify_all_cmd->add_option("--seed", o.seed, "Master seed");
  verify_all_cmd->add_option("--size", o.size, "Size parameters");

  auto* search_cmd = app.add_subcommand("search", "Counterexample search");
  search_cmd->add_option("--property", o.property, "dual-power | dual-product")->required();
  search_cmd->add_option("--generator", o.search.generator, "Input generator");
  search_cmd->add_option("--dim", o.search.dim, "Matrix dimension");
  search_cmd->add_option("--rank", o.search.rank, "Matrix rank");
  search_cmd->add_option("--power", o.search.power, "Exponent for dual-power");
  search_cmd->add_option("--trials", o.search_trials, "Number of seeded trials");
  search_cmd->add_option("--seed", o.seed, "Master seed");

  auto* example_cmd = app.add_subcommand("example", "Worked operator models");
  example_cmd->require_subcommand(1);
  auto* shift_cmd = example_cmd->add_subcommand("shift", "Truncated weighted shift");
  shift_cmd->add_option("--n", o.shift_n, "Number of 2x2 pairs N");
  auto* kernel_cmd = example_cmd->add_subcommand("kernel", "Nystrom discretization of a kernel");
  kernel_cmd->add_option("--spec", o.kernel_spec, "Kernel spec JSON")->required();
  kernel_cmd->add_option("--dual-shift", o.dual_shift, "Eigen-index k for w(T - lambda_k I)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    o.cfg.validate();
    if (pinv_cmd->parsed()) return cmd_pinv(o, out);
    if (dual_cmd->parsed()) return cmd_dual(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (polar_cmd->parsed()) return cmd_polar(o, out);
    if (block_cmd->parsed()) return cmd_block(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (verify_all_cmd->parsed()) return cmd_verify_all(o, out);
    if (search_cmd->parsed()) return cmd_search(o, out);
    if (shift_cmd->parsed()) return cmd_shift(o, out);
    if (kernel_cmd->parsed()) return cmd_kernel(o, out);
  } catch (const ParseError& e) {
    emit_error(err, "parse", e.what());
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    emit_error(err, "usage", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    emit_error(err, "computation", e.what());
    return kExitUsage;
  }
  emit_error(err, "usage", "no subcommand");
  return kExitUsage;
}

}  // namespace cdual
