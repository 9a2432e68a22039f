// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cdual/blocks.hpp>
#include <cdual/cli.hpp>
#include <cdual/dual.hpp>
#include <cdual/generators.hpp>
#include <cdual/harness.hpp>
#include <cdual/models.hpp>
#include <cdual/pinv.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace cdual;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Largest value of checks whose name ends with `suffix`, over all cases.
double worst_check(const VerificationReport& r, const std::string& suffix) {
  double m = 0.0;
  for (const auto& c : r.cases)
    for (const auto& chk : c.report.checks)
      if (chk.name.size() >= suffix.size() &&
          chk.name.compare(chk.name.size() - suffix.size(), suffix.size(), suffix) == 0)
        m = std::max(m, chk.value);
  return m;
}

Outcome penrose_soundness() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::uint64_t seed = derive_seed(kDefaultSeed, i);
    Sampler s(seed);
    const int m = s.uniform_int(2, 12);
    const int n = s.uniform_int(2, 12);
    const int r = s.uniform_int(1, std::min(m, n) - 1);
    const ComplexMatrix a = gen_random(m, n, r, derive_seed(seed, 1));
    worst = std::max(worst, penrose_residuals(a, pinv(a)).max());
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-10 && dt < 5.0,
          "max Penrose residual " + fmt("%.2e", worst) + ", " + fmt("%.3f", dt) + " s"};
}

Outcome counterexample() {
  ComplexMatrix t(2, 2);
  t << 1.0, 0.0, 1.0, 0.0;
  const double entry = (cauchy_dual(t) - 0.5 * t).cwiseAbs().maxCoeff();
  const double gap = power_gap(t, 2).absolute;
  const double off = std::abs(gap - 0.25 * t.norm());
  return {entry <= 1e-12 && off <= 1e-12,
          "max|w(T)-T/2| " + fmt("%.1e", entry) + ", gap " + fmt("%.6f", gap) +
              ", |gap - |T|_F/4| " + fmt("%.1e", off)};
}

Outcome weighted_shift_example() {
  const ShiftTruncation s = weighted_shift(50);
  double pattern = 0.0, off = 0.0;
  for (DualRoute r : {DualRoute::adjoint_pinv, DualRoute::product, DualRoute::regularized}) {
    const ShiftDualPatternError e = shift_dual_pattern_error(dual(s.matrix, r).dual, 50);
    pattern = std::max(pattern, e.pattern_error);
    off = std::max(off, e.off_pattern);
  }
  return {pattern <= 1e-12 && off <= 1e-14,
          "pattern error " + fmt("%.1e", pattern) + ", off-pattern " + fmt("%.1e", off)};
}

Outcome kernel_example() {
  KernelSpec spec;  // min kernel on [0, 1], m = 200, trapezoid
  const NystromResult nr = nystrom(spec);
  double rel = 0.0, pointwise = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double exact = min_kernel_eigenvalue(k);
    const double got = nr.decomposition.eigenvalues(k - 1);
    rel = std::max(rel, std::abs(got - exact) / (1.0 + std::max(std::abs(got), exact)));
    pointwise = std::max(pointwise, std::abs(got - exact) / exact);
  }
  const ComplexMatrix shifted =
      nr.op - nr.decomposition.eigenvalues(0) * ComplexMatrix::Identity(nr.op.rows(), nr.op.rows());
  const double shift =
      relative_residual(spectral_dual_shift(nr.decomposition, 1), cauchy_dual(shifted));
  return {rel <= 1e-4 && shift <= 1e-6,
          "eigenvalue error " + fmt("%.2e", rel) + " (pointwise " + fmt("%.2e", pointwise) +
              "), dual-shift vs dense " + fmt("%.2e", shift)};
}

Outcome identity_battery() {
  double worst = 0.0;
  bool ok = true;
  std::string failed;
  for (const char* id : {"prop-2.1", "thm-1.7", "lemma-2.13", "lemma-2.14", "thm-2.6", "cor-2.9",
                         "thm-2.10", "lemma-2.17"}) {
    const VerificationReport r = run_theorem(id, 100, kDefaultSeed);
    worst = std::max(worst, r.max_residual);
    if (r.verdict != RunVerdict::pass || r.max_residual > 1e-9) {
      ok = false;
      failed += std::string(" ") + id;
    }
  }
  return {ok, "8 entries x 100 trials, max residual " + fmt("%.2e", worst) +
                  (failed.empty() ? "" : ", failing:" + failed)};
}

Outcome equivalences() {
  int disagreements = 0, positives = 0, cases = 0;
  for (const char* id : {"thm-2.2", "thm-2.3", "thm-2.4", "thm-2.15"}) {
    const VerificationReport r = run_theorem(id, 200, kDefaultSeed);
    for (const auto& c : r.cases) {
      ++cases;
      if (!c.passed()) ++disagreements;
      for (const auto& chk : c.report.checks)
        if (chk.name.rfind("verdict.", 0) == 0) {
          if (chk.value == 1.0) ++positives;
          break;
        }
    }
  }
  return {disagreements == 0 && positives > 0 && positives < cases,
          std::to_string(cases) + " trials, " + std::to_string(positives) + " positive, " +
              std::to_string(disagreements) + " disagreements"};
}

Outcome power_law() {
  SizeParams size;
  size.max_dim = 8;
  size.max_power = 5;
  const VerificationReport r = run_theorem("thm-2.18", 100, kDefaultSeed, size);
  const double gap = worst_check(r, ".gap_absolute");
  SearchParams p;  // random 2x2 rank 1, exponent 2
  const SearchResult s = search_counterexample("dual-power", 1000, kDefaultSeed, p);
  return {r.verdict == RunVerdict::pass && gap <= 1e-8 && s.best_value > 0.1,
          "max gap " + fmt("%.2e", gap) + " on normal EP; unrestricted search best gap " +
              fmt("%.3f", s.best_value)};
}

Outcome product_law() {
  const VerificationReport r = run_theorem("thm-2.20", 50, kDefaultSeed);
  const double worst = worst_check(r, "product_law");
  int flagged = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const ComplexMatrix s = gen_ep(5, 2, derive_seed(i, 1));
    const ComplexMatrix t = gen_random(5, 5, 3, derive_seed(i, 2));
    if (!product_law_check(s, t).hypotheses_met) ++flagged;
  }
  return {r.verdict == RunVerdict::pass && worst <= 1e-9 && flagged == 20,
          "max residual " + fmt("%.2e", worst) + ", mismatched ranges flagged " +
              std::to_string(flagged) + "/20"};
}

Outcome block_formulas() {
  double worst = 0.0;
  bool ok = true;
  for (const char* id : {"thm-2.22", "lower-tri", "full-2x2"}) {
    const VerificationReport r = run_theorem(id, 50, kDefaultSeed);
    worst = std::max(worst, r.max_residual);
    ok = ok && r.verdict == RunVerdict::pass && r.max_residual <= 1e-9;
  }
  // Violations: blocks sharing a range, so every orthogonality hypothesis fails.
  const ComplexMatrix a = gen_random(3, 3, 2, 1);
  const ComplexMatrix v = a.leftCols(1);
  int flagged = 0;
  flagged += upper_block_pinv(a, v).report.hypotheses_met ? 0 : 1;
  flagged += lower_tri_pinv(a, a, a).report.hypotheses_met ? 0 : 1;
  flagged += full_2x2_pinv(a, a, a, a).report.hypotheses_met ? 0 : 1;
  return {ok && flagged == 3, "3 layouts x 50 trials, max residual " + fmt("%.2e", worst) +
                                  ", violations flagged " + std::to_string(flagged) + "/3"};
}

Outcome verify_all() {
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const int code = cli_main({"verify-all"}, out, err);
  const double dt = seconds_since(t0);
  return {code == 0 && dt < 60.0, "exit " + std::to_string(code) + ", " + fmt("%.2f", dt) + " s"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 Penrose soundness", penrose_soundness},
      {"2 counterexample", counterexample},
      {"3 weighted shift", weighted_shift_example},
      {"4 Nystrom min kernel", kernel_example},
      {"5 identity battery", identity_battery},
      {"6 equivalence verdicts", equivalences},
      {"7 power law", power_law},
      {"8 product law", product_law},
      {"9 block formulas", block_formulas},
      {"10 verify-all", verify_all},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
