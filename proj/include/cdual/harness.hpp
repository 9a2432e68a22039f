#pragma once

// Theorem registry, seeded verification campaigns and counterexample search.

#include <cdual/classify.hpp>
#include <cdual/io.hpp>
#include <cdual/report.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cdual {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::size_t kDefaultTrials = 100;

struct SizeParams {
  int max_dim = 10;        // random trial dimensions are drawn from [2, max_dim]
  int max_power = 5;       // exponents 1..max_power for power laws
  int shift_pairs = 50;    // weighted shift truncation N
  int nystrom_nodes = 200; // quadrature nodes for the kernel example

  /// Parses "dim=8,power=5,N=50,m=200" (any subset, any order).
  static SizeParams parse(const std::string& text);
  Json to_json() const;
};

struct TrialContext {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  const SizeParams& size;
  const ToleranceConfig& cfg;
  Json* inputs = nullptr;  // replay record, filled as inputs are generated

  void record(const std::string& key, Json value) const {
    if (inputs != nullptr) (*inputs)[key] = std::move(value);
  }
  void record(const std::string& key, const ComplexMatrix& m) const { record(key, matrix_to_json(m)); }
};

struct TheoremEntry {
  std::string id;
  std::string summary;
  bool deterministic = false;  // runs a single fixed case whenever trials > 0
  std::function<CheckReport(const TrialContext&)> run;
};

/// Every registered check, in a fixed order.
const std::vector<TheoremEntry>& theorem_registry();
std::vector<std::string> theorem_ids();

class UnknownTheorem : public InvalidArgument {
 public:
  explicit UnknownTheorem(const std::string& id);
};

enum class RunVerdict { pass, fail, hypothesis_not_met };
const char* to_string(RunVerdict v);

struct TrialCase {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  CheckReport report;
  std::string error;              // non-empty when the trial threw
  std::optional<Json> inputs;     // embedded only for failing trials

  bool passed() const { return error.empty() && report.passed(); }
};

struct VerificationReport {
  std::string theorem_id;
  std::string summary;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator;
  ToleranceConfig tolerances;
  SizeParams size;
  double max_residual = 0.0;
  RunVerdict verdict = RunVerdict::pass;
  double wall_seconds = 0.0;
  std::vector<TrialCase> cases;

  Json to_json() const;
};

/// Deterministic given (seed, trials, size, cfg). Trial i uses
/// derive_seed(seed, i). Throws UnknownTheorem for an unregistered id.
VerificationReport run_theorem(const std::string& theorem_id, std::size_t trials,
                               std::uint64_t seed, const SizeParams& size = {},
                               const ToleranceConfig& cfg = {});

std::vector<VerificationReport> run_all(std::size_t trials, std::uint64_t seed,
                                        const SizeParams& size = {},
                                        const ToleranceConfig& cfg = {});

struct SearchParams {
  int dim = 2;
  int rank = 1;
  int power = 2;
  /// dual-power: "random" | "normal-ep"; dual-product: "random" | "range-matched".
  std::string generator = "random";
};

struct SearchResult {
  std::string property_id;
  SearchParams params;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t best_trial = 0;
  double best_value = 0.0;  // absolute Frobenius gap of the violated identity
  Json best_inputs = Json::object();
  Json best_classification = Json::object();

  Json to_json() const;
};

/// property_id: "dual-power" (w(T^n) vs w(T)^n) or "dual-product"
/// (w(ST) vs w(S) w(T)). Throws InvalidArgument for an unknown id or generator.
SearchResult search_counterexample(const std::string& property_id, std::size_t trials,
                                   std::uint64_t seed, const SearchParams& params = {},
                                   const ToleranceConfig& cfg = {});

Json tolerance_to_json(const ToleranceConfig& cfg);
Json classification_to_json(const OperatorClassification& c);

}  // namespace cdual
