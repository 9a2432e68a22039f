#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdual {

enum class Bound { at_most, above };

/// One named numerical claim: value compared against threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::at_most;
  bool asserted = true;

  bool satisfied() const {
    return bound == Bound::at_most ? value <= threshold : value > threshold;
  }
};

/// Collection of checks produced by a battery or structured formula.
/// Unasserted checks are reported but never fail the report; they are used
/// when a theorem's hypotheses were not verified.
struct CheckReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool hypotheses_met = true;

  void add(std::string name, double value, double threshold,
           Bound bound = Bound::at_most) {
    checks.push_back(Check{std::move(name), value, threshold, bound, hypotheses_met});
  }

  void merge(const CheckReport& other, std::string_view prefix = {}) {
    for (Check c : other.checks) {
      if (!prefix.empty()) c.name = std::string(prefix) + "." + c.name;
      checks.push_back(std::move(c));
    }
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    hypotheses_met = hypotheses_met && other.hypotheses_met;
  }

  /// Informational value, never asserted and excluded from max_residual().
  void note_value(std::string name, double value) {
    checks.push_back(Check{std::move(name), value, 0.0, Bound::at_most, false});
  }

  bool passed() const {
    for (const auto& c : checks)
      if (c.asserted && !c.satisfied()) return false;
    return true;
  }

  /// Largest value among asserted residual-type (at_most) checks; when the
  /// hypotheses failed, the largest unasserted formula residual instead.
  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) {
      const bool counted = c.asserted || (!hypotheses_met && c.threshold > 0.0);
      if (counted && c.bound == Bound::at_most && c.value > m) m = c.value;
    }
    return m;
  }

  /// Throws std::out_of_range when no check has this name.
  const Check& at(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no check named " + std::string(name));
  }
};

}  // namespace cdual
