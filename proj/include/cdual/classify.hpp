#pragma once

// Tolerance-aware operator class predicates.

#include <cdual/linalg.hpp>

namespace cdual {

struct Verdict {
  bool applicable = true;  // false for square-only classes on rectangular input
  bool holds = false;
  double residual = 0.0;
};

/// Two quasinormal predicates are reported:
///  - quasinormal_commutation: T (T^*T) = (T^*T) T, the standard form;
///  - quasinormal_literal: T^*T T = T T T^*, the literal variant.
/// In finite dimensions the commutation form is equivalent to normality.
struct OperatorClassification {
  Verdict selfadjoint;
  Verdict normal;
  Verdict quasinormal_commutation;
  Verdict quasinormal_literal;
  Verdict ep;
  Verdict hypo_ep;
  Verdict partial_isometry;
  Verdict psd;
};

/// Residuals use the relative convention; ep / hypo_ep compare range
/// projectors of A and A^* via subspace_relation.
OperatorClassification classify(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

bool is_selfadjoint(const ComplexMatrix& a, const ToleranceConfig& cfg = {});
bool is_normal(const ComplexMatrix& a, const ToleranceConfig& cfg = {});
bool is_ep(const ComplexMatrix& a, const ToleranceConfig& cfg = {});

/// R(A) = R(B) through range projectors.
bool same_range(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& cfg = {});

}  // namespace cdual
