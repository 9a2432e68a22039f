#pragma once

// Direct sums and structured 2x2 block pseudoinverse / dual formulas, each
// certified against the dense computation on the assembled operator.

#include <cdual/dual.hpp>
#include <cdual/report.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cdual {

enum class BlockLayout { direct_sum, upper_1x2, lower_triangular, full_2x2 };

const char* to_string(BlockLayout l);
BlockLayout parse_block_layout(std::string_view name);

/// T = [[T1, T2], [T3, T4]] with T1 p x h, T2 p x k, T3 q x h, T4 q x k.
/// Slots that a layout fixes to zero are stored as zero blocks of the right
/// shape, so assemble() never needs to special-case the layout.
struct BlockOperator {
  BlockLayout layout = BlockLayout::full_2x2;
  ComplexMatrix t1, t2, t3, t4;

  Eigen::Index top_rows() const { return t1.rows(); }
  Eigen::Index bottom_rows() const { return t3.rows(); }
  Eigen::Index left_cols() const { return t1.cols(); }
  Eigen::Index right_cols() const { return t2.cols(); }

  ComplexMatrix assemble() const;

  /// A (+) B.
  static BlockOperator direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
  /// [[T1, T2], [0, 0]] on H (+) K; the zero row block has T2.cols() rows.
  static BlockOperator upper(const ComplexMatrix& t1, const ComplexMatrix& t2);
  /// [[T1, 0], [T3, T4]].
  static BlockOperator lower(const ComplexMatrix& t1, const ComplexMatrix& t3,
                             const ComplexMatrix& t4);
  static BlockOperator full(const ComplexMatrix& t1, const ComplexMatrix& t2,
                            const ComplexMatrix& t3, const ComplexMatrix& t4);
};

/// [[a, b], [c, d]] with conforming shapes.
ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                           const ComplexMatrix& c, const ComplexMatrix& d);

struct HypothesisCheck {
  std::string name;
  double residual = 0.0;
  bool verified = false;
};

struct BlockResult {
  ComplexMatrix pinv;  // structured formula
  ComplexMatrix dual;  // structured formula
  std::optional<ComplexMatrix> abs_dual;  // upper layout: structured w(|T|)
  std::vector<HypothesisCheck> hypotheses;
  CheckReport report;  // structured vs dense; unasserted when a hypothesis fails
};

/// (A (+) B)^dagger = A^dagger (+) B^dagger and w(A (+) B) = w(A) (+) w(B).
BlockResult direct_sum_pinv(const ComplexMatrix& a, const ComplexMatrix& b,
                            const ToleranceConfig& cfg = {});

/// Hypothesis R(T1) perp R(T2). Structured pinv [[T1^dagger, 0], [T2^dagger, 0]],
/// dual [[w(T1), w(T2)], [0, 0]], w(|T|) = w(|T1|) (+) w(|T2|).
BlockResult upper_block_pinv(const ComplexMatrix& t1, const ComplexMatrix& t2,
                             const ToleranceConfig& cfg = {});

/// Hypotheses R(T1^*) perp R(T3^*) with P_{R(T1^*)} + P_{R(T3^*)} = I, and
/// R(T3) perp R(T4). With S = T1^*T1 + T3^*T3 the report also certifies
/// S^dagger = (T1^*T1)^dagger + (T3^*T3)^dagger and T_i^dagger = S^dagger T_i^*.
BlockResult lower_tri_pinv(const ComplexMatrix& t1, const ComplexMatrix& t3,
                           const ComplexMatrix& t4, const ToleranceConfig& cfg = {});

/// Four orthogonality hypotheses on adjoint ranges (columns) and ranges (rows).
/// Structured pinv [[T1^dagger, T3^dagger], [T2^dagger, T4^dagger]].
BlockResult full_2x2_pinv(const ComplexMatrix& t1, const ComplexMatrix& t2,
                          const ComplexMatrix& t3, const ComplexMatrix& t4,
                          const ToleranceConfig& cfg = {});

/// Dispatches on the layout.
BlockResult block_pinv(const BlockOperator& op, const ToleranceConfig& cfg = {});

}  // namespace cdual
