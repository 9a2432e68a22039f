#pragma once

// JSON formats shared by the CLI and the reports.
//
// Matrix: {"rows": m, "cols": n, "data": [[re, im], ...]} in row-major order.
// Kernel: {"kernel": id, "a": .., "b": .., "m": .., "rule": "trapezoid" | "gauss_legendre"}
// Block:  {"layout": "upper_1x2" | ..., "T1": matrix, "T2": matrix, ...}

#include <cdual/blocks.hpp>
#include <cdual/models.hpp>
#include <cdual/report.hpp>

#include <filesystem>
#include <string>

#include <json.hpp>

namespace cdual {

using Json = nlohmann::json;

/// Malformed input; the message names the offending field or position.
class ParseError : public Error {
 public:
  using Error::Error;
};

Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");

KernelSpec kernel_spec_from_json(const Json& j);
Json kernel_spec_to_json(const KernelSpec& spec);

Json block_to_json(const BlockOperator& op);
BlockOperator block_from_json(const Json& j);

Json check_report_to_json(const CheckReport& rep);

/// Reads and parses a JSON document; syntax errors become ParseError with
/// the line and column.
Json read_json_file(const std::filesystem::path& path);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);

}  // namespace cdual
