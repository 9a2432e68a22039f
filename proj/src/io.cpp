#include <cdual/io.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace cdual {

Json matrix_to_json(const ComplexMatrix& a) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) data.push_back({a(i, j).real(), a(i, j).imag()});
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

namespace {

Eigen::Index positive_dim(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(where + "." + key + ": expected a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

double finite_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + ": non-finite value");
  return x;
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const Eigen::Index rows = positive_dim(j, "rows", where);
  const Eigen::Index cols = positive_dim(j, "cols", where);
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw ParseError(where + ": missing array field 'data'");
  }
  const Json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ParseError(where + ".data: expected " + std::to_string(rows * cols) +
                     " entries for a " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " matrix, found " + std::to_string(data.size()));
  }
  ComplexMatrix a(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const std::string at = where + ".data[" + std::to_string(k) + "]";
    const Json& e = data[k];
    if (!e.is_array() || e.size() != 2) throw ParseError(at + ": expected [re, im]");
    const auto i = static_cast<Eigen::Index>(k) / cols;
    const auto c = static_cast<Eigen::Index>(k) % cols;
    a(i, c) = Complex(finite_number(e[0], at + "[0]"), finite_number(e[1], at + "[1]"));
  }
  return a;
}

KernelSpec kernel_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("kernel spec: expected an object");
  KernelSpec spec;
  if (!j.contains("kernel") || !j.at("kernel").is_string()) {
    throw ParseError("kernel spec: missing string field 'kernel'");
  }
  spec.kernel = j.at("kernel").get<std::string>();
  if (j.contains("a")) spec.a = finite_number(j.at("a"), "kernel spec.a");
  if (j.contains("b")) spec.b = finite_number(j.at("b"), "kernel spec.b");
  if (j.contains("m")) {
    if (!j.at("m").is_number_integer()) throw ParseError("kernel spec.m: expected an integer");
    spec.m = j.at("m").get<int>();
  }
  if (j.contains("rule")) {
    if (!j.at("rule").is_string()) throw ParseError("kernel spec.rule: expected a string");
    try {
      spec.rule = parse_quadrature_rule(j.at("rule").get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("kernel spec.rule: ") + e.what());
    }
  }
  try {
    (void)kernel_function(spec.kernel);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("kernel spec.kernel: ") + e.what());
  }
  return spec;
}

Json kernel_spec_to_json(const KernelSpec& spec) {
  return Json{{"kernel", spec.kernel}, {"a", spec.a}, {"b", spec.b}, {"m", spec.m},
              {"rule", to_string(spec.rule)}};
}

Json block_to_json(const BlockOperator& op) {
  Json j{{"layout", to_string(op.layout)}};
  switch (op.layout) {
    case BlockLayout::direct_sum:
      j["T1"] = matrix_to_json(op.t1);
      j["T4"] = matrix_to_json(op.t4);
      break;
    case BlockLayout::upper_1x2:
      j["T1"] = matrix_to_json(op.t1);
      j["T2"] = matrix_to_json(op.t2);
      break;
    case BlockLayout::lower_triangular:
      j["T1"] = matrix_to_json(op.t1);
      j["T3"] = matrix_to_json(op.t3);
      j["T4"] = matrix_to_json(op.t4);
      break;
    case BlockLayout::full_2x2:
      j["T1"] = matrix_to_json(op.t1);
      j["T2"] = matrix_to_json(op.t2);
      j["T3"] = matrix_to_json(op.t3);
      j["T4"] = matrix_to_json(op.t4);
      break;
  }
  return j;
}

BlockOperator block_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("layout") || !j.at("layout").is_string()) {
    throw ParseError("block: missing string field 'layout'");
  }
  BlockLayout layout;
  try {
    layout = parse_block_layout(j.at("layout").get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("block.layout: ") + e.what());
  }
  auto slot = [&](const char* name) {
    if (!j.contains(name)) throw ParseError(std::string("block: missing slot '") + name + "'");
    return matrix_from_json(j.at(name), std::string("block.") + name);
  };
  try {
    switch (layout) {
      case BlockLayout::direct_sum: return BlockOperator::direct_sum(slot("T1"), slot("T4"));
      case BlockLayout::upper_1x2: return BlockOperator::upper(slot("T1"), slot("T2"));
      case BlockLayout::lower_triangular:
        return BlockOperator::lower(slot("T1"), slot("T3"), slot("T4"));
      case BlockLayout::full_2x2:
        return BlockOperator::full(slot("T1"), slot("T2"), slot("T3"), slot("T4"));
    }
  } catch (const ShapeError& e) {
    throw ParseError(std::string("block: ") + e.what());
  }
  throw ParseError("block: unknown layout");
}

Json check_report_to_json(const CheckReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"bound", c.bound == Bound::at_most ? "at_most" : "above"},
                      {"asserted", c.asserted},
                      {"satisfied", c.satisfied()}});
  }
  return Json{{"passed", rep.passed()},
              {"hypotheses_met", rep.hypotheses_met},
              {"max_residual", rep.max_residual()},
              {"checks", std::move(checks)},
              {"notes", rep.notes}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  return matrix_from_json(read_json_file(path), path.filename().string());
}

}  // namespace cdual
