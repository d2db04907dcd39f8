#include "cosk/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace cosk {
namespace {

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

Tensor4d tensor_from_json(const nlohmann::json& j, double dup_tol) {
  if (!j.is_object()) throw ParseError("tensor file: top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("tensor file: missing integer field 'n'");
  const int n = j["n"].get<int>();
  if (n < 2 || n > 64) throw ParseError("tensor file: n must lie in [2, 64]");
  if (!j.contains("components") || !j["components"].is_array()) {
    throw ParseError("tensor file: missing array field 'components'");
  }

  const auto nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> slots(static_cast<std::size_t>(n) * n * n * n, nan);
  auto slot = [n](int i, int j2, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j2) * n + k) * n + l;
  };
  auto assign = [&](int i, int j2, int k, int l, double v) {
    double& cur = slots[slot(i, j2, k, l)];
    if (std::isnan(cur)) {
      cur = v;
    } else if (std::abs(cur - v) > dup_tol) {
      throw ParseError("tensor file: inconsistent value for component (" + std::to_string(i) + "," +
                       std::to_string(j2) + "," + std::to_string(k) + "," + std::to_string(l) + ")");
    }
  };

  for (const auto& e : j["components"]) {
    if (!e.is_array() || e.size() != 5) throw ParseError("tensor file: each component must be [i, j, k, l, value]");
    int idx[4];
    for (int p = 0; p < 4; ++p) {
      if (!e[p].is_number_integer()) throw ParseError("tensor file: component indices must be integers");
      idx[p] = e[p].get<int>();
      if (idx[p] < 0 || idx[p] >= n) throw ParseError("tensor file: component index out of range");
    }
    if (!e[4].is_number()) throw ParseError("tensor file: component value must be a number");
    const double v = e[4].get<double>();
    const auto [i, j2, k, l] = idx;
    assign(i, j2, k, l, v);
    assign(j2, i, k, l, -v);
    assign(i, j2, l, k, -v);
    assign(j2, i, l, k, v);
    assign(k, l, i, j2, v);
    assign(l, k, i, j2, -v);
    assign(k, l, j2, i, -v);
    assign(l, k, j2, i, v);
  }

  Tensor4d t(n);
  for (int i = 0; i < n; ++i)
    for (int j2 = 0; j2 < n; ++j2)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = slots[slot(i, j2, k, l)];
          t(i, j2, k, l) = std::isnan(v) ? 0.0 : v;
        }
  return t;
}

Tensor4d load_tensor(const std::filesystem::path& path, double dup_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tensor file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("tensor file: ") + e.what());
  }
  return tensor_from_json(j, dup_tol);
}

nlohmann::json tensor_to_json(const CurvatureTensord& r) {
  const int n = r.dim();
  nlohmann::json comps = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = i; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (k == i && l < j) continue;
          comps.push_back({i, j, k, l, r(i, j, k, l)});
        }
  return {{"n", n}, {"components", std::move(comps)}};
}

nlohmann::json to_json(const Spectrumd& s) {
  return {{"n", s.n}, {"N", s.size()}, {"values", vector_json(s.values)}, {"lambda_bar", s.lambda_bar}};
}

nlohmann::json to_json(const ConeVerdict& v) {
  return {{"status", std::string(to_string(v.status))}, {"margin", v.margin}};
}

nlohmann::json to_json(const BochnerReport& r) {
  nlohmann::json j = {{"n", r.n},
                      {"theta", r.theta},
                      {"lambda_bar", r.lambda_bar},
                      {"delta_r_inner", r.delta_r_inner},
                      {"delta_r_general", r.delta_r_general},
                      {"f_lower", r.f_lower},
                      {"cone", to_json(r.cone)},
                      {"einstein_defect", r.einstein_defect}};
  j["weighted_sw"] = r.weighted_sw ? nlohmann::json(*r.weighted_sw) : nlohmann::json(nullptr);
  j["weighted_bound"] = r.weighted_bound ? nlohmann::json(*r.weighted_bound) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Classification& c) {
  return {{"verdict", std::string(to_string(c.verdict))},
          {"details", c.details},
          {"report", c.report ? to_json(*c.report) : nlohmann::json(nullptr)}};
}

nlohmann::json to_json(const ExtremalReport& r) {
  nlohmann::json mins = nlohmann::json::array();
  for (const auto& m : r.minimizers) mins.push_back(vector_json(m));
  nlohmann::json table = nlohmann::json::array();
  for (const auto& e : r.critical_table) {
    nlohmann::json row;
    if (e.kind == CriticalKind::interior) {
      row["kind"] = "interior";
      row["params"] = {{"m", e.m}};
    } else {
      row["kind"] = "boundary";
      row["params"] = {{"k", e.k}, {"l", e.l}, {"a", e.a}};
    }
    row["value"] = e.value;
    row["feasible"] = e.feasible;
    table.push_back(std::move(row));
  }
  return {{"N", r.N},
          {"beta", r.beta},
          {"global_min", r.global_min},
          {"minimizers", std::move(mins)},
          {"critical_table", std::move(table)},
          {"oracle_min", finite_or_null(r.oracle_min)},
          {"agreement", finite_or_null(r.agreement)},
          {"closed_form_defect", r.closed_form_defect},
          {"profiles_match", r.profiles_match},
          {"certified", r.certified},
          {"grid", r.grid}};
}

}  // namespace cosk
