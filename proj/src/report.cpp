#include "gbv/report.hpp"

#include <cmath>

namespace gbv {

using nlohmann::json;

json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

json enclosure_json(const Enclosure& e) {
  return {{"lo", json_number(e.lo)}, {"hi", json_number(e.hi)}};
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

}  // namespace

json to_json(const ClassCertificate& cert) {
  json violations = json::array();
  for (const auto& v : cert.violations) {
    violations.push_back({{"m", v.m}, {"ratio", json_number(v.ratio)}});
  }
  return {{"class_id", to_string(cert.class_id)},
          {"horizon", cert.horizon},
          {"sup_ratio", json_number(cert.sup_ratio)},
          {"witness_m", cert.witness_m},
          {"verdict", to_string(cert.verdict)},
          {"trend", to_string(cert.trend)},
          {"slope", json_number(cert.slope)},
          {"r2", json_number(cert.r2)},
          {"violations", violations}};
}

json to_json(const InclusionReport& report) {
  json certs = json::array();
  for (const auto& c : report.certificates) certs.push_back(to_json(c));
  return {{"certificates", certs},
          {"consistent", report.consistent},
          {"inconsistencies", report.inconsistencies}};
}

json to_json(const MeasureParams& params) {
  return {{"p", params.p},
          {"gamma", params.gamma},
          {"quad_tol", params.quad_tol},
          {"x_min", params.x_min}};
}

json to_json(const CriterionResult& r) {
  return {{"variant", to_string(r.variant)},
          {"horizon", r.horizon},
          {"block_sums", numbers(r.block_sums)},
          {"total_through", json_number(r.total_through)},
          {"tail_bound", r.tail_bound ? enclosure_json(*r.tail_bound) : json(nullptr)},
          {"inner_truncated", r.inner_truncated},
          {"block_slope", json_number(r.block_slope)},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const NormResult& r) {
  return {{"norm", json_number(r.norm)},
          {"err", json_number(r.err)},
          {"x_min", r.x_min},
          {"evaluations", r.evaluations}};
}

json to_json(const ModulusResult& r) {
  return {{"omega", json_number(r.omega)},
          {"h_at_max", r.h_at_max},
          {"err", json_number(r.err)},
          {"h", numbers(r.hs)},
          {"values", numbers(r.values)}};
}

json to_json(const Rhs7Result& r) {
  return {{"value", json_number(r.value)},
          {"head", json_number(r.head)},
          {"tail", json_number(r.tail)},
          {"tail_certified", r.tail_certified}};
}

json to_json(const InequalityReport& r) {
  json j = {{"inequality_id", to_string(r.inequality_id)},
            {"lhs", json_number(r.lhs)},
            {"rhs", json_number(r.rhs)},
            {"constant", json_number(r.constant)},
            {"margin", json_number(r.margin)},
            {"pass", r.pass},
            {"status", to_string(r.status)},
            {"truncation", r.truncation}};
  if (r.ratio) j["ratio"] = json_number(*r.ratio);
  return j;
}

json to_json(const SuiteReport& r) {
  json j = {{"suite", r.name},
            {"seed", r.seed},
            {"instances", r.instances},
            {"passed", r.passed},
            {"failed", r.failed},
            {"inconclusive", r.inconclusive},
            {"failures", r.failures}};
  if (r.p1_instances > 0) {
    j["p1_instances"] = r.p1_instances;
    j["max_p1_relative_gap"] = json_number(r.max_p1_relative_gap);
  }
  return j;
}

json to_json(const NormLadder& r) {
  json j = {{"x_min", numbers(r.x_min)},
            {"increments", numbers(r.increments)},
            {"cumulative", numbers(r.cumulative)},
            {"slope", json_number(r.slope)},
            {"bounded", r.bounded ? json(*r.bounded) : json(nullptr)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const Theorem13Report& r) {
  return {{"params", to_json(r.params)},
          {"criterion", to_json(r.criterion)},
          {"norm_ladder", to_json(r.ladder)},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const Theorem23Report& r) {
  return {{"p", r.p},
          {"n", r.ns},
          {"omega", numbers(r.omega)},
          {"rhs", numbers(r.rhs)},
          {"ratios", numbers(r.ratios)},
          {"max_ratio", json_number(r.max_ratio)},
          {"slope", json_number(r.slope)},
          {"ratio_cap", r.ratio_cap},
          {"pass", r.pass}};
}

json to_json(const Theorem3Report& r) {
  json blocks = json::array();
  for (const auto& [m, ratio] : r.rbv_at_blocks) {
    blocks.push_back({{"m", m}, {"ratio", json_number(ratio)}});
  }
  json crit = json::array();
  for (std::size_t i = 0; i < r.criteria.size(); ++i) {
    crit.push_back({{"p", r.grid[i].first}, {"gamma", r.grid[i].second},
                    {"result", to_json(r.criteria[i])}});
  }
  return {{"levels", r.levels},
          {"classify_horizon", r.classify_horizon},
          {"inclusion", to_json(r.inclusion)},
          {"rbv_at_block_starts", blocks},
          {"rbv_strictly_increasing", r.rbv_strictly_increasing},
          {"quasimonotone_alpha", json_number(r.quasimonotone_alpha)},
          {"criteria", crit},
          {"status", to_string(r.status)},
          {"failures", r.failures}};
}

}  // namespace gbv
