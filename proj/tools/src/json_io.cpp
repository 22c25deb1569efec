#include "heightlab_cli/json_io.hpp"

#include <cmath>

#include "heightlab/text_io.hpp"

namespace heightlab::cli {

namespace {

json float_value(double v, double rel_err) {
  json j;
  j["value"] = std::isfinite(v) ? json(v) : json(nullptr);
  j["relErr"] = rel_err;
  j["exactness"] = "float+relErr";
  return j;
}

}  // namespace

json to_json(const HeightValue& h) {
  json j;
  j["finite"] = h.finite().str();
  const auto r = h.finite().as_rational();
  j["finiteRational"] = r ? json(r->get_str()) : json(nullptr);
  j["arch"] = h.arch();
  j["log"] = h.log();
  j["relErr"] = h.rel_err();
  j["exactness"] = {{"finite", "exact-rational"}, {"arch", "float+relErr"}};
  return j;
}

json to_json(const LocalMagnitude& m) {
  if (m.is_exact()) return {{"value", m.str()}, {"exactness", "exact-rational"}};
  return float_value(m.value(), m.rel_err());
}

json to_json(const std::vector<PlaceContribution>& parts) {
  json a = json::array();
  for (const auto& [v, m] : parts) {
    json e = to_json(m);
    a.push_back({{"place", v.label()}, {"weight", v.weight().get_str()}, {"magnitude", e}});
  }
  return a;
}

json to_json(const OperatorHeightResult& r) {
  json j;
  j["kind"] = r.kind == OperatorHeightResult::Kind::exact ? "exact" : "bounded";
  j["rank"] = r.rank;
  if (r.value) j["value"] = to_json(*r.value);
  j["lower"] = to_json(r.lower);
  j["lowerRigorous"] = r.lower_is_rigorous;
  j["upper"] = to_json(r.upper);
  if (r.empirical_lower) {
    j["empiricalLower"] = to_json(*r.empirical_lower);
    j["witness"] = format_vector(*r.witness);
  }
  return j;
}

json to_json(const VectorK& x) { return format_vector(x); }
json to_json(const MatrixK& t) { return format_matrix(t); }

json to_json(const ProjectivePoint& p) {
  json c = json::array();
  for (const auto& x : p.coords) c.push_back(x.get_str());
  return {{"point", c}, {"height", to_json(p.height)}};
}

json to_json(const EndoClass& c) {
  json j;
  j["matrix"] = format_matrix(c.matrix);
  j["rank"] = c.rank;
  j["height"] = to_json(c.height);
  j["opHeight"] = to_json(c.op);
  if (c.kernel) {
    json basis = json::array();
    for (const auto& b : c.kernel->basis()) basis.push_back(format_vector(b));
    j["kernel"] = basis;
    j["kernelHeight"] = to_json(*c.kernel_height);
  }
  j["certified"] = c.certified;
  return j;
}

json to_json(const ConvergenceTrace& trace) {
  json j;
  j["target"] = {{"finite", trace.target_finite.str()}, {"logArch", trace.target_log_arch}, {"log", trace.target_log}};
  json entries = json::array();
  for (const auto& e : trace.entries) {
    json x;
    x["k"] = e.k;
    x["finite"] = e.finite.str();
    x["logArch"] = e.log_arch;
    x["log"] = std::isfinite(e.log_value) ? json(e.log_value) : json(nullptr);
    x["residual"] = e.residual;
    x["finiteMatches"] = e.finite_matches;
    x["exactFlag"] = e.exact_flag;
    if (e.op_log) x["opLog"] = *e.op_log;
    if (e.op_lower_log) x["opLowerLog"] = *e.op_lower_log;
    x["places"] = to_json(e.places);
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["truncated"] = trace.truncated;
  if (trace.truncated) j["truncationReason"] = trace.truncation_reason;
  return j;
}

}  // namespace heightlab::cli
