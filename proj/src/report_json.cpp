#include "sbls/report_json.hpp"

namespace sbls {

using json = nlohmann::json;

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json point_to_json(const Point& z) { return vector_to_json(z.concatenated()); }

json indices_to_json(const std::vector<int>& zero_based) {
  json out = json::array();
  for (int i : zero_based) out.push_back(i + 1);
  return out;
}

namespace {

json check_json(const IndexCheck& check) {
  return {{"holds", check.holds}, {"violations", indices_to_json(check.violations)}};
}

json optional_real(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const StationarityReport& r) {
  json cw_moves = json::array();
  for (const CwMove& mv : r.cw_check.violations) {
    cw_moves.push_back({{"i", mv.i + 1}, {"j", mv.j + 1}, {"u", mv.u}, {"f", mv.value}});
  }
  json out;
  out["objective"] = r.objective;
  out["gradient"] = vector_to_json(r.gradient);
  out["flags"] = {{"NB", r.nb}, {"TB", r.tb}, {"NC", r.nc}, {"TC", r.tc}, {"CW", r.cw}, {"M", r.m}};
  out["NB"] = check_json(r.nb_check);
  out["NC"] = check_json(r.nc_check);
  out["CW"] = {{"holds", r.cw}, {"violations", cw_moves}};
  out["restricted_grad_norm_B"] = r.restricted_grad_norm_B;
  out["restricted_grad_norm_C"] = r.restricted_grad_norm_C;
  out["minimal_L"] = optional_real(r.minimal_L);
  if (r.llike) {
    out["flags"]["Llike"] = r.llike->holds;
    out["Llike"] = {{"L", *r.L},
                    {"holds", r.llike->holds},
                    {"inequality_route", r.llike->inequality_route},
                    {"fixed_point_route", r.llike->fixed_point_route},
                    {"violations", indices_to_json(r.llike->violations)}};
  }
  json m = {{"holds", r.m}, {"violations", indices_to_json(r.m_check.violations)}};
  if (r.m_check.witness) {
    m["w"] = vector_to_json(r.m_check.witness->w);
    m["mu"] = vector_to_json(r.m_check.witness->mu);
  }
  out["M"] = m;
  out["tolerance"] = {{"grad_tol", r.tolerance.grad_tol},
                      {"obj_tol", r.tolerance.obj_tol},
                      {"zero_tol", r.tolerance.zero_tol}};
  return out;
}

json to_json(const ProjectionResult& result) {
  json mins = json::array();
  for (const Point& p : result.minimizers) mins.push_back(point_to_json(p));
  return {{"minimizers", mins},
          {"count", result.count},
          {"truncated", result.truncated()},
          {"distance_sq", result.distance_sq}};
}

json to_json(const SolveTrace& trace) {
  json iters = json::array();
  for (const IterateRecord& rec : trace.iterates) {
    iters.push_back({{"iteration", rec.iteration}, {"f", rec.f}, {"L", rec.L}, {"step", rec.step_norm}});
  }
  return {{"solver", trace.solver},
          {"status", to_string(trace.status)},
          {"start_index", trace.start_index},
          {"iterations", static_cast<int>(trace.iterates.size()) - 1},
          {"final_f", trace.final_f()},
          {"final_L", trace.final_L},
          {"final_point", point_to_json(trace.final)},
          {"trace", iters},
          {"report", to_json(trace.final_report)}};
}

json to_json(const BruteResult& result) {
  return {{"f", result.f},
          {"point", point_to_json(result.z)},
          {"support_x", indices_to_json(result.pair.s1)},
          {"support_y", indices_to_json(result.pair.s2)},
          {"pairs_tested", result.pairs_tested},
          {"certified", result.certified},
          {"heuristic", result.heuristic()}};
}

}  // namespace sbls
