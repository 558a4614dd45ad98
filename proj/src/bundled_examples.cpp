#include "sbls/bundled_examples.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sbls/likeproj.hpp"
#include "sbls/oracle.hpp"
#include "sbls/report_json.hpp"
#include "sbls/solvers.hpp"
#include "sbls/stationarity.hpp"

namespace sbls {

namespace {

using json = nlohmann::json;

struct Entry {
  int i, j, k;
  double v;
};

Tensor3 from_entries(int l, int m, int n, std::initializer_list<Entry> entries) {
  Tensor3 a(l, m, n);
  for (const Entry& e : entries) a(e.i - 1, e.j - 1, e.k - 1) = e.v;
  return a;
}

Vec vec(std::initializer_list<double> values) {
  Vec out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) out[i++] = v;
  return out;
}

Point point(std::initializer_list<double> values, int m) {
  return Point::from_concatenated(vec(values), m);
}

std::string show(const Vec& v) {
  std::ostringstream out;
  out.precision(17);
  out << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

// Collects mismatches between computed and expected values.
class Expect {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream out;
      out.precision(17);
      out << what << ": got " << got << ", expected " << want;
      mismatches.push_back(out.str());
    }
  }
  void near(const std::string& what, const Vec& got, const Vec& want, double tol) {
    if (got.size() != want.size() || !((got - want).lpNorm<Eigen::Infinity>() <= tol)) {
      mismatches.push_back(what + ": got " + show(got) + ", expected " + show(want));
    }
  }
  void is(const std::string& what, bool got, bool want) {
    if (got != want) {
      mismatches.push_back(what + ": got " + (got ? "true" : "false") + ", expected " +
                           (want ? "true" : "false"));
    }
  }
  void projection(const std::string& what, const ProjectionResult& got,
                  const std::vector<Point>& want) {
    bool ok = got.count == want.size() && got.minimizers.size() == want.size();
    for (std::size_t k = 0; ok && k < want.size(); ++k) {
      ok = (got.minimizers[k].concatenated() - want[k].concatenated()).lpNorm<Eigen::Infinity>() <=
           1e-12;
    }
    if (!ok) {
      std::string text;
      for (const Point& p : got.minimizers) text += show(p.concatenated()) + " ";
      mismatches.push_back(what + ": got {" + text + "}");
    }
  }

  std::vector<std::string> mismatches;
};

ReproResult finish(const std::string& name, Expect& expect, json report) {
  ReproResult out;
  out.name = name;
  out.mismatches = std::move(expect.mismatches);
  out.passed = out.mismatches.empty();
  report["name"] = name;
  report["passed"] = out.passed;
  report["mismatches"] = out.mismatches;
  out.report = std::move(report);
  return out;
}

ReproResult repro_example_a() {
  const InstanceFile file = bundled_example_a();
  const Instance& inst = file.instance;
  const Point zbar = *file.known_point;
  const Point zstar = bundled_example_a_optimum();
  Expect expect;

  const StationarityReport rep = classify(inst, zbar, 5.0);
  expect.near("f(zbar)", rep.objective, 2.5, 1e-12);
  expect.near("grad f(zbar)", rep.gradient, vec({0, 0, 2, 0, 0, -5}), 1e-10);
  expect.is("NB(zbar)", rep.nb, true);
  expect.is("TB(zbar)", rep.tb, true);
  expect.is("NC(zbar)", rep.nc, true);
  expect.is("TC(zbar)", rep.tc, true);
  expect.is("M(zbar)", rep.m, true);
  expect.is("CW(zbar)", rep.cw, false);
  expect.is("Llike(zbar, L=5)", rep.llike->holds, true);
  expect.is("Llike(zbar, L=1)", check_Llike(inst, zbar, 1.0, rep.tolerance).holds, false);
  expect.near("minimal_L(zbar)", rep.minimal_L.value_or(-1.0), 5.0, 1e-12);
  if (rep.m_check.witness) {
    expect.near("M witness w", rep.m_check.witness->w, vec({0, 0, 1, 0, 0, 1}), 0.0);
    expect.near("M witness mu", rep.m_check.witness->mu, vec({0, 0, -2, 0, 0, 5}), 1e-10);
  }

  // The swap of index 5 for index 6 must reach the zero-residual point.
  json swap = nullptr;
  bool found = false;
  for (const CwMove& mv : rep.cw_check.violations) {
    if (mv.i != 4 || mv.j != 5) continue;
    Vec moved = zbar.concatenated();
    moved[mv.i] = 0.0;
    moved[mv.j] += mv.u;
    found = true;
    expect.near("swap (5,6) value", mv.value, 0.0, 1e-12);
    expect.near("swap (5,6) point", moved, zstar.concatenated(), 1e-12);
    swap = {{"i", 5}, {"j", 6}, {"u", mv.u}, {"f", mv.value}, {"point", vector_to_json(moved)}};
  }
  expect.is("CW swap (5,6) reported", found, true);

  const StationarityReport rep_star = classify(inst, zstar, 1.0);
  expect.near("f(z*)", rep_star.objective, 0.0, 1e-12);
  expect.is("NB(z*)", rep_star.nb, true);
  expect.is("CW(z*)", rep_star.cw, true);
  expect.is("Llike(z*, L=1)", rep_star.llike->holds, true);

  const BruteResult brute = global_brute(inst);
  expect.near("global minimum", brute.f, 0.0, 1e-12);
  expect.is("global minimum certified", brute.certified, true);

  json report;
  report["zbar"] = to_json(rep);
  report["cw_swap_to_optimum"] = swap;
  report["zstar"] = to_json(rep_star);
  report["global_brute"] = to_json(brute);
  return finish("paperA", expect, std::move(report));
}

ReproResult repro_example_b() {
  const InstanceFile file = bundled_example_b();
  const Instance& inst = file.instance;
  const Point zstar = *file.known_point;
  Expect expect;

  const Vec printed = vec({2, 0, 0, 0, 0, 0, 0, 0});
  const Vec derived = vec({2, -2, 0, 0, 0, 0, 0, 0});
  const StationarityReport rep = classify(inst, zstar);
  expect.near("f(z*)", rep.objective, 2.5, 1e-12);
  expect.near("grad f(z*)", rep.gradient, derived, 1e-10);
  expect.near("finite-difference gradient", finite_difference_gradient(inst, zstar), derived, 1e-6);
  expect.is("NB(z*)", rep.nb, false);
  expect.is("NC(z*)", rep.nc, false);
  expect.is("M(z*)", rep.m, false);

  json llike = json::object();
  for (double L : {0.1, 1.0, 10.0, 100.0}) {
    const LlikeResult res = check_Llike(inst, zstar, L, rep.tolerance);
    expect.is("Llike(z*, L=" + std::to_string(L) + ")", res.holds, false);
    llike[std::to_string(L)] = res.holds;
  }
  const Point step = liht_step(inst, zstar, 10.0);
  const bool moved = (step.concatenated() - zstar.concatenated()).lpNorm<Eigen::Infinity>() > 1e-12;
  expect.is("like-projection step at L=10 moves z*", moved, true);

  json report;
  report["zstar"] = to_json(rep);
  report["printed_gradient"] = vector_to_json(printed);
  report["derived_gradient"] = vector_to_json(derived);
  report["note"] =
      "the printed gradient (2,0,0,0,0,0,0,0) does not match the data; the computed gradient "
      "(2,-2,0,0,0,0,0,0) is confirmed by finite differences, so z* is not NB-stationary. "
      "The point is still not L-like stationary for any L, as stated.";
  report["Llike_grid"] = llike;
  report["liht_step_L10"] = point_to_json(step);
  return finish("paperB", expect, std::move(report));
}

ReproResult repro_likeproj(const std::string& name, const Point& z,
                           const std::vector<Point>& want_like,
                           const std::vector<Point>& want_classic) {
  Expect expect;
  const ProjectionResult like = like_project(z, 2, 2);
  const ProjectionResult oracle = like_project_oracle(z, 2, 2);
  const ProjectionResult classic = classic_project(z, 2, 2);
  expect.projection("like_project", like, want_like);
  expect.projection("like_project_oracle", oracle, want_like);
  expect.projection("classic_project", classic, want_classic);
  expect.near("distance vs tail formula", like.distance_sq,
              like_projection_tail_distance(z, 2, 2), 1e-12);
  expect.near("distance vs oracle", like.distance_sq, oracle.distance_sq, 1e-12);
  json report;
  report["input"] = point_to_json(z);
  report["s"] = 2;
  report["t"] = 2;
  report["like_project"] = to_json(like);
  report["like_project_oracle"] = to_json(oracle);
  report["classic_project"] = to_json(classic);
  return finish(name, expect, std::move(report));
}

}  // namespace

InstanceFile bundled_example_a() {
  Tensor3 a = from_entries(2, 3, 3,
                           {{1, 1, 1, 1}, {1, 1, 2, 1}, {1, 1, 3, 3}, {1, 2, 1, 1}, {1, 2, 2, 1},
                            {1, 3, 3, 1}, {2, 1, 1, 1}, {2, 1, 3, -1}, {2, 2, 2, 1}, {2, 3, 1, 1}});
  return {make_instance(std::move(a), vec({5, 0}), 2, 2), point({1, 1, 0, 1, 1, 0}, 3), "paperA"};
}

InstanceFile bundled_example_b() {
  Tensor3 a = from_entries(2, 4, 4,
                           {{1, 1, 1, 1}, {1, 2, 2, 1}, {1, 2, 3, 1}, {1, 3, 1, 1}, {1, 3, 4, 1},
                            {2, 1, 1, 1}, {2, 1, 3, 2}, {2, 2, 1, 1}, {2, 2, 2, 2}, {2, 3, 2, 4},
                            {2, 4, 4, 1}});
  return {make_instance(std::move(a), vec({1, 7}), 3, 3), point({1, 1, 0, 0, 2, 1, 0, 0}, 4),
          "paperB"};
}

Point bundled_example_a_optimum() { return point({1, 1, 0, 1, 0, 1}, 3); }

const std::vector<std::string>& repro_names() {
  static const std::vector<std::string> names = {"paperA", "paperB", "likeproj1", "likeproj2",
                                                 "likeproj3"};
  return names;
}

ReproResult run_repro(const std::string& name) {
  if (name == "paperA") return repro_example_a();
  if (name == "paperB") return repro_example_b();
  if (name == "likeproj1") {
    return repro_likeproj(name, point({0, 0, 3, 3, -4, 2}, 3), {point({0, 0, 1, 9, -12, 0}, 3)},
                          {point({1, 0, 3, 3, -4, 0}, 3), point({0, 1, 3, 3, -4, 0}, 3)});
  }
  if (name == "likeproj2") {
    return repro_likeproj(name, point({0, 0, 1, 3, -4, 2}, 3), {point({0, 0, 1, 3, -4, 0}, 3)},
                          {point({0, 0, 1, 3, -4, 0}, 3)});
  }
  if (name == "likeproj3") {
    return repro_likeproj(name, point({0, 0, 0, 3, -4, 2}, 3),
                          {point({1, 0, 0, 3, -4, 0}, 3), point({0, 1, 0, 3, -4, 0}, 3),
                           point({0, 0, 1, 3, -4, 0}, 3)},
                          {point({1, 0, 0, 3, -4, 0}, 3), point({0, 1, 0, 3, -4, 0}, 3),
                           point({0, 0, 1, 3, -4, 0}, 3)});
  }
  throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace sbls
