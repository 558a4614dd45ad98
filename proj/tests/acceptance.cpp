// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed here and must not be loosened to make a line pass.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sbls/bundled_examples.hpp"
#include "sbls/generators.hpp"
#include "sbls/instance_io.hpp"
#include "sbls/likeproj.hpp"
#include "sbls/oracle.hpp"
#include "sbls/solvers.hpp"
#include "sbls/stationarity.hpp"
#include "test_support.hpp"

namespace {

using namespace sbls;
using testing::max_abs_diff;
using testing::pt;
using testing::vec;

constexpr double kObjectiveTol = 1e-12;
constexpr double kGradientTol = 1e-10;
constexpr double kSetTol = 1e-12;
constexpr double kFiniteDiffStep = 1e-6;
constexpr double kFiniteDiffRelTol = 1e-6;
constexpr double kPlantedTol = 1e-10;
constexpr double kDistanceTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

bool same_set(const ProjectionResult& got, const std::vector<Point>& want, double tol) {
  if (got.count != want.size() || got.minimizers.size() != want.size()) return false;
  for (std::size_t k = 0; k < want.size(); ++k) {
    if (max_abs_diff(got.minimizers[k], want[k]) > tol) return false;
  }
  return true;
}

bool same_set(const ProjectionResult& a, const ProjectionResult& b, double tol) {
  return same_set(a, b.minimizers, tol) && a.count == b.count;
}

Point random_point(int m, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-3, 3);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution coin(0.5), zero_x(0.1);
  const bool ints = coin(rng);
  Point z{Vec(m), Vec(n)};
  for (int i = 0; i < m; ++i) z.x[i] = ints ? small(rng) : normal(rng);
  for (int j = 0; j < n; ++j) z.y[j] = ints ? small(rng) : normal(rng);
  if (zero_x(rng)) z.x.setZero();
  return z;
}

Outcome criterion_example_a() {
  Outcome o;
  const Instance inst = bundled_example_a().instance;
  const Point zbar = pt({1, 1, 0, 1, 1, 0}, 3);
  o.require(std::abs(objective(inst, zbar) - 2.5) <= kObjectiveTol, "f(zbar) != 5/2");
  o.require(max_abs_diff(gradient(inst, zbar), vec({0, 0, 2, 0, 0, -5})) <= kGradientTol, "gradient mismatch");
  const StationarityReport rep = classify(inst, zbar);
  o.require(rep.nb, "NB should hold");
  o.require(!rep.cw, "CW should fail");
  bool reaches_optimum = false;
  for (const CwMove& mv : rep.cw_check.violations) {
    Vec z = zbar.concatenated();
    z[mv.i] = 0.0;
    z[mv.j] += mv.u;
    const Point moved = Point::from_concatenated(z, 3);
    if (max_abs_diff(moved, pt({1, 1, 0, 1, 0, 1}, 3)) <= kSetTol && objective(inst, moved) <= kObjectiveTol) {
      reaches_optimum = true;
    }
  }
  o.require(reaches_optimum, "no CW witness reaches (1,1,0,1,0,1) with f = 0");
  return o;
}

Outcome criterion_projection_examples() {
  Outcome o;
  o.require(same_set(like_project(pt({0, 0, 3, 3, -4, 2}, 3), 2, 2), {pt({0, 0, 1, 9, -12, 0}, 3)}, 0.0),
            "first like-projection");
  o.require(same_set(like_project(pt({0, 0, 1, 3, -4, 2}, 3), 2, 2), {pt({0, 0, 1, 3, -4, 0}, 3)}, 0.0),
            "second like-projection");
  o.require(same_set(classic_project(pt({0, 0, 3, 3, -4, 2}, 3), 2, 2),
                     {pt({1, 0, 3, 3, -4, 0}, 3), pt({0, 1, 3, 3, -4, 0}, 3)}, 0.0),
            "classic projection");
  const Point zero_x = pt({0, 0, 0, 3, -4, 2}, 3);
  const std::vector<Point> three = {pt({1, 0, 0, 3, -4, 0}, 3), pt({0, 1, 0, 3, -4, 0}, 3),
                                    pt({0, 0, 1, 3, -4, 0}, 3)};
  o.require(same_set(like_project(zero_x, 2, 2), three, 0.0), "x = 0 like-projection");
  o.require(same_set(like_project_oracle(zero_x, 2, 2), three, 0.0), "x = 0 oracle");
  return o;
}

Outcome criterion_oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const Point z = random_point(6, 6, rng);
    const ProjectionResult a = like_project(z, 2, 3);
    const ProjectionResult b = like_project_oracle(z, 2, 3);
    o.require(same_set(a, b, kSetTol) && std::abs(a.distance_sq - b.distance_sq) <= kSetTol,
              "point " + std::to_string(k) + " differs");
  }
  return o;
}

Outcome criterion_gradient() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = testing::random_instance(4, 5, 4, 2, 2, 100 + seed);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 20; ++k) {
      Vec z(9);
      for (auto& v : z) v = normal(rng);
      const Point p = Point::from_concatenated(z, 5);
      const Vec g = gradient(inst, p);
      const Vec fd = finite_difference_gradient(inst, p, kFiniteDiffStep);
      worst = std::max(worst, (g - fd).norm() / std::max(1.0, g.norm()));
    }
  }
  o.require(worst <= kFiniteDiffRelTol, "relative error " + std::to_string(worst));
  o.detail = o.pass ? "max relative error " + std::to_string(worst) : o.detail;
  return o;
}

Outcome criterion_lattice() {
  Outcome o;
  int points = 0, nb_true = 0;
  SolveConfig cfg;
  cfg.max_iter = 300;
  for (int k = 0; k < 10; ++k) {
    const int m = 3 + k % 3, n = 3 + (k / 3) % 3;
    const Instance inst = testing::random_instance(3, m, n, 2, 2, 500 + k);
    std::mt19937_64 rng(k);
    std::vector<Point> zs;
    for (int j = 0; j < 15; ++j) zs.push_back(testing::random_feasible_point(m, n, 2, 2, rng));
    for (int j = 0; j < 5; ++j) zs.push_back(liht_solve(inst, random_feasible_start(m, n, 2, 2, 40 * k + j), cfg).final);
    for (const Point& z : zs) {
      StationarityReport rep;
      try {
        rep = classify(inst, z, 1.0);
      } catch (const ConsistencyError& e) {
        o.require(false, e.what());
        continue;
      }
      const SupportProfile p = support_profile(z);
      const bool ok = rep.nb == rep.tb && rep.nc == rep.tc && rep.nc == rep.m && (!rep.llike->holds || rep.nb) &&
                      (!rep.cw || rep.nb) && (!rep.nb || rep.nc) &&
                      (p.card1 != inst.s || p.card2 != inst.t || rep.nb == rep.nc);
      o.require(ok, "lattice violated on instance " + std::to_string(k));
      ++points;
      nb_true += rep.nb;
    }
  }
  o.require(points == 200, "expected 200 points");
  if (o.pass) o.detail = std::to_string(points) + " points, " + std::to_string(nb_true) + " N^B-stationary";
  return o;
}

Outcome criterion_necessity() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PlantedInstance p = gen_planted(6, 4 + seed % 2, 5, 2, 2, 1000 + seed);
    const BruteResult r = global_brute(p.instance);
    o.require(r.certified, "planted instance " + std::to_string(seed) + " not certified");
    if (!r.certified) continue;
    const StationarityReport rep = classify(p.instance, r.z, 1.0);
    o.require(rep.nb && rep.tb && rep.nc && rep.tc && rep.cw && rep.m && rep.llike->holds,
              "certified optimum " + std::to_string(seed) + " fails a flag");
  }
  const InstanceFile b = bundled_example_b();
  const Point z = *b.known_point;
  const Vec g = gradient(b.instance, z);
  o.require(max_abs_diff(g, finite_difference_gradient(b.instance, z, kFiniteDiffStep)) <= 1e-6,
            "example B gradient disagrees with finite differences");
  o.require(max_abs_diff(g, vec({2, -2, 0, 0, 0, 0, 0, 0})) <= kGradientTol, "example B gradient value");
  const Tolerance tol = default_tolerance(b.instance, z);
  for (double L : {0.1, 1.0, 10.0, 100.0}) {
    o.require(!check_Llike(b.instance, z, L, tol).holds, "example B is L-like at L = " + std::to_string(L));
  }
  const StationarityReport rep = classify(b.instance, z);
  if (o.pass) o.detail = std::string("example B re-evaluated: NB ") + (rep.nb ? "holds" : "fails");
  return o;
}

Outcome criterion_solvers() {
  Outcome o;
  auto monotone_feasible = [&](const Instance& inst, const SolveTrace& tr) {
    for (std::size_t k = 1; k < tr.iterates.size(); ++k) {
      o.require(tr.iterates[k].f <= tr.iterates[k - 1].f, tr.solver + " increased f");
    }
    o.require(is_feasible(inst, tr.final), tr.solver + " left the feasible set");
  };
  for (int k = 0; k < 10; ++k) {
    const Instance inst = testing::random_instance(4, 5, 4, 2, 2, 300 + k);
    const Point z0 = random_feasible_start(5, 4, 2, 2, k);
    SolveConfig cfg;
    for (int iters = 1; iters <= 10; ++iters) {
      cfg.max_iter = iters;
      monotone_feasible(inst, liht_solve(inst, z0, cfg));
      monotone_feasible(inst, alternating_ht(inst, z0, cfg));
    }
    cfg.max_iter = 1000;
    monotone_feasible(inst, liht_solve(inst, z0, cfg));
    monotone_feasible(inst, alternating_ht(inst, z0, cfg));
  }
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PlantedInstance p = gen_planted(8, 5, 5, 2, 2, seed);
    SolveConfig cfg;
    cfg.n_starts = 50;
    cfg.seed = seed;
    cfg.max_iter = 5000;
    const SolveTrace best = multistart(p.instance, cfg);
    monotone_feasible(p.instance, best);
    worst = std::max(worst, best.final_f());
  }
  o.require(worst <= kPlantedTol, "planted final f " + std::to_string(worst));
  return o;
}

Outcome criterion_distance() {
  Outcome o;
  std::mt19937_64 rng(31);
  for (int k = 0; k < 500; ++k) {
    const int m = 2 + k % 6, n = 2 + (k / 6) % 6;
    const int s = 1 + k % (m - 1), t = 1 + k % (n - 1);
    const Point z = random_point(m, n, rng);
    const ProjectionResult r = like_project(z, s, t);
    std::vector<double> ax(z.x.data(), z.x.data() + m), ay(z.y.data(), z.y.data() + n);
    for (double& v : ax) v = std::abs(v);
    for (double& v : ay) v = std::abs(v);
    std::sort(ax.rbegin(), ax.rend());
    std::sort(ay.rbegin(), ay.rend());
    double tail = 0.0;
    if (z.x.isZero()) {
      tail = 1.0;
    } else {
      for (int i = s; i < m; ++i) tail += ax[i] * ax[i];
    }
    for (int j = t; j < n; ++j) tail += ay[j] * ay[j];
    o.require(std::abs(r.distance_sq - tail) <= kDistanceTol, "formula mismatch at sample " + std::to_string(k));
    for (const Point& u : r.minimizers) {
      o.require(std::abs(like_distance_sq(z, u) - tail) <= kDistanceTol, "minimizer distance mismatch");
    }
  }
  return o;
}

Outcome criterion_cli() {
  Outcome o;
  for (const std::string& name : repro_names()) {
    const ReproResult r = run_repro(name);
    o.require(r.passed, "repro " + name + " failed");
  }
  auto bits_equal = [](const InstanceFile& a, const InstanceFile& b) {
    if (a.instance.tensor.data().size() != b.instance.tensor.data().size()) return false;
    for (std::size_t k = 0; k < a.instance.tensor.data().size(); ++k) {
      if (std::bit_cast<std::uint64_t>(a.instance.tensor.data()[k]) !=
          std::bit_cast<std::uint64_t>(b.instance.tensor.data()[k])) {
        return false;
      }
    }
    for (Eigen::Index i = 0; i < a.instance.b.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(a.instance.b[i]) != std::bit_cast<std::uint64_t>(b.instance.b[i])) return false;
    }
    return a.instance.s == b.instance.s && a.instance.t == b.instance.t;
  };
  std::vector<InstanceFile> files = {bundled_example_a(), bundled_example_b()};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PlantedInstance p = gen_planted(3, 4, 3, 2, 2, seed);
    files.push_back({p.instance, p.planted, "planted"});
  }
  for (const InstanceFile& f : files) {
    const std::string text = serialize_instance(f);
    const InstanceFile back = parse_instance(text);
    o.require(bits_equal(f, back) && serialize_instance(back) == text, "round trip not bit-exact");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "example A values, N^B and CW witness", 1.0, criterion_example_a},
      {2, "like-projection and classic projection examples", 1.0, criterion_projection_examples},
      {3, "like_project equals enumeration oracle on 200 points", 30.0, criterion_oracle_equivalence},
      {4, "gradient against central finite differences", 60.0, criterion_gradient},
      {5, "stationarity implication lattice on 200 points", 120.0, criterion_lattice},
      {6, "certified optima pass every flag; example B conclusions", 120.0, criterion_necessity},
      {7, "solver monotonicity, feasibility and planted recovery", 300.0, criterion_solvers},
      {8, "like-projection distance formula", 30.0, criterion_distance},
      {9, "repro examples and bit-exact instance round trip", 60.0, criterion_cli},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && seconds > c.limit_seconds) {
      o.pass = false;
      o.detail = "took longer than " + std::to_string(c.limit_seconds) + " s";
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
