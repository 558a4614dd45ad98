#include "sbls/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbls/likeproj.hpp"

namespace sbls {

namespace {

IndexCheck gradient_vanishes_on(const Vec& grad, const std::vector<int>& indices, double tol) {
  IndexCheck check;
  for (int i : indices) {
    if (std::abs(grad[i]) > tol) check.violations.push_back(i);
  }
  check.holds = check.violations.empty();
  return check;
}

// Indices in [begin, end) outside the support, by decreasing |grad|, ties by
// index.
std::vector<int> ranked_off_support(const Vec& grad, const SupportProfile& p, int begin,
                                    int end) {
  std::vector<int> out;
  for (int i = begin; i < end; ++i) {
    if (!p.in_support(i)) out.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](int a, int b) { return std::abs(grad[a]) > std::abs(grad[b]); });
  return out;
}

// Largest |grad_i| over i in [begin, end) outside the support.
double max_off_support(const Vec& grad, const SupportProfile& p, int begin, int end) {
  double out = 0.0;
  for (int i = begin; i < end; ++i) {
    if (!p.in_support(i)) out = std::max(out, std::abs(grad[i]));
  }
  return out;
}

bool inequality_holds(const Vec& grad, const SupportProfile& p, double L, double ms, double mt,
                      double grad_tol, std::vector<int>* violations) {
  bool ok = true;
  auto fail = [&](int i) {
    ok = false;
    if (violations) violations->push_back(i);
  };
  for (int i = 0; i < p.m + p.n; ++i) {
    const double g = std::abs(grad[i]);
    if (p.in_support(i)) {
      if (g > grad_tol) fail(i);
    } else {
      const double bound = (i < p.m ? ms : mt) * L;
      if (g > bound + grad_tol) fail(i);
    }
  }
  return ok;
}

}  // namespace

Tolerance default_tolerance(const Instance& inst, const Point& z) {
  Tolerance tol;
  const Vec grad = gradient(inst, z);
  tol.grad_tol = 1e-8 * (1.0 + grad.lpNorm<Eigen::Infinity>());
  tol.obj_tol = 1e-10 * (1.0 + objective(inst, z));
  tol.zero_tol = kDefaultZeroTol;
  return tol;
}

IndexCheck check_NB(const Instance& inst, const Point& z, const Tolerance& tol) {
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  return gradient_vanishes_on(gradient(inst, z), bouligand_normal_zero_set(p, inst.s, inst.t),
                              tol.grad_tol);
}

IndexCheck check_NC(const Instance& inst, const Point& z, const Tolerance& tol) {
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  return gradient_vanishes_on(gradient(inst, z), clarke_core(p), tol.grad_tol);
}

std::vector<int> tangent_covered_set(const Instance& inst, const Point& z, ConeSense sense,
                                     const Tolerance& tol) {
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  std::vector<int> covered = clarke_core(p);
  if (sense == ConeSense::Bouligand) {
    const Vec grad = gradient(inst, z);
    const int gx = *p.gamma_x;
    const int x_room = inst.s - p.card1;
    const int y_room = inst.t - p.card2;
    const std::vector<int> x_extra = ranked_off_support(grad, p, gx + 1, p.m);
    const std::vector<int> y_extra = ranked_off_support(grad, p, p.m, p.m + p.n);
    for (int r = 0; r < x_room && r < static_cast<int>(x_extra.size()); ++r) {
      covered.push_back(x_extra[r]);
    }
    for (int r = 0; r < y_room && r < static_cast<int>(y_extra.size()); ++r) {
      covered.push_back(y_extra[r]);
    }
    std::sort(covered.begin(), covered.end());
  }
  return covered;
}

double restricted_gradient_norm(const Instance& inst, const Point& z, ConeSense sense,
                                const Tolerance& tol) {
  const Vec grad = gradient(inst, z);
  double acc = 0.0;
  for (int i : tangent_covered_set(inst, z, sense, tol)) acc += grad[i] * grad[i];
  return std::sqrt(acc);
}

IndexCheck check_T(const Instance& inst, const Point& z, ConeSense sense, const Tolerance& tol) {
  return gradient_vanishes_on(gradient(inst, z), tangent_covered_set(inst, z, sense, tol),
                              tol.grad_tol);
}

CwResult check_CW(const Instance& inst, const Point& z, const Tolerance& tol) {
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  const int m = p.m;
  const int n = p.n;
  const int gx = *p.gamma_x;
  const Vec grad = gradient(inst, z);
  const Vec r = residual(inst, z);
  const double fz = 0.5 * r.squaredNorm();
  const Mat px = mode3_product(inst.tensor, z.y);  // response columns of x coordinates
  const Mat py = mode2_product(inst.tensor, z.x);  // response columns of y coordinates
  const Vec zc = z.concatenated();

  auto column = [&](int j) -> Vec { return j < m ? Vec(px.col(j)) : Vec(py.col(j - m)); };

  CwResult result;
  // Single-coordinate move from z: improving iff the partial derivative is
  // nonzero.
  auto coordinate = [&](int i) {
    if (std::abs(grad[i]) <= tol.grad_tol) return;
    const Vec c = column(i);
    const double cc = c.squaredNorm();
    const double u = -grad[i] / cc;
    result.violations.push_back({i, i, u, fz - 0.5 * grad[i] * grad[i] / cc});
  };
  // Zero coordinate i, then re-optimize coordinate j.
  auto swap = [&](int i, int j) {
    if (i == j) {
      coordinate(i);
      return;
    }
    const Vec r0 = r - zc[i] * column(i);
    const Vec c = column(j);
    const double cc = c.squaredNorm();
    double u = 0.0;
    double value = 0.5 * r0.squaredNorm();
    if (cc > 0.0) {
      const double cr = c.dot(r0);
      u = -cr / cc;
      value -= 0.5 * cr * cr / cc;
    }
    if (value < fz - tol.obj_tol) result.violations.push_back({i, j, u, value});
  };

  const bool x_full = p.card1 == inst.s;
  const bool y_full = p.card2 == inst.t;
  if (x_full && y_full) {
    for (int i : clarke_core(p)) {
      const int begin = i < m ? gx + 1 : m;
      const int end = i < m ? m : m + n;
      for (int j = begin; j < end; ++j) swap(i, j);
    }
  } else if (!x_full && !y_full) {
    for (int i = gx + 1; i < m + n; ++i) coordinate(i);
  } else if (x_full) {
    for (int i : p.gamma1) {
      if (i == gx) continue;
      for (int j = gx + 1; j < m; ++j) swap(i, j);
    }
    for (int i = m; i < m + n; ++i) coordinate(i);
  } else {
    for (int i = gx + 1; i < m; ++i) coordinate(i);
    for (int i : p.gamma2) {
      for (int j = m; j < m + n; ++j) swap(i, j);
    }
  }
  result.holds = result.violations.empty();
  return result;
}

LlikeResult check_Llike(const Instance& inst, const Point& z, double L, const Tolerance& tol) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  const Vec grad = gradient(inst, z);
  const double ms = p.card1 == inst.s ? kth_largest_magnitude(z.x, inst.s) : 0.0;
  const double mt = p.card2 == inst.t ? kth_largest_magnitude(z.y, inst.t) : 0.0;

  LlikeResult result;
  result.inequality_route =
      inequality_holds(grad, p, L, ms, mt, tol.grad_tol, &result.violations);

  // Fixed-point route. The normalization hides grad at the pivot, so that
  // entry is tested directly.
  const Point v = Point::from_concatenated(z.concatenated() - grad / L, p.m);
  LikeProjectOptions opts;
  opts.zero_tol = tol.zero_tol;
  opts.tie_tol = tol.grad_tol / L;
  const ProjectionResult proj = like_project(v, inst.s, inst.t, opts);
  const double scale = 1.0 + std::max(z.x.lpNorm<Eigen::Infinity>(), z.y.lpNorm<Eigen::Infinity>());
  const double fp_tol = 4.0 * tol.grad_tol / L * scale * scale + tol.zero_tol;
  result.fixed_point_route =
      std::abs(grad[*p.gamma_x]) <= tol.grad_tol && contains_minimizer(proj, z, fp_tol);

  if (result.fixed_point_route != result.inequality_route) {
    const double kappa = 100.0 * scale;
    const bool loose = inequality_holds(grad, p, L, ms, mt, tol.grad_tol * kappa, nullptr);
    const bool tight = inequality_holds(grad, p, L, ms, mt, tol.grad_tol / kappa, nullptr);
    if (loose == tight) {
      throw ConsistencyError("L-like routes disagree at L = " + std::to_string(L) +
                             ": inequality " + (result.inequality_route ? "true" : "false") +
                             ", fixed point " + (result.fixed_point_route ? "true" : "false"));
    }
  }
  result.holds = result.inequality_route;
  return result;
}

std::optional<double> minimal_L(const Instance& inst, const Point& z, const Tolerance& tol) {
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  const Vec grad = gradient(inst, z);
  for (int i : p.gamma) {
    if (std::abs(grad[i]) > tol.grad_tol) return std::nullopt;
  }
  const double ms = p.card1 == inst.s ? kth_largest_magnitude(z.x, inst.s) : 0.0;
  const double mt = p.card2 == inst.t ? kth_largest_magnitude(z.y, inst.t) : 0.0;
  double best = 0.0;
  auto block = [&](double g_max, double bound) {
    if (g_max <= tol.grad_tol) return true;
    if (bound <= tol.zero_tol) return false;
    best = std::max(best, g_max / bound);
    return true;
  };
  if (!block(max_off_support(grad, p, 0, p.m), ms)) return std::nullopt;
  if (!block(max_off_support(grad, p, p.m, p.m + p.n), mt)) return std::nullopt;
  return best;
}

MResult check_M(const Instance& inst, const Point& z, const Tolerance& tol) {
  const SupportProfile p = require_feasible(z, inst.s, inst.t, tol.zero_tol);
  const Vec grad = gradient(inst, z);
  const IndexCheck core = gradient_vanishes_on(grad, clarke_core(p), tol.grad_tol);
  MResult result;
  result.holds = core.holds;
  result.violations = core.violations;
  if (!result.holds) return result;

  const int dim = p.m + p.n;
  const int gx = *p.gamma_x;
  MWitness witness{Vec::Zero(dim), Vec::Zero(dim)};
  for (int i = 0; i < dim; ++i) {
    const bool on_support = p.in_support(i);
    witness.w[i] = on_support ? 0.0 : 1.0;
    if (!on_support && i > gx) witness.mu[i] = -grad[i];
  }
  const Vec d = -grad - witness.mu;
  for (int i = gx + 1; i < dim; ++i) {
    if (std::abs(d[i]) > tol.grad_tol) {
      throw ConsistencyError("M witness fails the normal cone test at index " +
                             std::to_string(i + 1));
    }
  }
  result.witness = std::move(witness);
  return result;
}

StationarityReport classify(const Instance& inst, const Point& z, std::optional<double> L,
                            const Tolerance& tol) {
  StationarityReport rep;
  rep.tolerance = tol;
  rep.gradient = gradient(inst, z);
  rep.objective = objective(inst, z);
  rep.nb_check = check_NB(inst, z, tol);
  rep.nc_check = check_NC(inst, z, tol);
  rep.nb = rep.nb_check.holds;
  rep.nc = rep.nc_check.holds;
  rep.tb = check_T(inst, z, ConeSense::Bouligand, tol).holds;
  rep.tc = check_T(inst, z, ConeSense::Clarke, tol).holds;
  rep.restricted_grad_norm_B = restricted_gradient_norm(inst, z, ConeSense::Bouligand, tol);
  rep.restricted_grad_norm_C = restricted_gradient_norm(inst, z, ConeSense::Clarke, tol);
  rep.cw_check = check_CW(inst, z, tol);
  rep.cw = rep.cw_check.holds;
  rep.m_check = check_M(inst, z, tol);
  rep.m = rep.m_check.holds;
  rep.minimal_L = minimal_L(inst, z, tol);
  rep.L = L;
  if (L) rep.llike = check_Llike(inst, z, *L, tol);

  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConsistencyError(std::string("stationarity lattice violated: ") + what);
  };
  require(rep.nb == rep.tb, "NB != TB");
  require(rep.nc == rep.tc, "NC != TC");
  require(rep.nc == rep.m, "NC != M");
  require(!rep.cw || rep.nb, "CW but not NB");
  require(!rep.nb || rep.nc, "NB but not NC");
  require(!rep.llike || !rep.llike->holds || rep.nb, "L-like but not NB");
  return rep;
}

StationarityReport classify(const Instance& inst, const Point& z, std::optional<double> L) {
  return classify(inst, z, L, default_tolerance(inst, z));
}

}  // namespace sbls
