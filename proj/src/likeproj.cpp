#include "sbls/likeproj.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace sbls {

namespace {

bool block_is_zero(const Vec& v, double zero_tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > zero_tol) return false;
  }
  return true;
}

// Indices of v sorted by decreasing magnitude, ties by index.
std::vector<int> order_by_magnitude(const Vec& v, const std::vector<int>& candidates) {
  std::vector<int> order = candidates;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(v[a]) > std::abs(v[b]); });
  return order;
}

std::vector<int> iota_vector(int begin, int end) {
  std::vector<int> out(static_cast<std::size_t>(std::max(0, end - begin)));
  std::iota(out.begin(), out.end(), begin);
  return out;
}

// Keeping the k largest magnitudes among `candidates`: `fixed` is always kept
// and `need` further indices are chosen from `ties`.
struct Selection {
  std::vector<int> fixed;
  std::vector<int> ties;
  int need = 0;
  double discarded_sq = 0.0;
};

Selection select_top(const Vec& v, const std::vector<int>& candidates, int k, double zero_tol,
                     double tie_tol) {
  Selection sel;
  const std::vector<int> order = order_by_magnitude(v, candidates);
  const int size = static_cast<int>(order.size());
  if (k >= size) {
    sel.fixed = order;
    std::sort(sel.fixed.begin(), sel.fixed.end());
    return sel;
  }
  for (int r = k; r < size; ++r) sel.discarded_sq += v[order[r]] * v[order[r]];
  if (k <= 0) return sel;

  const double mk = std::abs(v[order[k - 1]]);
  if (mk <= zero_tol) {
    // Ties at zero magnitude give identical projections; keep the nonzeros.
    for (int i : order) {
      if (std::abs(v[i]) > zero_tol) sel.fixed.push_back(i);
    }
  } else {
    for (int i : order) {
      const double a = std::abs(v[i]);
      if (a > mk + tie_tol) {
        sel.fixed.push_back(i);
      } else if (a >= mk - tie_tol) {
        sel.ties.push_back(i);
      }
    }
    sel.need = k - static_cast<int>(sel.fixed.size());
    std::sort(sel.ties.begin(), sel.ties.end());
  }
  std::sort(sel.fixed.begin(), sel.fixed.end());
  return sel;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::size_t choice_count(const Selection& sel) {
  return binomial(sel.ties.size(), static_cast<std::size_t>(sel.need));
}

// Calls fn(chosen) for each `need`-subset of ties in lexicographic order;
// stops after `limit` calls.
template <typename Fn>
void for_each_choice(const Selection& sel, std::size_t limit, Fn&& fn) {
  const int n = static_cast<int>(sel.ties.size());
  const int k = sel.need;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t calls = 0;
  while (calls < limit) {
    std::vector<int> kept = sel.fixed;
    for (int p : idx) kept.push_back(sel.ties[p]);
    std::sort(kept.begin(), kept.end());
    fn(kept);
    ++calls;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

std::vector<int> support_of(const Point& u) {
  std::vector<int> out;
  for (int i = 0; i < u.m(); ++i) {
    if (u.x[i] != 0.0) out.push_back(i);
  }
  for (int j = 0; j < u.n(); ++j) {
    if (u.y[j] != 0.0) out.push_back(u.m() + j);
  }
  return out;
}

bool same_point(const Point& a, const Point& b, double tol) {
  return (a.x - b.x).lpNorm<Eigen::Infinity>() <= tol &&
         (a.y - b.y).lpNorm<Eigen::Infinity>() <= tol;
}

// Sorts by support, drops duplicates, and applies the listing cap.
void finalize(ProjectionResult& result, std::vector<Point> found, std::size_t count, double tol) {
  std::stable_sort(found.begin(), found.end(), [](const Point& a, const Point& b) {
    return support_of(a) < support_of(b);
  });
  std::vector<Point> unique;
  for (Point& p : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(),
                                 [&](const Point& q) { return same_point(p, q, tol); });
    if (!dup) unique.push_back(std::move(p));
  }
  result.count = std::max(count, unique.size());
  if (result.count > kMaxListedMinimizers) unique.resize(1);
  result.minimizers = std::move(unique);
}

}  // namespace

double kth_largest_magnitude(const Vec& v, int k) {
  if (k < 1 || k > v.size()) return 0.0;
  std::vector<double> mags(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
  std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(), std::greater<>());
  return mags[k - 1];
}

std::optional<Point> psi(const Point& z, const Point& u, double zero_tol) {
  if (z.m() != u.m() || z.n() != u.n()) throw DimensionError("psi needs points of equal shape");
  if (block_is_zero(z.x, zero_tol)) return u;
  for (int i = 0; i < z.m(); ++i) {
    if (std::abs(u.x[i]) > zero_tol && std::abs(z.x[i]) > zero_tol) {
      const double pivot = z.x[i];
      return Point(pivot * u.x, u.y / pivot);
    }
  }
  return std::nullopt;
}

double like_distance_sq(const Point& z, const Point& u, double zero_tol) {
  const std::optional<Point> mapped = psi(z, u, zero_tol);
  if (!mapped) return std::numeric_limits<double>::infinity();
  return (mapped->x - z.x).squaredNorm() + (mapped->y - z.y).squaredNorm();
}

double like_projection_tail_distance(const Point& z, int s, int t, double zero_tol) {
  auto tail = [](const Vec& v, int keep) {
    double acc = 0.0;
    for (int r = keep + 1; r <= v.size(); ++r) {
      const double mr = kth_largest_magnitude(v, r);
      acc += mr * mr;
    }
    return acc;
  };
  const double x_part = block_is_zero(z.x, zero_tol) ? 1.0 : tail(z.x, s);
  return x_part + tail(z.y, t);
}

ProjectionResult like_project(const Point& z, int s, int t, const LikeProjectOptions& opts) {
  const int m = z.m();
  const int n = z.n();
  if (s < 1 || s >= m || t < 1 || t >= n) throw DimensionError("need 1 <= s < m and 1 <= t < n");

  ProjectionResult result;
  result.distance_sq = like_projection_tail_distance(z, s, t, opts.zero_tol);

  const Selection ysel = select_top(z.y, iota_vector(0, n), t, opts.zero_tol, opts.tie_tol);
  const std::size_t ycount = choice_count(ysel);
  std::vector<Point> found;

  auto keep_y = [&](Point& u, const std::vector<int>& omega2, double scale) {
    for (int j : omega2) {
      if (std::abs(z.y[j]) > opts.zero_tol) u.y[j] = scale * z.y[j];
    }
  };

  if (block_is_zero(z.x, opts.zero_tol)) {
    const std::size_t total = static_cast<std::size_t>(m) * ycount;
    const std::size_t per_pivot = total > kMaxListedMinimizers ? 1 : ycount;
    const int pivots = total > kMaxListedMinimizers ? 1 : m;
    for (int i0 = 0; i0 < pivots; ++i0) {
      for_each_choice(ysel, per_pivot, [&](const std::vector<int>& omega2) {
        Point u(Vec::Zero(m), Vec::Zero(n));
        u.x[i0] = 1.0;
        keep_y(u, omega2, 1.0);
        found.push_back(std::move(u));
      });
    }
    finalize(result, std::move(found), total, 0.0);
    return result;
  }

  const Selection xsel = select_top(z.x, iota_vector(0, m), s, opts.zero_tol, opts.tie_tol);
  const std::size_t total = choice_count(xsel) * ycount;
  const std::size_t xlimit = total > kMaxListedMinimizers ? 1 : choice_count(xsel);
  const std::size_t ylimit = total > kMaxListedMinimizers ? 1 : ycount;

  for_each_choice(xsel, xlimit, [&](const std::vector<int>& omega1) {
    int pivot = -1;
    for (int i : omega1) {
      if (std::abs(z.x[i]) > opts.zero_tol) {
        pivot = i;
        break;
      }
    }
    const double xp = z.x[pivot];
    for_each_choice(ysel, ylimit, [&](const std::vector<int>& omega2) {
      Point u(Vec::Zero(m), Vec::Zero(n));
      for (int i : omega1) {
        if (std::abs(z.x[i]) > opts.zero_tol) u.x[i] = z.x[i] / xp;
      }
      u.x[pivot] = 1.0;
      keep_y(u, omega2, xp);
      found.push_back(std::move(u));
    });
  });
  finalize(result, std::move(found), total, 0.0);
  return result;
}

ProjectionResult like_project_oracle(const Point& z, int s, int t, double zero_tol) {
  const int m = z.m();
  const int n = z.n();
  if (m > 8 || n > 8) throw DimensionError("enumeration oracle is limited to m, n <= 8");
  if (s < 1 || s >= m || t < 1 || t >= n) throw DimensionError("need 1 <= s < m and 1 <= t < n");

  const bool x_zero = block_is_zero(z.x, zero_tol);
  std::vector<std::pair<double, Point>> candidates;

  for (unsigned mask1 = 1; mask1 < (1u << m); ++mask1) {
    if (std::popcount(mask1) > s) continue;
    const int first = std::countr_zero(mask1);
    int pivot = -1;
    if (!x_zero) {
      for (int i = 0; i < m; ++i) {
        if ((mask1 >> i & 1u) && std::abs(z.x[i]) > zero_tol) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) continue;
    }
    const double scale = x_zero ? 1.0 : z.x[pivot];
    for (unsigned mask2 = 0; mask2 < (1u << n); ++mask2) {
      if (std::popcount(mask2) > t) continue;
      // Per-coordinate minimizer of ||psi_z(u) - z||^2 with the support
      // fixed: psi scales x by `scale` and y by 1/scale.
      Point u(Vec::Zero(m), Vec::Zero(n));
      for (int i = 0; i < m; ++i) {
        if (mask1 >> i & 1u) u.x[i] = x_zero ? 0.0 : z.x[i] / scale;
      }
      u.x[first] = 1.0;
      for (int j = 0; j < n; ++j) {
        if (mask2 >> j & 1u) u.y[j] = z.y[j] * scale;
      }
      const double cost = like_distance_sq(z, u, zero_tol);
      if (std::isfinite(cost)) candidates.emplace_back(cost, std::move(u));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::min(best, c.first);
  const double scale = 1.0 + z.x.squaredNorm() + z.y.squaredNorm();
  const double cost_tol = 1e-12 * scale;
  std::vector<Point> found;
  for (auto& c : candidates) {
    if (c.first <= best + cost_tol) found.push_back(std::move(c.second));
  }
  // Entries at or below zero_tol are zero in every sense the checks use.
  for (Point& p : found) {
    for (int i = 0; i < m; ++i) {
      if (std::abs(p.x[i]) <= zero_tol) p.x[i] = 0.0;
    }
    for (int j = 0; j < n; ++j) {
      if (std::abs(p.y[j]) <= zero_tol) p.y[j] = 0.0;
    }
  }
  ProjectionResult result;
  result.distance_sq = best;
  finalize(result, std::move(found), 0, 1e-12 * std::sqrt(scale));
  return result;
}

ProjectionResult classic_project(const Point& z, int s, int t, const LikeProjectOptions& opts) {
  const int m = z.m();
  const int n = z.n();
  if (s < 1 || s >= m || t < 1 || t >= n) throw DimensionError("need 1 <= s < m and 1 <= t < n");

  const Selection ysel = select_top(z.y, iota_vector(0, n), t, opts.zero_tol, opts.tie_tol);
  std::vector<double> costs(static_cast<std::size_t>(m));
  std::vector<Selection> rests(static_cast<std::size_t>(m));
  double prefix_sq = 0.0;
  for (int g = 0; g < m; ++g) {
    rests[g] = select_top(z.x, iota_vector(g + 1, m), s - 1, opts.zero_tol, opts.tie_tol);
    costs[g] = (z.x[g] - 1.0) * (z.x[g] - 1.0) + prefix_sq + rests[g].discarded_sq;
    prefix_sq += z.x[g] * z.x[g];
  }
  const double best = *std::min_element(costs.begin(), costs.end());
  const double cost_tol = 1e-12 * (1.0 + z.x.squaredNorm() + z.y.squaredNorm());

  std::vector<int> pivots;
  std::size_t total = 0;
  for (int g = 0; g < m; ++g) {
    if (costs[g] <= best + cost_tol) {
      pivots.push_back(g);
      total += choice_count(rests[g]) * choice_count(ysel);
    }
  }
  const bool capped = total > kMaxListedMinimizers;

  ProjectionResult result;
  result.distance_sq = best + ysel.discarded_sq;
  std::vector<Point> found;
  for (int g : pivots) {
    const std::size_t xlimit = capped ? 1 : choice_count(rests[g]);
    for_each_choice(rests[g], xlimit, [&](const std::vector<int>& kept_x) {
      for_each_choice(ysel, capped ? 1 : choice_count(ysel), [&](const std::vector<int>& kept_y) {
        Point u(Vec::Zero(m), Vec::Zero(n));
        u.x[g] = 1.0;
        for (int i : kept_x) {
          if (std::abs(z.x[i]) > opts.zero_tol) u.x[i] = z.x[i];
        }
        for (int j : kept_y) {
          if (std::abs(z.y[j]) > opts.zero_tol) u.y[j] = z.y[j];
        }
        found.push_back(std::move(u));
      });
    });
    if (capped) break;
  }
  finalize(result, std::move(found), total, 0.0);
  return result;
}

bool contains_minimizer(const ProjectionResult& result, const Point& u, double tol) {
  return std::any_of(result.minimizers.begin(), result.minimizers.end(),
                     [&](const Point& p) { return same_point(p, u, tol); });
}

}  // namespace sbls
