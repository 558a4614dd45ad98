#include "sbls/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/QR>

#include "sbls/parallel.hpp"

namespace sbls {

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::size_t>(n - k + i) / i;
  return out;
}

// Subsets of {offset, ..., offset + n - 1} with min_size <= size <= max_size,
// by size then lexicographically.
std::vector<std::vector<int>> subsets(int n, int min_size, int max_size, int offset) {
  std::vector<std::vector<int>> out;
  for (int k = min_size; k <= std::min(max_size, n); ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<int> set(idx);
      for (int& v : set) v += offset;
      out.push_back(std::move(set));
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return out;
}

// Minimum-norm least squares for the columns `cols` of `a` against rhs.
Vec lstsq(const Mat& a, const std::vector<int>& cols, const Vec& rhs) {
  if (cols.empty()) return Vec();
  Mat sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
  return Eigen::CompleteOrthogonalDecomposition<Mat>(sub).solve(rhs);
}

struct Restricted {
  const Instance& inst;
  int g;                   // forced-one x index
  std::vector<int> free1;  // x indices other than g
  std::vector<int> cols2;  // y indices, 0-based within the y block

  void solve_y(Point& z) const {
    z.y.setZero();
    if (cols2.empty()) return;
    const Mat q = mode2_product(inst.tensor, z.x);
    const Vec sol = lstsq(q, cols2, inst.b);
    for (std::size_t c = 0; c < cols2.size(); ++c) z.y[cols2[c]] = sol[static_cast<Eigen::Index>(c)];
  }

  void solve_x(Point& z) const {
    for (int i : free1) z.x[i] = 0.0;
    z.x[g] = 1.0;
    if (free1.empty()) return;
    const Mat p = mode3_product(inst.tensor, z.y);
    const Vec sol = lstsq(p, free1, inst.b - p.col(g));
    for (std::size_t c = 0; c < free1.size(); ++c) z.x[free1[c]] = sol[static_cast<Eigen::Index>(c)];
  }

  // Alternating sweeps from the given x until the decrease stalls.
  double polish(Point& z, int max_sweeps) const {
    solve_y(z);
    double f = objective(inst, z);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      Point next = z;
      solve_x(next);
      solve_y(next);
      const double fn = objective(inst, next);
      if (!(fn < f)) break;
      const double gain = f - fn;
      z = std::move(next);
      f = fn;
      if (gain <= 1e-15 * (1.0 + f)) break;
    }
    return levenberg_marquardt(z, f);
  }

  // Joint damped Gauss-Newton steps over the free x entries and the y
  // columns; alternating sweeps alone crawl near zero residual.
  double levenberg_marquardt(Point& z, double f) const {
    const Eigen::Index nx = static_cast<Eigen::Index>(free1.size());
    const Eigen::Index ny = static_cast<Eigen::Index>(cols2.size());
    if (ny == 0) return f;
    double lambda = 1e-3;
    for (int it = 0; it < 100 && f > 0.0; ++it) {
      const Mat p = mode3_product(inst.tensor, z.y);
      const Mat q = mode2_product(inst.tensor, z.x);
      Mat jac(inst.b.size(), nx + ny);
      for (Eigen::Index c = 0; c < nx; ++c) jac.col(c) = p.col(free1[c]);
      for (Eigen::Index c = 0; c < ny; ++c) jac.col(nx + c) = q.col(cols2[c]);
      const Vec r = q * z.y - inst.b;
      const Mat jtj = jac.transpose() * jac;
      const Vec jtr = jac.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        Mat h = jtj;
        h.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        const Vec step = h.ldlt().solve(-jtr);
        Point next = z;
        for (Eigen::Index c = 0; c < nx; ++c) next.x[free1[c]] += step[c];
        for (Eigen::Index c = 0; c < ny; ++c) next.y[cols2[c]] += step[nx + c];
        const double fn = objective(inst, next);
        if (fn < f) {
          z = std::move(next);
          const double gain = f - fn;
          f = fn;
          lambda = std::max(lambda / 10.0, 1e-15);
          improved = gain > 1e-30 * (1.0 + f) || f == 0.0;
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
    }
    return f;
  }
};

bool better(double f, std::size_t idx, double best_f, std::size_t best_idx) {
  return f < best_f || (f == best_f && idx < best_idx);
}

}  // namespace

std::size_t count_support_pairs(int m, int n, int s, int t) {
  std::size_t c1 = 0;
  for (int k = 1; k <= std::min(s, m); ++k) c1 += binomial(m, k);
  std::size_t c2 = 0;
  for (int k = 0; k <= std::min(t, n); ++k) c2 += binomial(n, k);
  return c1 * c2;
}

std::vector<SupportPair> enumerate_supports(int m, int n, int s, int t, std::size_t budget) {
  if (m < 1 || n < 1 || s < 1 || t < 0) throw std::invalid_argument("invalid support dimensions");
  const std::size_t total = count_support_pairs(m, n, s, t);
  if (total > budget) {
    throw BudgetExceededError(std::to_string(total) + " support pairs exceed the budget of " +
                              std::to_string(budget));
  }
  const auto firsts = subsets(m, 1, s, 0);
  const auto seconds = subsets(n, 0, t, m);
  std::vector<SupportPair> out;
  out.reserve(total);
  for (const auto& a : firsts) {
    for (const auto& b : seconds) out.push_back({a, b});
  }
  return out;
}

RestrictedSolution solve_restricted(const Instance& inst, const SupportPair& pair,
                                    const RestrictedOptions& opts) {
  const int m = inst.m();
  const int n = inst.n();
  if (pair.s1.empty()) throw std::invalid_argument("S1 must be nonempty");
  if (static_cast<int>(pair.s1.size()) > inst.s || static_cast<int>(pair.s2.size()) > inst.t) {
    throw std::invalid_argument("support pair exceeds the sparsity budgets");
  }
  std::vector<int> s1 = pair.s1;
  std::sort(s1.begin(), s1.end());
  Restricted prob{inst, s1.front(), {}, {}};
  prob.free1.assign(s1.begin() + 1, s1.end());
  for (int j : pair.s2) {
    if (j < m || j >= m + n) throw std::invalid_argument("S2 index outside the y block");
    prob.cols2.push_back(j - m);
  }
  for (int i : s1) {
    if (i < 0 || i >= m) throw std::invalid_argument("S1 index outside the x block");
  }

  auto start = [&]() {
    Point z(Vec::Zero(m), Vec::Zero(n));
    z.x[prob.g] = 1.0;
    return z;
  };

  RestrictedSolution best{start(), std::numeric_limits<double>::infinity()};
  auto consider = [&](Point z) {
    const double f = prob.polish(z, opts.max_sweeps);
    if (f < best.f) best = {std::move(z), f};
  };

  consider(start());
  if (!prob.free1.empty()) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    for (int k = 0; k < opts.n_starts; ++k) {
      Point z = start();
      for (int i : prob.free1) z.x[i] = normal(rng);
      consider(std::move(z));
    }
    if (opts.grid_fallback && prob.free1.size() <= 3) {
      constexpr int kGrid = 41;
      const std::size_t dims = prob.free1.size();
      std::size_t points = 1;
      for (std::size_t d = 0; d < dims; ++d) points *= kGrid;
      Point grid_best = start();
      double grid_f = std::numeric_limits<double>::infinity();
      for (std::size_t code = 0; code < points; ++code) {
        Point z = start();
        std::size_t rest = code;
        for (std::size_t d = 0; d < dims; ++d) {
          z.x[prob.free1[d]] = -3.0 + 6.0 * static_cast<double>(rest % kGrid) / (kGrid - 1);
          rest /= kGrid;
        }
        prob.solve_y(z);
        const double f = objective(inst, z);
        if (f < grid_f) {
          grid_f = f;
          grid_best = std::move(z);
        }
      }
      consider(std::move(grid_best));
    }
  }
  return best;
}

BruteResult global_brute(const Instance& inst, const RestrictedOptions& opts, std::size_t budget) {
  const std::vector<SupportPair> pairs = enumerate_supports(inst.m(), inst.n(), inst.s, inst.t, budget);
  std::vector<RestrictedSolution> solved(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    RestrictedOptions local = opts;
    local.seed = opts.seed + 0x9E3779B97F4A7C15ULL * (k + 1);
    solved[k] = solve_restricted(inst, pairs[k], local);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < solved.size(); ++k) {
    if (better(solved[k].f, k, solved[best].f, best)) best = k;
  }
  BruteResult result;
  result.z = solved[best].z;
  result.f = solved[best].f;
  result.pair = pairs[best];
  result.pairs_tested = pairs.size();
  result.certified = result.f <= 1e-18 * (1.0 + inst.b.squaredNorm());
  return result;
}

}  // namespace sbls
