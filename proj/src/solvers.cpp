#include "sbls/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "sbls/likeproj.hpp"
#include "sbls/parallel.hpp"

namespace sbls {

namespace {

// Keeps the k largest magnitudes of v (ties by index) plus `forced` when
// given; zeroes the rest.
Vec hard_threshold(const Vec& v, int k, int forced = -1) {
  std::vector<int> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(v[a]) > std::abs(v[b]); });
  Vec out = Vec::Zero(v.size());
  if (forced >= 0) out[forced] = v[forced];
  int kept = 0;
  for (int i : order) {
    if (kept == k) break;
    if (i == forced) continue;
    out[i] = v[i];
    ++kept;
  }
  return out;
}

double step_norm(const Point& a, const Point& b) {
  return std::sqrt((a.x - b.x).squaredNorm() + (a.y - b.y).squaredNorm());
}

void finish(SolveTrace& trace, const Instance& inst, const Point& z, double L) {
  trace.final = z;
  trace.final_L = L;
  trace.final_report = classify(inst, z, L);
}

std::uint64_t start_seed(std::uint64_t seed, int k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

void SolveConfig::validate() const {
  if (!(L0 > 0.0)) throw std::invalid_argument("L0 must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  if (!(f_tol >= 0.0) || !(step_tol >= 0.0)) throw std::invalid_argument("tolerances must be nonnegative");
  if (!(backtrack_factor > 1.0)) throw std::invalid_argument("backtrack_factor must exceed 1");
  if (!(max_L >= L0)) throw std::invalid_argument("max_L must be at least L0");
  if (n_starts < 1) throw std::invalid_argument("n_starts must be positive");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIter:
      return "max_iter";
    case SolveStatus::Stalled:
      return "stalled";
  }
  return "unknown";
}

Point renormalize(const Point& z, double zero_tol) {
  for (int i = 0; i < z.m(); ++i) {
    if (std::abs(z.x[i]) > zero_tol) {
      const double alpha = z.x[i];
      Point out(z.x / alpha, z.y * alpha);
      for (int k = 0; k < i; ++k) out.x[k] = 0.0;
      out.x[i] = 1.0;
      return out;
    }
  }
  throw InfeasiblePointError("cannot renormalize a zero x block");
}

Point liht_step(const Instance& inst, const Point& z, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  require_feasible(z, inst.s, inst.t);
  const Vec v = z.concatenated() - gradient(inst, z) / L;
  return like_project(Point::from_concatenated(v, inst.m()), inst.s, inst.t).minimizers.front();
}

SolveTrace liht_solve(const Instance& inst, const Point& z0, const SolveConfig& cfg) {
  cfg.validate();
  require_feasible(z0, inst.s, inst.t);
  SolveTrace trace;
  trace.solver = "liht";
  Point z = z0;
  double f = objective(inst, z);
  double L = cfg.L0;
  trace.iterates.push_back({0, f, L, 0.0});
  trace.status = SolveStatus::MaxIter;
  if (f == 0.0) {
    trace.status = SolveStatus::Converged;
    finish(trace, inst, z, L);
    return trace;
  }

  for (int it = 1; it <= cfg.max_iter; ++it) {
    Point cand;
    double fc = 0.0;
    bool accepted = false;
    bool negligible = false;
    // Try a longer step first so that one bad step does not pin L high.
    L = std::max(cfg.L0, L / cfg.backtrack_factor);
    while (true) {
      cand = liht_step(inst, z, L);
      if (step_norm(cand, z) <= cfg.step_tol) {
        negligible = true;
        break;
      }
      fc = objective(inst, cand);
      if (fc <= f) {
        accepted = true;
        break;
      }
      L *= cfg.backtrack_factor;
      if (L > cfg.max_L) break;
    }
    if (negligible) {
      trace.status = SolveStatus::Converged;
      break;
    }
    if (!accepted) {
      L /= cfg.backtrack_factor;
      trace.status = SolveStatus::Stalled;
      break;
    }
    const double step = step_norm(cand, z);
    const double decrease = f - fc;
    z = std::move(cand);
    f = fc;
    trace.iterates.push_back({it, f, L, step});
    if (step <= cfg.step_tol || decrease <= cfg.f_tol || f == 0.0) {
      trace.status = SolveStatus::Converged;
      break;
    }
  }
  finish(trace, inst, z, L);
  return trace;
}

SolveTrace alternating_ht(const Instance& inst, const Point& z0, const SolveConfig& cfg) {
  cfg.validate();
  require_feasible(z0, inst.s, inst.t);
  SolveTrace trace;
  trace.solver = "alternating_ht";
  Point z = renormalize(z0);
  double f = objective(inst, z);
  double Lx = cfg.L0;
  double Ly = cfg.L0;
  trace.iterates.push_back({0, f, cfg.L0, 0.0});
  trace.status = SolveStatus::MaxIter;
  if (f == 0.0) {
    trace.status = SolveStatus::Converged;
    finish(trace, inst, z, cfg.L0);
    return trace;
  }

  // One backtracked block update. Returns false when L ran past max_L while
  // the step was still significant.
  auto update = [&](bool x_block) -> bool {
    double& L = x_block ? Lx : Ly;
    L = std::max(cfg.L0, L / cfg.backtrack_factor);
    const Vec r = residual(inst, z);
    while (true) {
      Point cand = z;
      if (x_block) {
        const Vec g = mode3_product(inst.tensor, z.y).transpose() * r;
        const int gamma = *support_profile(z).gamma_x;
        cand.x = hard_threshold(z.x - g / L, inst.s - 1, gamma);
        if (std::abs(cand.x[gamma]) <= kDefaultZeroTol) {
          L *= cfg.backtrack_factor;
          if (L > cfg.max_L) return false;
          continue;
        }
        cand = renormalize(cand);
      } else {
        const Vec g = mode2_product(inst.tensor, z.x).transpose() * r;
        cand.y = hard_threshold(z.y - g / L, inst.t);
      }
      if (step_norm(cand, z) <= cfg.step_tol) return true;
      const double fc = objective(inst, cand);
      if (fc <= f) {
        z = std::move(cand);
        f = fc;
        return true;
      }
      L *= cfg.backtrack_factor;
      if (L > cfg.max_L) return false;
    }
  };

  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Point before = z;
    const double f_before = f;
    const bool x_ok = update(true);
    const bool y_ok = update(false);
    const double step = step_norm(z, before);
    const double decrease = f_before - f;
    if (!x_ok) Lx /= cfg.backtrack_factor;
    if (!y_ok) Ly /= cfg.backtrack_factor;
    if (!x_ok && !y_ok && step == 0.0) {
      trace.status = SolveStatus::Stalled;
      break;
    }
    if (step > 0.0) trace.iterates.push_back({it, f, std::max(Lx, Ly), step});
    if (step <= cfg.step_tol || decrease <= cfg.f_tol || f == 0.0) {
      trace.status = SolveStatus::Converged;
      break;
    }
  }
  finish(trace, inst, z, std::max(Lx, Ly));
  return trace;
}

Point random_feasible_start(int m, int n, int s, int t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<int> ix(static_cast<std::size_t>(m));
  std::iota(ix.begin(), ix.end(), 0);
  std::shuffle(ix.begin(), ix.end(), rng);
  ix.resize(static_cast<std::size_t>(std::min(s, m)));
  std::sort(ix.begin(), ix.end());
  std::vector<int> iy(static_cast<std::size_t>(n));
  std::iota(iy.begin(), iy.end(), 0);
  std::shuffle(iy.begin(), iy.end(), rng);
  iy.resize(static_cast<std::size_t>(std::min(t, n)));
  std::sort(iy.begin(), iy.end());

  Point z(Vec::Zero(m), Vec::Zero(n));
  z.x[ix.front()] = 1.0;
  for (std::size_t k = 1; k < ix.size(); ++k) z.x[ix[k]] = normal(rng);
  for (int j : iy) z.y[j] = normal(rng);
  return z;
}

SolveTrace multistart(const Instance& inst, const SolveConfig& cfg, SolverChoice choice) {
  cfg.validate();
  const std::size_t starts = static_cast<std::size_t>(cfg.n_starts);
  const bool run_liht = choice != SolverChoice::Alternating;
  const bool run_alt = choice != SolverChoice::Liht;
  std::vector<std::optional<SolveTrace>> traces(2 * starts);
  parallel_for(starts, [&](std::size_t k) {
    const Point z0 = random_feasible_start(inst.m(), inst.n(), inst.s, inst.t,
                                           start_seed(cfg.seed, static_cast<int>(k)));
    if (run_liht) traces[2 * k] = liht_solve(inst, z0, cfg);
    if (run_alt) traces[2 * k + 1] = alternating_ht(inst, z0, cfg);
    for (std::size_t slot = 2 * k; slot < 2 * k + 2; ++slot) {
      if (traces[slot]) traces[slot]->start_index = static_cast<int>(k);
    }
  });
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    if (!traces[k]) continue;
    if (!best || traces[k]->final_f() < traces[*best]->final_f()) best = k;
  }
  return *traces[*best];
}

}  // namespace sbls
