#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbls/stationarity.hpp"
#include "sbls/tensor3.hpp"

namespace sbls {

struct SolveConfig {
  double L0 = 1.0;
  int max_iter = 1000;
  double f_tol = 0.0;
  double step_tol = 1e-12;
  double backtrack_factor = 2.0;
  double max_L = 1e12;
  std::uint64_t seed = 0;
  int n_starts = 10;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class SolveStatus { Converged, MaxIter, Stalled };

const char* to_string(SolveStatus status);

struct IterateRecord {
  int iteration = 0;
  double f = 0.0;
  double L = 0.0;
  double step_norm = 0.0;
};

struct SolveTrace {
  std::string solver;
  std::vector<IterateRecord> iterates;
  Point final;
  double final_L = 0.0;
  SolveStatus status = SolveStatus::Converged;
  StationarityReport final_report;
  int start_index = 0;

  double final_f() const { return iterates.back().f; }
};

/// Deterministic representative of like_project(z - grad f(z) / L).
Point liht_step(const Instance& inst, const Point& z, double L);

/// Iterated like-projection with backtracking on L.
SolveTrace liht_solve(const Instance& inst, const Point& z0, const SolveConfig& cfg = {});

/// Alternating hard-thresholded gradient steps on x (with the pivot kept)
/// and on y, renormalizing x to a leading one after each x update.
SolveTrace alternating_ht(const Instance& inst, const Point& z0, const SolveConfig& cfg = {});

/// Random feasible start with full supports: x at a random pivot is 1,
/// other kept entries standard normal.
Point random_feasible_start(int m, int n, int s, int t, std::uint64_t seed);

enum class SolverChoice { Both, Liht, Alternating };

/// Runs cfg.n_starts seeded starts through the chosen solvers and returns
/// the trace with the smallest final f (ties by start index, then liht
/// first).
SolveTrace multistart(const Instance& inst, const SolveConfig& cfg = {},
                      SolverChoice choice = SolverChoice::Both);

/// x <- x / x_gamma, y <- x_gamma * y, leaving f unchanged.
Point renormalize(const Point& z, double zero_tol = kDefaultZeroTol);

}  // namespace sbls
