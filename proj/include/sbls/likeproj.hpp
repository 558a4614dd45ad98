#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sbls/feasible.hpp"
#include "sbls/tensor3.hpp"

namespace sbls {

/// Minimizer sets larger than this are reported as a count plus one
/// deterministic representative.
inline constexpr std::size_t kMaxListedMinimizers = 64;

struct ProjectionResult {
  /// Sorted by support (lexicographic on the 0-based index list). When the
  /// set is too large this holds only the representative with the
  /// lexicographically smallest support.
  std::vector<Point> minimizers;
  std::size_t count = 0;
  double distance_sq = 0.0;

  bool truncated() const { return count > minimizers.size(); }
};

struct LikeProjectOptions {
  double zero_tol = kDefaultZeroTol;
  /// Magnitudes within tie_tol of the s-th (t-th) largest one are treated
  /// as tied with it. Zero reproduces exact-arithmetic ties.
  double tie_tol = 0.0;
};

/// M_k(|v|): the k-th largest absolute value (k is 1-based). Returns 0 when
/// k exceeds the length.
double kth_largest_magnitude(const Vec& v, int k);

/// psi_z(u). Returns nullopt when x != 0 and no index of the x block has
/// both u_i and z_i nonzero.
std::optional<Point> psi(const Point& z, const Point& u, double zero_tol = kDefaultZeroTol);

/// ||psi_z(u) - z||^2, or +infinity where psi_z(u) is undefined.
double like_distance_sq(const Point& z, const Point& u, double zero_tol = kDefaultZeroTol);

/// Closed-form optimal value of the like-projection: the squared tail of
/// |x| past position s plus that of |y| past t (with 1 in place of the x
/// tail when x = 0).
double like_projection_tail_distance(const Point& z, int s, int t,
                                     double zero_tol = kDefaultZeroTol);

/// All minimizers of ||psi_z(u) - z||^2 over u in F, built from the
/// top-s / top-t selection with tie enumeration.
ProjectionResult like_project(const Point& z, int s, int t, const LikeProjectOptions& opts = {});

/// Brute-force like-projection: enumerates every support pair and
/// minimizes the definition directly. Limited to m, n <= 8.
ProjectionResult like_project_oracle(const Point& z, int s, int t,
                                     double zero_tol = kDefaultZeroTol);

/// Euclidean projection onto F (all ties).
ProjectionResult classic_project(const Point& z, int s, int t, const LikeProjectOptions& opts = {});

/// Whether u matches one of the listed minimizers componentwise within tol.
bool contains_minimizer(const ProjectionResult& result, const Point& u, double tol);

}  // namespace sbls
