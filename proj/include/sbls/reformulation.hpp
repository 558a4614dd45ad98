#pragma once

#include "sbls/feasible.hpp"
#include "sbls/tensor3.hpp"

namespace sbls {

enum class PairMode { MixedInteger, Relaxed };

/// (z, w) for the complementarity reformulation. w has length m + n; its
/// first m entries form the u block and the rest the v block.
struct AuxPair {
  Point z;
  Vec w;
};

/// Canonical binary w: w_i = 0 where z_i != 0 and 1 elsewhere.
AuxPair lift(const Point& z, int s, int t, double zero_tol = kDefaultZeroTol);

/// Checks z^T w = 0, sum(u) >= m - s, sum(v) >= n - t, the mode's range
/// constraint on w, and that z lies in E (x != 0 with x at its first
/// nonzero equal to 1).
bool check_pair(const AuxPair& pair, int s, int t, PairMode mode,
                double zero_tol = kDefaultZeroTol);

/// d lies in the normal cone of E at z iff d_i = 0 for every i > gamma_x.
bool normal_E_membership(const Point& z, const Vec& d, double zero_tol = kDefaultZeroTol);

}  // namespace sbls
