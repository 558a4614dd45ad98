#include "sbls/reformulation.hpp"

#include <cmath>

namespace sbls {

namespace {

bool in_E(const Point& z, double zero_tol) {
  const SupportProfile p = support_profile(z, zero_tol);
  return p.gamma_x && std::abs(z.x[*p.gamma_x] - 1.0) <= zero_tol;
}

}  // namespace

AuxPair lift(const Point& z, int s, int t, double zero_tol) {
  require_feasible(z, s, t, zero_tol);
  const Vec zc = z.concatenated();
  Vec w(zc.size());
  for (Eigen::Index i = 0; i < zc.size(); ++i) w[i] = std::abs(zc[i]) > zero_tol ? 0.0 : 1.0;
  return {z, w};
}

bool check_pair(const AuxPair& pair, int s, int t, PairMode mode, double zero_tol) {
  const int m = pair.z.m();
  const int n = pair.z.n();
  if (pair.w.size() != m + n) throw DimensionError("w must have length m + n");
  const Vec zc = pair.z.concatenated();

  const double scale = 1.0 + zc.lpNorm<Eigen::Infinity>();
  if (zc.cwiseProduct(pair.w).cwiseAbs().sum() > zero_tol * scale) return false;
  if (pair.w.head(m).sum() < m - s - zero_tol) return false;
  if (pair.w.tail(n).sum() < n - t - zero_tol) return false;
  for (Eigen::Index i = 0; i < pair.w.size(); ++i) {
    const double wi = pair.w[i];
    if (mode == PairMode::MixedInteger) {
      if (wi != 0.0 && wi != 1.0) return false;
    } else if (wi < 0.0 || wi > 1.0) {
      return false;
    }
  }
  return in_E(pair.z, zero_tol);
}

bool normal_E_membership(const Point& z, const Vec& d, double zero_tol) {
  const SupportProfile p = support_profile(z, zero_tol);
  if (!p.gamma_x) throw InfeasiblePointError("x block is zero, so the pivot index is undefined");
  if (d.size() != p.m + p.n) throw DimensionError("direction has the wrong length");
  for (Eigen::Index i = *p.gamma_x + 1; i < d.size(); ++i) {
    if (std::abs(d[i]) > zero_tol) return false;
  }
  return true;
}

}  // namespace sbls
