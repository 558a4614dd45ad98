#include "sbls/feasible.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sbls {

namespace {

int count_nonzero(const Vec& v, Eigen::Index begin, Eigen::Index end, double tol) {
  int count = 0;
  for (Eigen::Index i = begin; i < end; ++i) count += std::abs(v[i]) > tol;
  return count;
}

}  // namespace

bool SupportProfile::in_support(int i) const {
  return std::binary_search(gamma.begin(), gamma.end(), i);
}

const char* to_string(ConeSense sense) {
  return sense == ConeSense::Bouligand ? "Bouligand" : "Clarke";
}

SupportProfile support_profile(const Point& z, double zero_tol) {
  SupportProfile p;
  p.m = z.m();
  p.n = z.n();
  for (int i = 0; i < p.m; ++i) {
    if (std::abs(z.x[i]) > zero_tol) p.gamma1.push_back(i);
  }
  for (int j = 0; j < p.n; ++j) {
    if (std::abs(z.y[j]) > zero_tol) p.gamma2.push_back(p.m + j);
  }
  p.gamma = p.gamma1;
  p.gamma.insert(p.gamma.end(), p.gamma2.begin(), p.gamma2.end());
  p.card1 = static_cast<int>(p.gamma1.size());
  p.card2 = static_cast<int>(p.gamma2.size());
  if (!p.gamma1.empty()) p.gamma_x = p.gamma1.front();
  return p;
}

SupportProfile require_feasible(const Point& z, int s, int t, double zero_tol) {
  SupportProfile p = support_profile(z, zero_tol);
  if (!p.gamma_x) throw InfeasiblePointError("x block is zero, so the pivot index is undefined");
  if (p.card1 > s) {
    throw InfeasiblePointError("||x||_0 = " + std::to_string(p.card1) + " exceeds s = " +
                               std::to_string(s));
  }
  if (p.card2 > t) {
    throw InfeasiblePointError("||y||_0 = " + std::to_string(p.card2) + " exceeds t = " +
                               std::to_string(t));
  }
  const double pivot = z.x[*p.gamma_x];
  if (std::abs(pivot - 1.0) > zero_tol) {
    throw InfeasiblePointError("first nonzero of x (index " + std::to_string(*p.gamma_x + 1) +
                               ") is " + std::to_string(pivot) + ", not 1");
  }
  return p;
}

bool is_feasible(const Point& z, int s, int t, double zero_tol) {
  try {
    require_feasible(z, s, t, zero_tol);
    return true;
  } catch (const InfeasiblePointError&) {
    return false;
  }
}

bool is_feasible(const Instance& inst, const Point& z, double zero_tol) {
  if (z.m() != inst.m() || z.n() != inst.n()) return false;
  return is_feasible(z, inst.s, inst.t, zero_tol);
}

std::vector<int> clarke_core(const SupportProfile& profile) {
  std::vector<int> core;
  for (int i : profile.gamma) {
    if (!profile.gamma_x || i != *profile.gamma_x) core.push_back(i);
  }
  return core;
}

std::vector<int> bouligand_normal_zero_set(const SupportProfile& profile, int s, int t) {
  const int gx = profile.gamma_x.value();
  const bool x_full = profile.card1 == s;
  const bool y_full = profile.card2 == t;
  std::vector<int> zero_set;
  if (x_full) {
    for (int i : profile.gamma1) {
      if (i != gx) zero_set.push_back(i);
    }
  } else {
    for (int i = gx + 1; i < profile.m; ++i) zero_set.push_back(i);
  }
  if (y_full) {
    zero_set.insert(zero_set.end(), profile.gamma2.begin(), profile.gamma2.end());
  } else {
    for (int j = 0; j < profile.n; ++j) zero_set.push_back(profile.m + j);
  }
  return zero_set;
}

bool tangent_membership(const Point& z, const Vec& d, ConeSense sense, int s, int t,
                        double zero_tol) {
  const SupportProfile p = require_feasible(z, s, t, zero_tol);
  const int m = p.m;
  if (d.size() != m + p.n) throw DimensionError("direction has the wrong length");
  const int gx = *p.gamma_x;

  if (sense == ConeSense::Clarke) {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (std::abs(d[i]) <= zero_tol) continue;
      if (i == gx || !p.in_support(static_cast<int>(i))) return false;
    }
    return true;
  }

  for (int j = 0; j <= gx; ++j) {
    if (std::abs(d[j]) > zero_tol) return false;
  }
  if (count_nonzero(d, 0, m, zero_tol) > s - 1) return false;
  if (count_nonzero(d, m, d.size(), zero_tol) > t) return false;

  int union_x = p.card1;
  for (int i = 0; i < m; ++i) {
    if (std::abs(d[i]) > zero_tol && std::abs(z.x[i]) <= zero_tol) ++union_x;
  }
  int union_y = p.card2;
  for (int j = 0; j < p.n; ++j) {
    if (std::abs(d[m + j]) > zero_tol && std::abs(z.y[j]) <= zero_tol) ++union_y;
  }
  return union_x <= s && union_y <= t;
}

bool normal_membership(const Point& z, const Vec& d, ConeSense sense, int s, int t,
                       double zero_tol) {
  const SupportProfile p = require_feasible(z, s, t, zero_tol);
  if (d.size() != p.m + p.n) throw DimensionError("direction has the wrong length");
  const std::vector<int> zero_set =
      sense == ConeSense::Clarke ? clarke_core(p) : bouligand_normal_zero_set(p, s, t);
  return std::all_of(zero_set.begin(), zero_set.end(),
                     [&](int i) { return std::abs(d[i]) <= zero_tol; });
}

}  // namespace sbls
