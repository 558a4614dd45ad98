#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sbls/tensor3.hpp"

namespace sbls {

inline constexpr double kDefaultZeroTol = 1e-10;

/// Raised when an operation that needs a point of F receives one outside it
/// (including x = 0, where the pivot index does not exist).
class InfeasiblePointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Supports of z = (x, y). All indices are 0-based positions in the
/// concatenated vector, so gamma2 entries lie in [m, m+n).
struct SupportProfile {
  std::vector<int> gamma1;
  std::vector<int> gamma2;
  std::vector<int> gamma;
  std::optional<int> gamma_x;
  int card1 = 0;
  int card2 = 0;
  int m = 0;
  int n = 0;

  bool in_support(int i) const;
};

enum class ConeSense { Bouligand, Clarke };
enum class ConeOrientation { Tangent, Normal };

struct ConeKind {
  ConeSense sense = ConeSense::Bouligand;
  ConeOrientation orientation = ConeOrientation::Tangent;
};

const char* to_string(ConeSense sense);

SupportProfile support_profile(const Point& z, double zero_tol = kDefaultZeroTol);

/// ||x||_0 <= s, ||y||_0 <= t, x != 0 and x at its first nonzero equal to 1.
bool is_feasible(const Point& z, int s, int t, double zero_tol = kDefaultZeroTol);
bool is_feasible(const Instance& inst, const Point& z, double zero_tol = kDefaultZeroTol);

/// Returns the support profile of z, or throws InfeasiblePointError naming
/// the violated condition.
SupportProfile require_feasible(const Point& z, int s, int t, double zero_tol = kDefaultZeroTol);

bool tangent_membership(const Point& z, const Vec& d, ConeSense sense, int s, int t,
                        double zero_tol = kDefaultZeroTol);

bool normal_membership(const Point& z, const Vec& d, ConeSense sense, int s, int t,
                       double zero_tol = kDefaultZeroTol);

/// Indices (0-based) on which a Bouligand normal vector must vanish; picks
/// one of the four cases from whether |Gamma1| = s and |Gamma2| = t.
std::vector<int> bouligand_normal_zero_set(const SupportProfile& profile, int s, int t);

/// Gamma \ {gamma_x}: the Clarke tangent cone is spanned by these
/// coordinates and the Clarke normal cone vanishes on them.
std::vector<int> clarke_core(const SupportProfile& profile);

}  // namespace sbls
