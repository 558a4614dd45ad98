#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sbls/feasible.hpp"
#include "sbls/tensor3.hpp"

namespace sbls {

struct Tolerance {
  double grad_tol = 1e-8;  // |grad_i f| <= grad_tol counts as zero
  double obj_tol = 1e-10;  // objective comparisons
  double zero_tol = kDefaultZeroTol;
};

/// grad_tol = 1e-8 (1 + ||grad f(z)||_inf), obj_tol = 1e-10 (1 + f(z)).
Tolerance default_tolerance(const Instance& inst, const Point& z);

/// Raised when two characterizations that must agree do not. Signals a bug,
/// never bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Outcome of a "gradient vanishes on an index set" test. Indices are
/// 0-based positions in the concatenated vector.
struct IndexCheck {
  bool holds = true;
  std::vector<int> violations;
};

IndexCheck check_NB(const Instance& inst, const Point& z, const Tolerance& tol);
IndexCheck check_NC(const Instance& inst, const Point& z, const Tolerance& tol);

/// Indices whose gradient entries the minimizing tangent direction
/// cancels, i.e. the support of argmin ||grad f + d|| over d in the cone.
std::vector<int> tangent_covered_set(const Instance& inst, const Point& z, ConeSense sense,
                                     const Tolerance& tol);

/// ||argmin{ ||grad f(z) + d|| : d in T(z) }||, the norm of grad f on the
/// covered set. Zero exactly at T-stationary points.
double restricted_gradient_norm(const Instance& inst, const Point& z, ConeSense sense,
                                const Tolerance& tol);

/// T-stationarity: every covered gradient entry is within grad_tol.
IndexCheck check_T(const Instance& inst, const Point& z, ConeSense sense, const Tolerance& tol);

/// A tested move of the coordinate-wise minimum definition: zero out i and
/// re-optimize coordinate j (i == j is a single-coordinate move).
struct CwMove {
  int i = 0;
  int j = 0;
  double u = 0.0;      // optimal new value added at j
  double value = 0.0;  // objective after the move
};

struct CwResult {
  bool holds = true;
  /// Every improving move, in test order.
  std::vector<CwMove> violations;

  const CwMove* witness() const { return violations.empty() ? nullptr : &violations.front(); }
};

CwResult check_CW(const Instance& inst, const Point& z, const Tolerance& tol);

struct LlikeResult {
  bool holds = false;
  bool inequality_route = false;
  bool fixed_point_route = false;
  std::vector<int> violations;
};

/// L-like stationarity. `holds` follows the inequality characterization;
/// the fixed-point test z in like_project(z - grad f / L) is reported
/// alongside and a robust disagreement raises ConsistencyError.
LlikeResult check_Llike(const Instance& inst, const Point& z, double L, const Tolerance& tol);

/// Smallest L for which the inequality characterization holds, or nullopt
/// when none does.
std::optional<double> minimal_L(const Instance& inst, const Point& z, const Tolerance& tol);

struct MWitness {
  Vec w;
  Vec mu;
};

struct MResult {
  bool holds = false;
  std::vector<int> violations;
  std::optional<MWitness> witness;
};

MResult check_M(const Instance& inst, const Point& z, const Tolerance& tol);

struct StationarityReport {
  bool nb = false;
  bool tb = false;
  bool nc = false;
  bool tc = false;
  bool cw = false;
  bool m = false;
  std::optional<double> L;
  std::optional<LlikeResult> llike;

  IndexCheck nb_check;
  IndexCheck nc_check;
  CwResult cw_check;
  MResult m_check;
  double restricted_grad_norm_B = 0.0;
  double restricted_grad_norm_C = 0.0;
  std::optional<double> minimal_L;

  Vec gradient;
  double objective = 0.0;
  Tolerance tolerance;
};

/// Runs every checker and verifies the implication lattice
/// (NB = TB, NC = TC = M, Llike => NB, CW => NB, NB => NC).
StationarityReport classify(const Instance& inst, const Point& z, std::optional<double> L,
                            const Tolerance& tol);
StationarityReport classify(const Instance& inst, const Point& z,
                            std::optional<double> L = std::nullopt);

}  // namespace sbls
