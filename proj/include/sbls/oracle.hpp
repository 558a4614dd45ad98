#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sbls/tensor3.hpp"

namespace sbls {

inline constexpr std::size_t kSupportBudget = 1'000'000;

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Candidate supports. s1 is nonempty and its smallest index carries the
/// forced one; s2 indices are offset by m. All indices are 0-based.
struct SupportPair {
  std::vector<int> s1;
  std::vector<int> s2;

  bool operator==(const SupportPair&) const = default;
};

/// Number of pairs enumerate_supports would produce.
std::size_t count_support_pairs(int m, int n, int s, int t);

/// Every nonempty S1 with |S1| <= s against every S2 with |S2| <= t. Both
/// blocks are ordered by size, then lexicographically, with S2 varying
/// fastest.
std::vector<SupportPair> enumerate_supports(int m, int n, int s, int t,
                                            std::size_t budget = kSupportBudget);

struct RestrictedOptions {
  int n_starts = 8;
  std::uint64_t seed = 0;
  /// Adds a 41-point-per-variable grid over [-3, 3] for the free x entries
  /// when there are at most three of them.
  bool grid_fallback = false;
  int max_sweeps = 200;
};

struct RestrictedSolution {
  Point z;
  double f = 0.0;
};

/// Alternating least squares on the free entries of a support pair with
/// x at min(S1) fixed to 1. Heuristic for nonconvex pairs.
RestrictedSolution solve_restricted(const Instance& inst, const SupportPair& pair,
                                    const RestrictedOptions& opts = {});

struct BruteResult {
  Point z;
  double f = 0.0;
  SupportPair pair;
  std::size_t pairs_tested = 0;
  /// True only when f is zero up to rounding, which makes it globally
  /// optimal since f >= 0.
  bool certified = false;

  bool heuristic() const { return !certified; }
};

/// Minimum of solve_restricted over all support pairs, ties broken by
/// enumeration order.
BruteResult global_brute(const Instance& inst, const RestrictedOptions& opts = {},
                         std::size_t budget = kSupportBudget);

}  // namespace sbls
