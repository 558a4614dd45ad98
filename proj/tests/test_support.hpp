#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "sbls/tensor3.hpp"

namespace sbls::testing {

inline Vec vec(std::initializer_list<double> values) {
  Vec out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) out[i++] = v;
  return out;
}

inline Point pt(std::initializer_list<double> values, int m) {
  return Point::from_concatenated(vec(values), m);
}

inline double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).lpNorm<Eigen::Infinity>(); }

inline double max_abs_diff(const Point& a, const Point& b) {
  return max_abs_diff(a.concatenated(), b.concatenated());
}

/// Dense standard normal instance.
inline Instance random_instance(int l, int m, int n, int s, int t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> data(static_cast<std::size_t>(l) * m * n);
  for (double& v : data) v = normal(rng);
  Vec b(l);
  for (int i = 0; i < l; ++i) b[i] = normal(rng);
  return make_instance(Tensor3(l, m, n, std::move(data)), b, s, t);
}

/// Feasible point with random support sizes (1..s, 0..t). Values are small
/// integers half of the time so that ties and exact zeros show up.
inline Point random_feasible_point(int m, int n, int s, int t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size1(1, s), size2(0, t);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution integer_valued(0.5);
  std::uniform_int_distribution<int> small(-3, 3);
  const bool ints = integer_valued(rng);
  auto value = [&] {
    double v = 0.0;
    while (v == 0.0) v = ints ? small(rng) : normal(rng);
    return v;
  };
  std::vector<int> ix(static_cast<std::size_t>(m)), iy(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) ix[i] = i;
  for (int j = 0; j < n; ++j) iy[j] = j;
  std::shuffle(ix.begin(), ix.end(), rng);
  std::shuffle(iy.begin(), iy.end(), rng);
  ix.resize(static_cast<std::size_t>(size1(rng)));
  iy.resize(static_cast<std::size_t>(size2(rng)));
  std::sort(ix.begin(), ix.end());
  Point z(Vec::Zero(m), Vec::Zero(n));
  z.x[ix.front()] = 1.0;
  for (std::size_t k = 1; k < ix.size(); ++k) z.x[ix[k]] = value();
  for (int j : iy) z.y[j] = value();
  return z;
}

}  // namespace sbls::testing
