#include "sbls/generators.hpp"

#include <random>
#include <string>

#include "sbls/solvers.hpp"

namespace sbls {

Tensor3 gen_blind_deconv(const Mat& H, const Mat& G) {
  if (H.rows() != G.rows()) {
    throw DimensionError("H and G need the same number of rows (" + std::to_string(H.rows()) +
                         " vs " + std::to_string(G.rows()) + ")");
  }
  const int l = static_cast<int>(H.rows());
  const int m = static_cast<int>(H.cols());
  const int n = static_cast<int>(G.cols());
  Tensor3 a(l, m, n);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) a(i, j, k) = H(i, j) * G(i, k);
    }
  }
  return a;
}

Tensor3 gen_matrix_sensing(const std::vector<Mat>& measurements) {
  if (measurements.empty()) throw DimensionError("need at least one measurement matrix");
  const int l = static_cast<int>(measurements.size());
  const int m = static_cast<int>(measurements.front().rows());
  const int n = static_cast<int>(measurements.front().cols());
  Tensor3 a(l, m, n);
  for (int i = 0; i < l; ++i) {
    const Mat& M = measurements[i];
    if (M.rows() != m || M.cols() != n) {
      throw DimensionError("measurement " + std::to_string(i + 1) + " is " +
                           std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                           ", expected " + std::to_string(m) + "x" + std::to_string(n));
    }
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) a(i, j, k) = M(j, k);
    }
  }
  return a;
}

Mat random_normal_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = normal(rng);
  }
  return out;
}

PlantedInstance plant_on(Tensor3 tensor, int s, int t, std::uint64_t seed) {
  const Point z = random_feasible_start(tensor.m(), tensor.n(), s, t, seed ^ 0xA5A5A5A5ULL);
  Vec b = bilinear_map(tensor, z.x, z.y);
  return {make_instance(std::move(tensor), std::move(b), s, t), z};
}

PlantedInstance gen_planted(int l, int m, int n, int s, int t, std::uint64_t seed) {
  if (l < 1 || m < 1 || n < 1) throw DimensionError("dimensions must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> data(static_cast<std::size_t>(l) * m * n);
  for (double& v : data) v = normal(rng);
  return plant_on(Tensor3(l, m, n, std::move(data)), s, t, seed);
}

}  // namespace sbls
