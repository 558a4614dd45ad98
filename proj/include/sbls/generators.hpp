#pragma once

#include <cstdint>
#include <vector>

#include "sbls/tensor3.hpp"

namespace sbls {

/// a_ijk = h_ij g_ik, so that A x y = (H x) .* (G y). H is l x m, G is l x n.
Tensor3 gen_blind_deconv(const Mat& H, const Mat& G);

/// a_ijk = (M_i)_jk, so that (A x y)_i = <M_i, x y^T>.
Tensor3 gen_matrix_sensing(const std::vector<Mat>& measurements);

struct PlantedInstance {
  Instance instance;
  Point planted;
};

/// Standard normal dense tensor and random feasible point with full
/// supports; b = A x y, so the planted point has objective exactly zero.
PlantedInstance gen_planted(int l, int m, int n, int s, int t, std::uint64_t seed);

/// Same construction with a caller-supplied tensor.
PlantedInstance plant_on(Tensor3 tensor, int s, int t, std::uint64_t seed);

/// Standard normal matrix from a seeded generator.
Mat random_normal_matrix(int rows, int cols, std::uint64_t seed);

}  // namespace sbls
