#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sbls {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense l x m x n tensor stored row-major: entry (i, j, k) lives at
/// data[(i * m + j) * n + k]. Indices are 0-based in code; file formats
/// and user-facing output use 1-based indices.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int l, int m, int n);
  Tensor3(int l, int m, int n, std::vector<double> data);

  int l() const { return l_; }
  int m() const { return m_; }
  int n() const { return n_; }
  std::size_t size() const { return data_.size(); }

  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }

  const std::vector<double>& data() const { return data_; }

  std::size_t nonzeros() const;

  bool operator==(const Tensor3& other) const = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * m_ + j) * n_ + k;
  }

  int l_ = 0;
  int m_ = 0;
  int n_ = 0;
  std::vector<double> data_;
};

/// Problem data: min 1/2 ||A x y - b||^2 subject to ||x||_0 <= s,
/// ||y||_0 <= t and the first nonzero of x equal to one.
struct Instance {
  Tensor3 tensor;
  Vec b;
  int s = 1;
  int t = 1;

  int l() const { return tensor.l(); }
  int m() const { return tensor.m(); }
  int n() const { return tensor.n(); }

  /// Throws DimensionError when b, s or t disagree with the tensor.
  void validate() const;
};

/// A point z = (x, y) of R^{m+n}.
struct Point {
  Vec x;
  Vec y;

  Point() = default;
  Point(Vec x_block, Vec y_block) : x(std::move(x_block)), y(std::move(y_block)) {}

  static Point from_concatenated(const Vec& z, int m);

  int m() const { return static_cast<int>(x.size()); }
  int n() const { return static_cast<int>(y.size()); }
  Vec concatenated() const;
};

Instance make_instance(Tensor3 tensor, Vec b, int s, int t);

/// (A x_2 x)_{ik} = sum_j a_{ijk} x_j, an l x n matrix.
Mat mode2_product(const Tensor3& a, const Vec& x);

/// (A x_3 y)_{ij} = sum_k a_{ijk} y_k, an l x m matrix.
Mat mode3_product(const Tensor3& a, const Vec& y);

/// (A x_2 x x_3 y)_i = sum_{j,k} a_{ijk} x_j y_k.
Vec bilinear_map(const Tensor3& a, const Vec& x, const Vec& y);

/// A x y - b.
Vec residual(const Instance& inst, const Point& z);

double objective(const Instance& inst, const Point& z);

/// Gradient of 1/2 ||A x y - b||^2 in the concatenated (x, y) layout:
/// the x block is (A x_3 y)^T r and the y block is (A x_2 x)^T r.
Vec gradient(const Instance& inst, const Point& z);

/// Central finite differences of the objective. Test oracle only; the
/// solvers and checkers never call it.
Vec finite_difference_gradient(const Instance& inst, const Point& z, double h = 1e-6);

}  // namespace sbls
