#include "sbls/tensor3.hpp"

#include <cmath>
#include <string>

namespace sbls {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

Tensor3::Tensor3(int l, int m, int n)
    : Tensor3(l, m, n,
              std::vector<double>(static_cast<std::size_t>(l > 0 ? l : 0) *
                                  (m > 0 ? m : 0) * (n > 0 ? n : 0))) {}

Tensor3::Tensor3(int l, int m, int n, std::vector<double> data)
    : l_(l), m_(m), n_(n), data_(std::move(data)) {
  require(l > 0 && m > 0 && n > 0, "tensor dimensions must be positive");
  require(data_.size() == static_cast<std::size_t>(l) * m * n,
          "tensor data length " + std::to_string(data_.size()) + " does not equal l*m*n = " +
              std::to_string(static_cast<std::size_t>(l) * m * n));
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("tensor entries must be finite");
  }
}

std::size_t Tensor3::nonzeros() const {
  std::size_t count = 0;
  for (double v : data_) count += (v != 0.0);
  return count;
}

void Instance::validate() const {
  require(b.size() == tensor.l(), "b has length " + std::to_string(b.size()) +
                                      " but the tensor has l = " + std::to_string(tensor.l()));
  require(s >= 1 && s < tensor.m(), "sparsity s must satisfy 1 <= s < m");
  require(t >= 1 && t < tensor.n(), "sparsity t must satisfy 1 <= t < n");
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i])) throw std::invalid_argument("b entries must be finite");
  }
}

Instance make_instance(Tensor3 tensor, Vec b, int s, int t) {
  Instance inst{std::move(tensor), std::move(b), s, t};
  inst.validate();
  return inst;
}

Point Point::from_concatenated(const Vec& z, int m) {
  require(m >= 0 && m <= z.size(), "split index outside the vector");
  return Point(z.head(m), z.tail(z.size() - m));
}

Vec Point::concatenated() const {
  Vec z(x.size() + y.size());
  z << x, y;
  return z;
}

Mat mode2_product(const Tensor3& a, const Vec& x) {
  require(x.size() == a.m(), "mode-2 product needs x of length m");
  Mat out = Mat::Zero(a.l(), a.n());
  for (int i = 0; i < a.l(); ++i) {
    for (int j = 0; j < a.m(); ++j) {
      const double xj = x[j];
      if (xj == 0.0) continue;
      for (int k = 0; k < a.n(); ++k) out(i, k) += a(i, j, k) * xj;
    }
  }
  return out;
}

Mat mode3_product(const Tensor3& a, const Vec& y) {
  require(y.size() == a.n(), "mode-3 product needs y of length n");
  Mat out = Mat::Zero(a.l(), a.m());
  for (int i = 0; i < a.l(); ++i) {
    for (int j = 0; j < a.m(); ++j) {
      double acc = 0.0;
      for (int k = 0; k < a.n(); ++k) acc += a(i, j, k) * y[k];
      out(i, j) = acc;
    }
  }
  return out;
}

Vec bilinear_map(const Tensor3& a, const Vec& x, const Vec& y) {
  require(x.size() == a.m() && y.size() == a.n(), "bilinear map dimension mismatch");
  return mode3_product(a, y) * x;
}

Vec residual(const Instance& inst, const Point& z) {
  require(inst.b.size() == inst.l(), "b does not match the tensor");
  return bilinear_map(inst.tensor, z.x, z.y) - inst.b;
}

double objective(const Instance& inst, const Point& z) {
  return 0.5 * residual(inst, z).squaredNorm();
}

Vec gradient(const Instance& inst, const Point& z) {
  const Vec r = residual(inst, z);
  Vec g(inst.m() + inst.n());
  g.head(inst.m()) = mode3_product(inst.tensor, z.y).transpose() * r;
  g.tail(inst.n()) = mode2_product(inst.tensor, z.x).transpose() * r;
  return g;
}

Vec finite_difference_gradient(const Instance& inst, const Point& z, double h) {
  const Vec base = z.concatenated();
  const int m = inst.m();
  Vec g(base.size());
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    Vec plus = base;
    Vec minus = base;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (objective(inst, Point::from_concatenated(plus, m)) -
            objective(inst, Point::from_concatenated(minus, m))) /
           (2.0 * h);
  }
  return g;
}

}  // namespace sbls
