#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "rpencil/errors.hpp"

namespace rpencil {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<Complex>;

namespace detail {
inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& x) { return std::norm(x); }
}  // namespace detail

/// Dense cube of coefficients t(a, b, c) with a, b, c in [0, n).
template <typename Scalar>
class Array3 {
 public:
  Array3() = default;
  explicit Array3(Eigen::Index n) : n_(n), data_(static_cast<std::size_t>(n * n * n), Scalar(0)) {}

  Eigen::Index size() const { return n_; }

  Scalar& operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) {
    return data_[static_cast<std::size_t>((a * n_ + b) * n_ + c)];
  }
  const Scalar& operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) const {
    return data_[static_cast<std::size_t>((a * n_ + b) * n_ + c)];
  }

  std::span<const Scalar> data() const { return data_; }

  double norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += detail::abs2(v);
    return std::sqrt(s);
  }

  Array3& operator+=(const Array3& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Array3& operator-=(const Array3& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Array3& operator*=(const Scalar& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Array3 operator+(Array3 a, const Array3& b) { return a += b; }
  friend Array3 operator-(Array3 a, const Array3& b) { return a -= b; }
  friend Array3 operator*(const Scalar& s, Array3 a) { return a *= s; }

 private:
  void check_same(const Array3& o) const {
    if (o.n_ != n_) throw ShapeError("Array3 dimension mismatch");
  }

  Eigen::Index n_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace rpencil
