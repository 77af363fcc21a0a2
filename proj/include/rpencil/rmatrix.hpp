#pragma once

#include <span>
#include <string_view>

#include "rpencil/lie_core.hpp"

namespace rpencil {

enum class BasisKind { Chevalley, Compact };

std::string_view to_string(BasisKind kind);

/// t = sum_{a<b} t^{ab} e_a ^ e_b with e_a ^ e_b = e_a (x) e_b - e_b (x) e_a,
/// so `coeff` is the antisymmetric component matrix of t in g (x) g.
template <typename Scalar>
struct Tensor2 {
  BasisKind basis = BasisKind::Compact;
  Matrix<Scalar> coeff;

  Eigen::Index dim() const { return coeff.rows(); }
};

template <typename Scalar>
struct Tensor3 {
  BasisKind basis = BasisKind::Compact;
  Array3<Scalar> coeff;

  Eigen::Index dim() const { return coeff.size(); }
};

using RealTensor2 = Tensor2<double>;
using ComplexTensor2 = Tensor2<Complex>;
using RealTensor3 = Tensor3<double>;
using ComplexTensor3 = Tensor3<Complex>;

/// (i/2) sum_{a in positive roots} E_a ^ E_{-a}, over chevalley_elements().
ComplexTensor2 drinfeld_jimbo_r(const LieBasis& basis);

/// 1/4 sum_{a in positive roots} V_a ^ W_a, over the compact basis.
RealTensor2 compact_r(const LieBasis& basis);

/// 1/4 sum_{a in dp} V_a ^ W_a; the single-argument form uses basis.parabolic.
RealTensor2 parabolic_r(const LieBasis& basis);
RealTensor2 parabolic_r(const LieBasis& basis, std::span<const Root> dp);

/// The three-term sum [r12, r13] + [r12, r23] + [r13, r23] in components,
/// with c(a, b, k) the structure constants of the basis r is written in.
template <typename Scalar>
Array3<Scalar> schouten_three_term(const Matrix<Scalar>& r, const Array3<Scalar>& c) {
  const Eigen::Index d = r.rows();
  if (r.cols() != d || c.size() != d) throw ShapeError("schouten_square: dimension mismatch");
  Array3<Scalar> out(d);
  for (Eigen::Index x = 0; x < d; ++x) {
    for (Eigen::Index y = 0; y < d; ++y) {
      for (Eigen::Index z = 0; z < d; ++z) {
        Scalar acc(0);
        for (Eigen::Index a = 0; a < d; ++a) {
          for (Eigen::Index b = 0; b < d; ++b) {
            // [r12, r13]: r^{ay} r^{bz} [e_a, e_b]^x
            acc += r(a, y) * r(b, z) * c(a, b, x);
            // [r12, r23]: r^{xa} r^{bz} [e_a, e_b]^y
            acc += r(x, a) * r(b, z) * c(a, b, y);
            // [r13, r23]: r^{xa} r^{yb} [e_a, e_b]^z
            acc += r(x, a) * r(y, b) * c(a, b, z);
          }
        }
        out(x, y, z) = acc;
      }
    }
  }
  return out;
}

template <typename Scalar>
Array3<Scalar> antisymmetrize(const Array3<Scalar>& t) {
  const Eigen::Index d = t.size();
  Array3<Scalar> out(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      for (Eigen::Index c = 0; c < d; ++c) {
        out(a, b, c) = (t(a, b, c) + t(b, c, a) + t(c, a, b) - t(b, a, c) - t(a, c, b) -
                        t(c, b, a)) /
                       Scalar(6);
      }
    }
  }
  return out;
}

/// Frobenius distance from the totally antisymmetric part.
template <typename Scalar>
double antisymmetry_defect(const Array3<Scalar>& t) {
  return (t - antisymmetrize(t)).norm();
}

template <typename Scalar>
Tensor3<Scalar> schouten_square(const Tensor2<Scalar>& r, const Array3<Scalar>& c) {
  return {r.basis, antisymmetrize(schouten_three_term(r.coeff, c))};
}

RealTensor3 schouten_square(const RealTensor2& r, const LieBasis& basis);
ComplexTensor3 schouten_square(const ComplexTensor2& r, const LieBasis& basis);

/// a t a^T.
template <typename Scalar, typename Derived>
Tensor2<Scalar> transform(const Tensor2<Scalar>& t, const Eigen::MatrixBase<Derived>& a) {
  if (a.cols() != t.dim()) throw ShapeError("transform: dimension mismatch");
  const Matrix<Scalar> m = a.template cast<Scalar>();
  return {t.basis, m * t.coeff * m.transpose()};
}

/// t'(x, y, z) = a(x, i) a(y, j) a(z, k) t(i, j, k).
template <typename Scalar, typename Derived>
Tensor3<Scalar> transform(const Tensor3<Scalar>& t, const Eigen::MatrixBase<Derived>& a) {
  const Eigen::Index d = t.dim();
  if (a.cols() != d || a.rows() != d) throw ShapeError("transform: dimension mismatch");
  Array3<Scalar> step1(d), step2(d), out(d);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k) {
        Scalar acc(0);
        for (Eigen::Index i = 0; i < d; ++i) acc += Scalar(a(x, i)) * t.coeff(i, j, k);
        step1(x, j, k) = acc;
      }
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y)
      for (Eigen::Index k = 0; k < d; ++k) {
        Scalar acc(0);
        for (Eigen::Index j = 0; j < d; ++j) acc += Scalar(a(y, j)) * step1(x, j, k);
        step2(x, y, k) = acc;
      }
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y)
      for (Eigen::Index z = 0; z < d; ++z) {
        Scalar acc(0);
        for (Eigen::Index k = 0; k < d; ++k) acc += Scalar(a(z, k)) * step2(x, y, k);
        out(x, y, z) = acc;
      }
  return {t.basis, out};
}

/// Ad_g (x) Ad_g in the tensor's declared basis.
RealTensor2 ad_tensor2(const GroupElement& g, const RealTensor2& t, const LieBasis& basis);
ComplexTensor2 ad_tensor2(const GroupElement& g, const ComplexTensor2& t, const LieBasis& basis);

RealTensor3 ad_tensor3(const GroupElement& g, const RealTensor3& t, const LieBasis& basis);
ComplexTensor3 ad_tensor3(const GroupElement& g, const ComplexTensor3& t, const LieBasis& basis);

/// max over samples of || Ad_g^{(x)3} t - t ||_F.
double check_ad_invariance(const RealTensor3& t, const LieBasis& basis,
                           std::span<const GroupElement> samples);
double check_ad_invariance(const ComplexTensor3& t, const LieBasis& basis,
                           std::span<const GroupElement> samples);

/// Column a = Chevalley coordinates of compact basis element e_a.
Eigen::MatrixXcd compact_to_chevalley(const LieBasis& basis);

ComplexTensor2 to_chevalley(const RealTensor2& t, const LieBasis& basis);
ComplexTensor3 to_chevalley(const RealTensor3& t, const LieBasis& basis);

}  // namespace rpencil
