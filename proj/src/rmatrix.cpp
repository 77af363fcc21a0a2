#include "rpencil/rmatrix.hpp"

namespace rpencil {

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Chevalley ? "chevalley" : "compact";
}

ComplexTensor2 drinfeld_jimbo_r(const LieBasis& basis) {
  const Eigen::Index d = basis.dim();
  ComplexTensor2 r{BasisKind::Chevalley, Eigen::MatrixXcd::Zero(d, d)};
  const Complex half_i(0.0, 0.5);
  for (std::size_t k = 0; k < basis.chevalley.size(); ++k) {
    const auto e = static_cast<Eigen::Index>(2 * k);
    r.coeff(e, e + 1) = half_i;
    r.coeff(e + 1, e) = -half_i;
  }
  return r;
}

namespace {

RealTensor2 quarter_pairs(const LieBasis& basis, std::span<const Root> roots) {
  if (!basis.has_compact()) throw InvalidParabolic("compact basis not populated");
  const Eigen::Index d = basis.dim();
  RealTensor2 r{BasisKind::Compact, Eigen::MatrixXd::Zero(d, d)};
  for (const auto& root : roots) {
    if (!basis.roots.contains(root)) {
      throw InvalidParabolic("root " + root_label(root) + " is not a positive root");
    }
    const int v = basis.compact_pair_index(root);
    r.coeff(v, v + 1) = 0.25;
    r.coeff(v + 1, v) = -0.25;
  }
  return r;
}

}  // namespace

RealTensor2 compact_r(const LieBasis& basis) {
  return quarter_pairs(basis, basis.roots.positive_roots);
}

RealTensor2 parabolic_r(const LieBasis& basis) { return quarter_pairs(basis, basis.parabolic); }

RealTensor2 parabolic_r(const LieBasis& basis, std::span<const Root> dp) {
  return quarter_pairs(basis, dp);
}

RealTensor3 schouten_square(const RealTensor2& r, const LieBasis& basis) {
  if (r.basis != BasisKind::Compact) throw ShapeError("real tensors must be over the compact basis");
  if (r.dim() != basis.dim()) throw ShapeError("tensor does not match the basis dimension");
  return schouten_square(r, compact_structure_constants(basis));
}

ComplexTensor3 schouten_square(const ComplexTensor2& r, const LieBasis& basis) {
  if (r.dim() != basis.dim()) throw ShapeError("tensor does not match the basis dimension");
  if (r.basis == BasisKind::Chevalley) return schouten_square(r, chevalley_structure_constants(basis));
  const Array3<double> real = compact_structure_constants(basis);
  Array3<Complex> c(real.size());
  for (Eigen::Index a = 0; a < real.size(); ++a)
    for (Eigen::Index b = 0; b < real.size(); ++b)
      for (Eigen::Index k = 0; k < real.size(); ++k) c(a, b, k) = real(a, b, k);
  return schouten_square(r, c);
}

namespace {

Eigen::MatrixXcd adjoint_in(const LieBasis& basis, const GroupElement& g, BasisKind kind) {
  if (kind == BasisKind::Chevalley) return chevalley_adjoint_matrix(basis, g);
  return adjoint_matrix(basis, g).cast<Complex>();
}

}  // namespace

RealTensor2 ad_tensor2(const GroupElement& g, const RealTensor2& t, const LieBasis& basis) {
  if (t.basis != BasisKind::Compact) throw ShapeError("real tensors must be over the compact basis");
  return transform(t, adjoint_matrix(basis, g));
}

ComplexTensor2 ad_tensor2(const GroupElement& g, const ComplexTensor2& t, const LieBasis& basis) {
  return transform(t, adjoint_in(basis, g, t.basis));
}

RealTensor3 ad_tensor3(const GroupElement& g, const RealTensor3& t, const LieBasis& basis) {
  if (t.basis != BasisKind::Compact) throw ShapeError("real tensors must be over the compact basis");
  return transform(t, adjoint_matrix(basis, g));
}

ComplexTensor3 ad_tensor3(const GroupElement& g, const ComplexTensor3& t, const LieBasis& basis) {
  return transform(t, adjoint_in(basis, g, t.basis));
}

template <typename Scalar>
static double max_invariance_residual(const Tensor3<Scalar>& t, const LieBasis& basis,
                                      std::span<const GroupElement> samples) {
  double worst = 0.0;
  for (const auto& g : samples) {
    worst = std::max(worst, (ad_tensor3(g, t, basis).coeff - t.coeff).norm());
  }
  return worst;
}

double check_ad_invariance(const RealTensor3& t, const LieBasis& basis,
                           std::span<const GroupElement> samples) {
  return max_invariance_residual(t, basis, samples);
}

double check_ad_invariance(const ComplexTensor3& t, const LieBasis& basis,
                           std::span<const GroupElement> samples) {
  return max_invariance_residual(t, basis, samples);
}

Eigen::MatrixXcd compact_to_chevalley(const LieBasis& basis) {
  const Eigen::Index d = basis.dim();
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    m.col(a) = chevalley_coordinates(basis, basis.compact[static_cast<std::size_t>(a)]);
  }
  return m;
}

ComplexTensor2 to_chevalley(const RealTensor2& t, const LieBasis& basis) {
  if (t.basis != BasisKind::Compact) throw ShapeError("expected a compact-basis tensor");
  ComplexTensor2 c{BasisKind::Compact, t.coeff.cast<Complex>()};
  auto out = transform(c, compact_to_chevalley(basis));
  out.basis = BasisKind::Chevalley;
  return out;
}

ComplexTensor3 to_chevalley(const RealTensor3& t, const LieBasis& basis) {
  if (t.basis != BasisKind::Compact) throw ShapeError("expected a compact-basis tensor");
  Array3<Complex> c(t.dim());
  for (Eigen::Index a = 0; a < t.dim(); ++a)
    for (Eigen::Index b = 0; b < t.dim(); ++b)
      for (Eigen::Index k = 0; k < t.dim(); ++k) c(a, b, k) = t.coeff(a, b, k);
  auto out = transform(ComplexTensor3{BasisKind::Compact, c}, compact_to_chevalley(basis));
  out.basis = BasisKind::Chevalley;
  return out;
}

}  // namespace rpencil
