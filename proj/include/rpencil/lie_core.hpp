#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpencil/types.hpp"

namespace rpencil {

enum class Series { A };

/// Positive root e_i - e_j of A_n with 0-based indices, i < j.
struct Root {
  int i = 0;
  int j = 0;

  bool simple() const { return j == i + 1; }
  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;
};

struct RootSystem {
  Series series = Series::A;
  int rank = 0;
  std::vector<Root> positive_roots;  // lexicographic in (i, j)
  std::vector<Root> simple_roots;

  int matrix_size() const { return rank + 1; }
  bool contains(const Root& root) const;
};

RootSystem build_root_system(Series series, int rank);

/// Accepts "A" (case-insensitive); anything else throws UnsupportedAlgebra.
RootSystem build_root_system(std::string_view series, int rank);

/// Coefficients of `root` in the simple roots (nonnegative integers).
std::vector<int> simple_root_coefficients(const RootSystem& rs, const Root& root);

struct ChevalleyTriple {
  Root root;
  ComplexMatrix e;  // E_alpha
  ComplexMatrix f;  // E_{-alpha}
  ComplexMatrix h;  // H_alpha
};

/// Chevalley generators of sl(n+1, C) in the fundamental representation and,
/// once populated by compact_basis(), an orthonormal basis of su(n+1).
///
/// Compact ordering: (V_a, W_a) for a in `parabolic`, then the remaining
/// positive roots, then the Cartan directions iH.
struct LieBasis {
  RootSystem roots;
  int dimension_complex = 0;
  std::vector<ChevalleyTriple> chevalley;
  std::vector<Root> parabolic;
  std::vector<ComplexMatrix> compact;
  std::vector<std::string> labels;
  Eigen::MatrixXd gram;

  int dim() const { return dimension_complex; }
  int matrix_size() const { return roots.matrix_size(); }
  int orbit_dim() const { return 2 * static_cast<int>(parabolic.size()); }
  bool has_compact() const { return !compact.empty(); }

  /// Position of V_alpha in the compact ordering; W_alpha sits right after it.
  int compact_pair_index(const Root& root) const;

  /// Complex basis E_a1, F_a1, E_a2, F_a2, ..., H_s1, ..., H_sn (simple H last).
  std::vector<ComplexMatrix> chevalley_elements() const;
};

LieBasis chevalley_basis(const RootSystem& rs);

/// Throws InvalidParabolic if `dp` is not a duplicate-free subset of the positive roots.
LieBasis compact_basis(const LieBasis& basis, std::span<const Root> dp);

LieBasis make_basis(int rank, std::span<const Root> dp);

template <typename DerivedX, typename DerivedY>
auto commutator(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  Matrix<Scalar> out = x * y;
  out.noalias() -= y * x;
  return out;
}

/// The invariant scalar product -1/2 Re tr(XY).
template <typename DerivedX, typename DerivedY>
double trace_form(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw ShapeError("trace_form: operands must be square matrices of equal size");
  }
  // tr(XY) = sum_ij X_ij Y_ji
  return -0.5 * std::real((x.array() * y.transpose().array()).sum());
}

/// Real coordinates of an anti-hermitian X in the orthonormal compact basis.
Eigen::VectorXd compact_coordinates(const LieBasis& basis, const ComplexMatrix& x);

/// Complex coordinates of any traceless X over the compact basis (complex-bilinear form).
Eigen::VectorXcd compact_coordinates_complex(const LieBasis& basis, const ComplexMatrix& x);

ComplexMatrix from_compact_coordinates(const LieBasis& basis, const Eigen::VectorXd& coords);

/// Coordinates of a traceless X over chevalley_elements().
Eigen::VectorXcd chevalley_coordinates(const LieBasis& basis, const ComplexMatrix& x);

/// c(a, b, k) = k-th compact coordinate of [e_a, e_b].
Array3<double> compact_structure_constants(const LieBasis& basis);

/// Same over the Chevalley basis of sl(n+1, C).
Array3<Complex> chevalley_structure_constants(const LieBasis& basis);

/// Element of SU(n+1).
class GroupElement {
 public:
  /// Validates unitarity and det = 1 to `tol`; throws DomainError otherwise.
  explicit GroupElement(ComplexMatrix m, double tol = 1e-12);

  static GroupElement identity(int n);

  const ComplexMatrix& matrix() const { return m_; }
  int size() const { return static_cast<int>(m_.rows()); }
  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  struct Unchecked {};
  GroupElement(Unchecked, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Matrix of Ad_g on the compact basis: column a holds the coordinates of g e_a g^-1.
/// Orthogonal for g in SU(n+1).
Eigen::MatrixXd adjoint_matrix(const LieBasis& basis, const GroupElement& g);

/// Matrix of Ad_g on chevalley_elements().
Eigen::MatrixXcd chevalley_adjoint_matrix(const LieBasis& basis, const GroupElement& g);

/// Antidiagonal representative of the longest Weyl element with signs (+,-,+,...).
GroupElement longest_weyl_representative(const RootSystem& rs);

/// Haar-distributed element of SU(n) from a seeded complex Gaussian matrix.
GroupElement random_group_element(int n, std::uint64_t seed);
GroupElement random_group_element(int n, std::mt19937_64& rng);

/// exp(angle * V_alpha), a rotation in the (i, j) plane.
GroupElement root_rotation(const RootSystem& rs, const Root& root, double angle);

std::string root_label(const Root& root);

}  // namespace rpencil
