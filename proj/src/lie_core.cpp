#include "rpencil/lie_core.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rpencil {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix elementary(int n, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

bool RootSystem::contains(const Root& root) const {
  return std::find(positive_roots.begin(), positive_roots.end(), root) != positive_roots.end();
}

RootSystem build_root_system(Series series, int rank) {
  if (series != Series::A) throw UnsupportedAlgebra("only the A series is supported");
  if (rank < 1) throw UnsupportedAlgebra("rank must be at least 1, got " + std::to_string(rank));
  RootSystem rs;
  rs.series = series;
  rs.rank = rank;
  const int n = rank + 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      rs.positive_roots.push_back({i, j});
      if (j == i + 1) rs.simple_roots.push_back({i, j});
    }
  }
  return rs;
}

RootSystem build_root_system(std::string_view series, int rank) {
  if (series.size() == 1 && std::toupper(static_cast<unsigned char>(series[0])) == 'A') {
    return build_root_system(Series::A, rank);
  }
  throw UnsupportedAlgebra("unsupported series '" + std::string(series) + "'");
}

std::vector<int> simple_root_coefficients(const RootSystem& rs, const Root& root) {
  if (!rs.contains(root)) throw InvalidParabolic("not a positive root: " + root_label(root));
  std::vector<int> coeffs(static_cast<std::size_t>(rs.rank), 0);
  for (int k = root.i; k < root.j; ++k) coeffs[static_cast<std::size_t>(k)] = 1;
  return coeffs;
}

std::string root_label(const Root& root) {
  return "(" + std::to_string(root.i + 1) + "," + std::to_string(root.j + 1) + ")";
}

int LieBasis::compact_pair_index(const Root& root) const {
  auto it = std::find(parabolic.begin(), parabolic.end(), root);
  if (it != parabolic.end()) return 2 * static_cast<int>(it - parabolic.begin());
  int index = orbit_dim();
  for (const auto& r : roots.positive_roots) {
    if (std::find(parabolic.begin(), parabolic.end(), r) != parabolic.end()) continue;
    if (r == root) return index;
    index += 2;
  }
  throw InvalidParabolic("root " + root_label(root) + " is not positive");
}

std::vector<ComplexMatrix> LieBasis::chevalley_elements() const {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(dimension_complex));
  for (const auto& t : chevalley) {
    out.push_back(t.e);
    out.push_back(t.f);
  }
  for (const auto& s : roots.simple_roots) {
    for (const auto& t : chevalley) {
      if (t.root == s) out.push_back(t.h);
    }
  }
  return out;
}

LieBasis chevalley_basis(const RootSystem& rs) {
  LieBasis basis;
  basis.roots = rs;
  const int n = rs.matrix_size();
  basis.dimension_complex = n * n - 1;
  for (const auto& r : rs.positive_roots) {
    ChevalleyTriple t;
    t.root = r;
    t.e = elementary(n, r.i, r.j);
    t.f = elementary(n, r.j, r.i);
    t.h = elementary(n, r.i, r.i) - elementary(n, r.j, r.j);
    basis.chevalley.push_back(std::move(t));
  }
  return basis;
}

LieBasis compact_basis(const LieBasis& chev, std::span<const Root> dp) {
  if (chev.chevalley.empty()) throw InvalidParabolic("compact_basis needs a Chevalley basis");
  std::set<Root> seen;
  for (const auto& r : dp) {
    if (!chev.roots.contains(r)) {
      throw InvalidParabolic("parabolic root " + root_label(r) + " is not a positive root");
    }
    if (!seen.insert(r).second) throw InvalidParabolic("duplicate parabolic root " + root_label(r));
  }

  LieBasis basis = chev;
  basis.parabolic.assign(dp.begin(), dp.end());
  basis.compact.clear();
  basis.labels.clear();

  auto push_pair = [&](const ChevalleyTriple& t) {
    basis.compact.push_back(t.e - t.f);
    basis.compact.push_back(kI * (t.e + t.f));
    basis.labels.push_back("V" + root_label(t.root));
    basis.labels.push_back("W" + root_label(t.root));
  };
  auto triple_of = [&](const Root& r) -> const ChevalleyTriple& {
    return *std::find_if(chev.chevalley.begin(), chev.chevalley.end(),
                         [&](const ChevalleyTriple& t) { return t.root == r; });
  };

  for (const auto& r : dp) push_pair(triple_of(r));
  for (const auto& t : chev.chevalley) {
    if (!seen.contains(t.root)) push_pair(t);
  }

  // Gram-Schmidt on iH over simple roots.
  std::vector<ComplexMatrix> cartan;
  for (std::size_t k = 0; k < chev.roots.simple_roots.size(); ++k) {
    ComplexMatrix v = kI * triple_of(chev.roots.simple_roots[k]).h;
    for (const auto& u : cartan) v -= trace_form(u, v) * u;
    v /= std::sqrt(trace_form(v, v));
    cartan.push_back(v);
    basis.compact.push_back(v);
    basis.labels.push_back("iH" + std::to_string(k + 1));
  }

  const auto d = static_cast<Eigen::Index>(basis.compact.size());
  basis.gram.resize(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      basis.gram(a, b) = trace_form(basis.compact[static_cast<std::size_t>(a)],
                                    basis.compact[static_cast<std::size_t>(b)]);
    }
  }
  return basis;
}

LieBasis make_basis(int rank, std::span<const Root> dp) {
  return compact_basis(chevalley_basis(build_root_system(Series::A, rank)), dp);
}

Eigen::VectorXd compact_coordinates(const LieBasis& basis, const ComplexMatrix& x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.compact.size()));
  for (std::size_t a = 0; a < basis.compact.size(); ++a) {
    out(static_cast<Eigen::Index>(a)) = trace_form(basis.compact[a], x);
  }
  return out;
}

Eigen::VectorXcd compact_coordinates_complex(const LieBasis& basis, const ComplexMatrix& x) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(basis.compact.size()));
  for (std::size_t a = 0; a < basis.compact.size(); ++a) {
    const auto& e = basis.compact[a];
    out(static_cast<Eigen::Index>(a)) = -0.5 * (e.array() * x.transpose().array()).sum();
  }
  return out;
}

ComplexMatrix from_compact_coordinates(const LieBasis& basis, const Eigen::VectorXd& coords) {
  if (coords.size() != static_cast<Eigen::Index>(basis.compact.size())) {
    throw ShapeError("coordinate vector does not match the compact basis");
  }
  const int n = basis.matrix_size();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < basis.compact.size(); ++a) {
    out += coords(static_cast<Eigen::Index>(a)) * basis.compact[a];
  }
  return out;
}

Eigen::VectorXcd chevalley_coordinates(const LieBasis& basis, const ComplexMatrix& x) {
  const int n = basis.matrix_size();
  if (x.rows() != n || x.cols() != n) throw ShapeError("matrix size does not match the algebra");
  Eigen::VectorXcd out(basis.dimension_complex);
  Eigen::Index k = 0;
  for (const auto& t : basis.chevalley) {
    out(k++) = x(t.root.i, t.root.j);
    out(k++) = x(t.root.j, t.root.i);
  }
  // diag(d) = sum_k c_k (e_k - e_{k+1})  =>  c_k = d_0 + ... + d_k
  Complex partial = 0.0;
  for (int s = 0; s < basis.roots.rank; ++s) {
    partial += x(s, s);
    out(k++) = partial;
  }
  return out;
}

Array3<double> compact_structure_constants(const LieBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.compact.size());
  Array3<double> c(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Eigen::VectorXd coords = compact_coordinates(
          basis, commutator(basis.compact[static_cast<std::size_t>(a)],
                            basis.compact[static_cast<std::size_t>(b)]));
      for (Eigen::Index k = 0; k < d; ++k) c(a, b, k) = coords(k);
    }
  }
  return c;
}

Array3<Complex> chevalley_structure_constants(const LieBasis& basis) {
  const auto elems = basis.chevalley_elements();
  const auto d = static_cast<Eigen::Index>(elems.size());
  Array3<Complex> c(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Eigen::VectorXcd coords = chevalley_coordinates(
          basis, commutator(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]));
      for (Eigen::Index k = 0; k < d; ++k) c(a, b, k) = coords(k);
    }
  }
  return c;
}

GroupElement::GroupElement(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ShapeError("group element must be square");
  const auto n = m_.rows();
  const double unitarity = (m_.adjoint() * m_ - ComplexMatrix::Identity(n, n)).norm();
  if (unitarity > tol) throw DomainError("matrix is not unitary");
  if (std::abs(m_.determinant() - 1.0) > tol) throw DomainError("determinant is not 1");
}

GroupElement GroupElement::identity(int n) {
  return GroupElement(Unchecked{}, ComplexMatrix::Identity(n, n));
}

GroupElement GroupElement::inverse() const { return GroupElement(Unchecked{}, m_.adjoint()); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.size() != b.size()) throw ShapeError("group elements of different size");
  return GroupElement(GroupElement::Unchecked{}, a.m_ * b.m_);
}

Eigen::MatrixXd adjoint_matrix(const LieBasis& basis, const GroupElement& g) {
  if (g.size() != basis.matrix_size()) throw ShapeError("group element does not match the algebra");
  const auto d = static_cast<Eigen::Index>(basis.compact.size());
  Eigen::MatrixXd ad(d, d);
  const ComplexMatrix& u = g.matrix();
  for (Eigen::Index a = 0; a < d; ++a) {
    const ComplexMatrix moved = u * basis.compact[static_cast<std::size_t>(a)] * u.adjoint();
    ad.col(a) = compact_coordinates(basis, moved);
  }
  return ad;
}

Eigen::MatrixXcd chevalley_adjoint_matrix(const LieBasis& basis, const GroupElement& g) {
  if (g.size() != basis.matrix_size()) throw ShapeError("group element does not match the algebra");
  const auto elems = basis.chevalley_elements();
  const auto d = static_cast<Eigen::Index>(elems.size());
  Eigen::MatrixXcd ad(d, d);
  const ComplexMatrix& u = g.matrix();
  for (Eigen::Index a = 0; a < d; ++a) {
    ad.col(a) = chevalley_coordinates(basis, u * elems[static_cast<std::size_t>(a)] * u.adjoint());
  }
  return ad;
}

GroupElement longest_weyl_representative(const RootSystem& rs) {
  const int n = rs.matrix_size();
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  // det = sign(reversal) * prod(signs) = (-1)^{n(n-1)/2} * (-1)^{n(n-1)/2} = 1
  for (int i = 0; i < n; ++i) w(i, n - 1 - i) = (i % 2 == 0) ? 1.0 : -1.0;
  return GroupElement(std::move(w));
}

GroupElement random_group_element(int n, std::mt19937_64& rng) {
  if (n < 1) throw ShapeError("matrix size must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  const Complex det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / n);
  return GroupElement(std::move(q));
}

GroupElement random_group_element(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_group_element(n, rng);
}

GroupElement root_rotation(const RootSystem& rs, const Root& root, double angle) {
  if (!rs.contains(root)) throw InvalidParabolic("not a positive root: " + root_label(root));
  const int n = rs.matrix_size();
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m(root.i, root.i) = c;
  m(root.j, root.j) = c;
  m(root.i, root.j) = s;
  m(root.j, root.i) = -s;
  return GroupElement(std::move(m));
}

}  // namespace rpencil
