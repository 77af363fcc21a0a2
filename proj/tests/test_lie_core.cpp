#include "doctest.h"

#include <random>

#include "rpencil/errors.hpp"
#include "rpencil/lie_core.hpp"

using namespace rpencil;

namespace {

ComplexMatrix unit(int n, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix random_su(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  ComplexMatrix x = a - a.adjoint();
  x -= (x.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return x;
}

}  // namespace

TEST_CASE("root system counts") {
  const auto a1 = build_root_system(Series::A, 1);
  CHECK(a1.positive_roots.size() == 1);
  CHECK(a1.positive_roots.front() == Root{0, 1});

  const auto a2 = build_root_system("A", 2);
  CHECK(a2.positive_roots.size() == 3);
  CHECK(a2.simple_roots.size() == 2);
  CHECK(a2.contains(Root{0, 2}));
  CHECK_FALSE(a2.contains(Root{1, 0}));

  for (int n = 1; n <= 5; ++n) {
    CHECK(build_root_system(Series::A, n).positive_roots.size() ==
          static_cast<std::size_t>(n * (n + 1) / 2));
  }
  CHECK(simple_root_coefficients(a2, Root{0, 2}) == std::vector<int>{1, 1});
  CHECK(root_label(Root{0, 2}) == "(1,3)");
}

TEST_CASE("unsupported series and ranks") {
  CHECK_THROWS_AS(build_root_system("B", 2), UnsupportedAlgebra);
  CHECK_THROWS_AS(build_root_system(Series::A, 0), UnsupportedAlgebra);
}

TEST_CASE("sl(2) Chevalley triple") {
  const auto basis = chevalley_basis(build_root_system(Series::A, 1));
  REQUIRE(basis.chevalley.size() == 1);
  const auto& t = basis.chevalley.front();
  CHECK(t.e.isApprox(unit(2, 0, 1)));
  CHECK(t.f.isApprox(unit(2, 1, 0)));
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  CHECK(t.h.isApprox(h));
  CHECK((commutator(t.e, t.f) - h).norm() == 0.0);
  // M -> -M^dagger sends E to -F
  CHECK((-t.e.adjoint() + t.f).norm() == 0.0);
}

TEST_CASE("A2 structure constant [E12, E23] = E13") {
  const auto basis = chevalley_basis(build_root_system(Series::A, 2));
  const ComplexMatrix c = commutator(unit(3, 0, 1), unit(3, 1, 2));
  CHECK((c - unit(3, 0, 2)).norm() == 0.0);
  const Eigen::VectorXcd coords = chevalley_coordinates(basis, c);
  const auto elems = basis.chevalley_elements();
  ComplexMatrix back = ComplexMatrix::Zero(3, 3);
  for (Eigen::Index k = 0; k < coords.size(); ++k) back += coords(k) * elems[static_cast<std::size_t>(k)];
  CHECK((back - c).norm() < 1e-14);
}

TEST_CASE("compact basis of su(2)") {
  const std::vector<Root> dp{Root{0, 1}};
  const auto basis = make_basis(1, dp);
  REQUIRE(basis.compact.size() == 3);
  ComplexMatrix v(2, 2), w(2, 2);
  v << 0.0, 1.0, -1.0, 0.0;
  w << 0.0, Complex(0, 1), Complex(0, 1), 0.0;
  CHECK((basis.compact[0] - v).norm() == 0.0);
  CHECK((basis.compact[1] - w).norm() == 0.0);
  CHECK(trace_form(v, v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trace_form(w, w) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trace_form(v, w) == 0.0);
  CHECK(trace_form(v, ComplexMatrix::Zero(2, 2)) == 0.0);
  CHECK(std::abs(trace_form(basis.compact[2], v)) < 1e-15);
  CHECK(basis.labels == std::vector<std::string>{"V(1,2)", "W(1,2)", "iH1"});
  CHECK(basis.compact_pair_index(Root{0, 1}) == 0);
}

TEST_CASE("compact ordering puts the parabolic pairs first") {
  const std::vector<Root> dp{Root{0, 2}};
  const auto basis = make_basis(2, dp);
  CHECK(basis.labels[0] == "V(1,3)");
  CHECK(basis.labels[1] == "W(1,3)");
  CHECK(basis.orbit_dim() == 2);
  for (int rank = 1; rank <= 3; ++rank) {
    const auto rs = build_root_system(Series::A, rank);
    const auto b = make_basis(rank, rs.simple_roots);
    const auto d = b.gram.rows();
    CHECK((b.gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(static_cast<int>(b.compact.size()) == (rank + 1) * (rank + 1) - 1);
  }
}

TEST_CASE("invalid parabolic subsets") {
  const std::vector<Root> backwards{Root{1, 0}};
  CHECK_THROWS_AS(make_basis(1, backwards), InvalidParabolic);
  const std::vector<Root> outside{Root{0, 3}};
  CHECK_THROWS_AS(make_basis(2, outside), InvalidParabolic);
  const std::vector<Root> twice{Root{0, 1}, Root{0, 1}};
  CHECK_THROWS_AS(make_basis(2, twice), InvalidParabolic);
}

TEST_CASE("trace form shape check") {
  CHECK_THROWS_AS(trace_form(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), ShapeError);
}

TEST_CASE("matrix Jacobi identity") {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix x = random_su(3, rng), y = random_su(3, rng), z = random_su(3, rng);
    const ComplexMatrix j = commutator(commutator(x, y), z) + commutator(commutator(y, z), x) +
                            commutator(commutator(z, x), y);
    worst = std::max(worst, j.norm());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("compact coordinates round trip") {
  const auto rs = build_root_system(Series::A, 2);
  const auto basis = make_basis(2, rs.simple_roots);
  std::mt19937_64 rng(5);
  const ComplexMatrix x = random_su(3, rng);
  CHECK((from_compact_coordinates(basis, compact_coordinates(basis, x)) - x).norm() < 1e-12);
}

TEST_CASE("structure constants are antisymmetric") {
  const auto rs = build_root_system(Series::A, 2);
  const auto basis = make_basis(2, rs.simple_roots);
  const auto c = compact_structure_constants(basis);
  const int d = basis.dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(c(a, b, k) + c(b, a, k)));
  CHECK(worst == 0.0);
}

TEST_CASE("longest Weyl element of A1") {
  const auto rs = build_root_system(Series::A, 1);
  const GroupElement w = longest_weyl_representative(rs);
  ComplexMatrix expected(2, 2);
  expected << 0.0, 1.0, -1.0, 0.0;
  CHECK((w.matrix() - expected).norm() == 0.0);
  const ComplexMatrix moved = w.matrix() * unit(2, 0, 1) * w.matrix().adjoint();
  CHECK(moved(0, 0) == Complex(0.0));
  CHECK(moved(0, 1) == Complex(0.0));
  CHECK(moved(1, 1) == Complex(0.0));
  CHECK(std::abs(moved(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(w.matrix().determinant() - 1.0) < 1e-15);
}

TEST_CASE("Haar samples are unitary, deterministic and balanced") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const GroupElement u = random_group_element(3, seed);
    CHECK((u.matrix().adjoint() * u.matrix() - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK(std::abs(u.matrix().determinant() - 1.0) < 1e-12);
    CHECK((u.matrix() - random_group_element(3, seed).matrix()).norm() == 0.0);
  }
  std::mt19937_64 rng(11);
  double mean = 0.0;
  for (int k = 0; k < 1000; ++k) mean += std::norm(random_group_element(2, rng).matrix()(0, 0));
  CHECK(std::abs(mean / 1000.0 - 0.5) < 0.05);
}

TEST_CASE("group element checks unitarity") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  CHECK_THROWS_AS(GroupElement{m}, DomainError);
}

TEST_CASE("adjoint matrix is an orthogonal homomorphism") {
  const auto rs = build_root_system(Series::A, 2);
  const auto basis = make_basis(2, rs.simple_roots);
  const GroupElement g = random_group_element(3, 21), h = random_group_element(3, 22);
  const Eigen::MatrixXd ag = adjoint_matrix(basis, g), ah = adjoint_matrix(basis, h);
  CHECK((adjoint_matrix(basis, g * h) - ag * ah).norm() < 1e-12);
  CHECK((ag.transpose() * ag - Eigen::MatrixXd::Identity(8, 8)).norm() < 1e-12);
}

TEST_CASE("root rotation stays in SU(n)") {
  const auto rs = build_root_system(Series::A, 2);
  const GroupElement r = root_rotation(rs, Root{0, 2}, 0.7);
  CHECK((r.matrix().adjoint() * r.matrix() - ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
  CHECK((root_rotation(rs, Root{0, 2}, 0.0).matrix() - ComplexMatrix::Identity(3, 3)).norm() == 0.0);
}
