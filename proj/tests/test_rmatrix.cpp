#include "doctest.h"

#include <random>

#include "rpencil/errors.hpp"
#include "rpencil/lie_core.hpp"
#include "rpencil/rmatrix.hpp"

using namespace rpencil;

namespace {

LieBasis simple_basis(int rank) {
  const auto rs = build_root_system(Series::A, rank);
  return make_basis(rank, rs.simple_roots);
}

std::vector<GroupElement> haar(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> out;
  for (int k = 0; k < count; ++k) out.push_back(random_group_element(n, rng));
  return out;
}

Eigen::MatrixXd j_block(int m) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

}  // namespace

TEST_CASE("Drinfeld-Jimbo r on su(2) and su(3)") {
  const auto b1 = simple_basis(1);
  const ComplexTensor2 r1 = drinfeld_jimbo_r(b1);
  CHECK(r1.basis == BasisKind::Chevalley);
  CHECK(r1.coeff(0, 1) == Complex(0.0, 0.5));
  CHECK(r1.coeff(1, 0) == Complex(0.0, -0.5));
  CHECK((r1.coeff.cwiseAbs().array() > 0.0).count() == 2);

  const ComplexTensor2 r2 = drinfeld_jimbo_r(simple_basis(2));
  CHECK((r2.coeff.cwiseAbs().array() > 0.0).count() == 6);
  CHECK((r2.coeff + r2.coeff.transpose()).norm() == 0.0);
  for (int k = 0; k < 3; ++k) CHECK(r2.coeff(2 * k, 2 * k + 1) == Complex(0.0, 0.5));
}

TEST_CASE("parabolic r blocks") {
  const auto b1 = simple_basis(1);
  const RealTensor2 rp = parabolic_r(b1);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected.topLeftCorner(2, 2) = 0.25 * j_block(1);
  CHECK((rp.coeff - expected).norm() == 0.0);

  const std::vector<Root> none;
  CHECK(parabolic_r(b1, none).coeff.norm() == 0.0);

  const std::vector<Root> cp2{Root{0, 1}, Root{0, 2}};
  const auto b2 = make_basis(2, cp2);
  const RealTensor2 rp2 = parabolic_r(b2);
  CHECK((rp2.coeff.topLeftCorner(4, 4) - 0.25 * j_block(2)).norm() == 0.0);
  CHECK(rp2.coeff.bottomRows(4).norm() == 0.0);

  const std::vector<Root> bad{Root{2, 1}};
  CHECK_THROWS_AS(parabolic_r(b2, bad), InvalidParabolic);
}

TEST_CASE("compact r covers every positive root") {
  const auto b = simple_basis(2);
  const RealTensor2 ro = compact_r(b);
  CHECK((ro.coeff + ro.coeff.transpose()).norm() == 0.0);
  CHECK((ro.coeff.topLeftCorner(6, 6) - 0.25 * j_block(3)).norm() == 0.0);
}

TEST_CASE("Schouten square basics") {
  const auto b = simple_basis(1);
  const RealTensor2 zero{BasisKind::Compact, Eigen::MatrixXd::Zero(3, 3)};
  CHECK(schouten_square(zero, b).coeff.norm() == 0.0);

  // hand value: three-term component (E, F, H) of (i/2) E^F is -1/4
  const ComplexTensor3 s = schouten_square(drinfeld_jimbo_r(b), b);
  CHECK(std::abs(s.coeff(0, 1, 2) - Complex(-0.25, 0.0)) < 1e-15);
  CHECK(antisymmetry_defect(s.coeff) == 0.0);
  CHECK(s.coeff.norm() > 0.1);

  const auto b3 = simple_basis(3);
  const RealTensor3 s3 = schouten_square(compact_r(b3), b3);
  CHECK(antisymmetry_defect(s3.coeff) == 0.0);
}

TEST_CASE("Schouten square shape check") {
  const auto b = simple_basis(2);
  const RealTensor2 wrong{BasisKind::Compact, Eigen::MatrixXd::Zero(3, 3)};
  CHECK_THROWS_AS(schouten_square(wrong, b), ShapeError);
}

TEST_CASE("modified Yang-Baxter invariance") {
  for (int rank = 1; rank <= 3; ++rank) {
    const auto b = simple_basis(rank);
    const auto samples = haar(rank + 1, 50, 100 + rank);
    CHECK(check_ad_invariance(schouten_square(compact_r(b), b), b, samples) <= 1e-10);
    CHECK(check_ad_invariance(schouten_square(drinfeld_jimbo_r(b), b), b, samples) <= 1e-10);
  }
  const auto b = simple_basis(1);
  const RealTensor3 zero{BasisKind::Compact, Array3<double>(3)};
  CHECK(check_ad_invariance(zero, b, haar(2, 5, 1)) == 0.0);
}

TEST_CASE("a perturbed 3-tensor is not invariant") {
  const auto b = simple_basis(2);
  RealTensor3 t{BasisKind::Compact, Array3<double>(8)};
  auto wedge = [&](int x, int y, int z, double v) {
    const int idx[3] = {x, y, z};
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    for (int p = 0; p < 6; ++p) t.coeff(idx[perms[p][0]], idx[perms[p][1]], idx[perms[p][2]]) += p < 3 ? v : -v;
  };
  wedge(0, 1, 2, 1.0);
  wedge(0, 1, 3, 1e-3);
  CHECK(check_ad_invariance(t, b, haar(3, 10, 4)) > 1e-4);
}

TEST_CASE("ad action on tensors") {
  const auto b = simple_basis(2);
  const RealTensor2 ro = compact_r(b);
  CHECK((ad_tensor2(GroupElement::identity(3), ro, b).coeff - ro.coeff).norm() == 0.0);

  const GroupElement w = longest_weyl_representative(b.roots);
  CHECK((ad_tensor2(w, ro, b).coeff + ro.coeff).norm() < 1e-14);
  const auto b1 = simple_basis(1);
  const GroupElement w1 = longest_weyl_representative(b1.roots);
  CHECK((ad_tensor2(w1, compact_r(b1), b1).coeff + compact_r(b1).coeff).norm() < 1e-15);

  const GroupElement g = random_group_element(3, 8), h = random_group_element(3, 9);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(8, 8, [&] { return n01(rng); });
  const RealTensor2 t{BasisKind::Compact, a - a.transpose()};
  const RealTensor2 lhs = ad_tensor2(g * h, t, b);
  const RealTensor2 rhs = ad_tensor2(g, ad_tensor2(h, t, b), b);
  CHECK((lhs.coeff - rhs.coeff).norm() <= 1e-12);

  const RealTensor3 s = schouten_square(ro, b);
  const RealTensor3 s_gh = ad_tensor3(g * h, s, b);
  const RealTensor3 s_g_h = ad_tensor3(g, ad_tensor3(h, s, b), b);
  CHECK((s_gh.coeff - s_g_h.coeff).norm() <= 1e-12);
}

TEST_CASE("su(2): compact r transports to the Drinfeld-Jimbo r") {
  const auto b = simple_basis(1);
  const ComplexTensor2 moved = to_chevalley(compact_r(b), b);
  CHECK(moved.basis == BasisKind::Chevalley);
  CHECK((moved.coeff - drinfeld_jimbo_r(b).coeff).norm() <= 1e-12);
}

TEST_CASE("Schouten square commutes with basis transport") {
  for (int rank = 1; rank <= 2; ++rank) {
    const auto b = simple_basis(rank);
    const RealTensor2 ro = compact_r(b);
    const ComplexTensor3 via_compact = to_chevalley(schouten_square(ro, b), b);
    const ComplexTensor3 via_chevalley = schouten_square(to_chevalley(ro, b), b);
    CHECK((via_compact.coeff - via_chevalley.coeff).norm() <= 1e-10);
  }
}
