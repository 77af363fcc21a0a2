#include "doctest.h"

#include <cmath>
#include <random>

#include "rpencil/errors.hpp"
#include "rpencil/pencil.hpp"
#include "rpencil/schouten.hpp"
#include "rpencil/vaisman.hpp"

using namespace rpencil;

namespace {

ChartFunction fn(std::function<double(const Point&)> f, Domain d = Domain::whole()) {
  return ChartFunction{std::move(f), {}, std::move(d)};
}

ChartVector field(int dim, std::function<Eigen::VectorXd(const Point&)> v) {
  ChartVector out;
  out.dim = dim;
  out.coeff = std::move(v);
  return out;
}

ChartBivector bivector(int dim, std::function<Eigen::MatrixXd(const Point&)> p) {
  ChartBivector out;
  out.dim = dim;
  out.coeff = std::move(p);
  return out;
}

Eigen::MatrixXd planar(double c) {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, c, -c, 0.0;
  return m;
}

// Smooth generic fields on R^3.
ChartVector smooth_vector(double a) {
  return field(3, [a](const Point& x) {
    return Eigen::Vector3d(std::sin(a * x(1)), x(0) * x(2), std::cos(x(0) + a * x(2))).eval();
  });
}

ChartBivector smooth_bivector(double a) {
  return bivector(3, [a](const Point& x) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 1) = std::sin(a * x(2)) + x(0);
    m(0, 2) = x(1) * x(1);
    m(1, 2) = std::cos(x(0) * a);
    return Eigen::MatrixXd(m - m.transpose());
  });
}

}  // namespace

TEST_CASE("Hamiltonian vectors on the example charts") {
  const ChartBivector pi1 = example1_bivector();
  const Point x = Eigen::Vector2d(1.7, -0.4);
  const auto p = fn([](const Point& y) { return y(0); });
  const Eigen::VectorXd cp = hamiltonian_vector(pi1, p, x);
  CHECK(cp(0) == doctest::Approx(0.0));
  CHECK(cp(1) == doctest::Approx(1.7));
  CHECK(hamiltonian_vector(pi1, fn([](const Point&) { return 3.0; }), x).norm() == 0.0);

  const Domain dom = Domain::box(Eigen::Vector2d(0.2, 0.1), Eigen::Vector2d(3.0, 3.0));
  const ChartBivector pi2 = example2_bivector(dom);
  const Point y = Eigen::Vector2d(1.3, 0.9);
  const Eigen::VectorXd cr = hamiltonian_vector(pi2, fn([](const Point& z) { return z(0); }, dom), y);
  CHECK(cr(0) == doctest::Approx(0.0));
  CHECK(cr(1) == doctest::Approx(-0.5 * 1.3 * std::sin(0.9)).epsilon(1e-10));

  const auto q = fn([](const Point& z) { return z(1); });
  CHECK(poisson_bracket(pi1, p, q).value(x) == doctest::Approx(1.7));
}

TEST_CASE("Schouten square of planar and linear bivectors") {
  const ChartBivector pi1 = example1_bivector();
  CHECK(jacobiator(pi1, Eigen::Vector2d(0.5, 0.5)) == 0.0);

  // KKS bracket on su(2)*: pi^{ab}(x) = c(a, b, k) x_k
  const auto setup = make_pencil_setup(1, projective_space_roots(1));
  const auto kks = bivector(3, [&](const Point& x) { return kks_matrix(x, setup.structure); });
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) worst = std::max(worst, jacobiator(kks, Eigen::Vector3d(u(rng), u(rng), u(rng))));
  CHECK(worst <= 1e-8);

  const auto broken = bivector(3, [](const Point& x) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 1) = x(0);
    m(1, 2) = x(1);
    m(2, 0) = 1.0;
    return Eigen::MatrixXd(m - m.transpose());
  });
  CHECK(jacobiator(broken, Eigen::Vector3d(0.7, -1.1, 0.4)) > 0.1);
}

TEST_CASE("Lie derivative anchor") {
  const ChartBivector pi = example1_bivector();
  const ChartVector x = example1_field();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const Point pt = Eigen::Vector2d(u(rng), u(rng));
    CHECK((lie_derivative_bivector(x, pi, pt) + pi.coeff(pt)).norm() <= 1e-8);
  }
  const Point pt = Eigen::Vector2d(1.0, 2.0);
  CHECK(lie_derivative_bivector(zero_vector(2), pi, pt).norm() == 0.0);
  const ChartBivector constant = constant_bivector(planar(2.0));
  const ChartVector dx = field(2, [](const Point&) { return Eigen::Vector2d(1.0, 0.0).eval(); });
  CHECK(lie_derivative_bivector(dx, constant, pt).norm() < 1e-12);

  // delta X = [[pi, X]] = -L_X pi = +pi for this pair
  const auto dX = std::get<Eigen::MatrixXd>(poisson_differential(pi, x, pt));
  CHECK((dX - pi.coeff(pt)).norm() <= 1e-8);
  CHECK(kLieDerivativeSign == 1);
}

TEST_CASE("Poisson differential") {
  const ChartBivector pi = example1_bivector();
  const Point pt = Eigen::Vector2d(0.8, 0.3);
  const auto c = fn([](const Point&) { return 5.0; });
  CHECK(std::get<Eigen::VectorXd>(poisson_differential(pi, c, pt)).norm() == 0.0);

  const auto f = fn([](const Point& y) { return y(0) + y(1); });
  const ChartVector df = hamiltonian_field(pi, f);
  const auto dd = std::get<Eigen::MatrixXd>(poisson_differential(pi, df, pt));
  CHECK(component_norm(dd) <= 1e-6);
}

TEST_CASE("graded antisymmetry") {
  const Point pt = Eigen::Vector3d(0.3, -0.2, 0.5);
  const ChartVector u = smooth_vector(0.7), v = smooth_vector(-1.3);
  const ChartBivector p = smooth_bivector(0.4), s = smooth_bivector(1.1);
  const auto f = fn([](const Point& x) { return std::exp(x(0)) * x(1) + x(2) * x(2); });

  const auto uv = std::get<Eigen::VectorXd>(schouten_bracket(u, v, pt));
  const auto vu = std::get<Eigen::VectorXd>(schouten_bracket(v, u, pt));
  CHECK((uv + vu).norm() <= 1e-6);

  CHECK(std::get<double>(schouten_bracket(u, f, pt)) + std::get<double>(schouten_bracket(f, u, pt)) ==
        doctest::Approx(0.0).epsilon(1e-6));

  const auto pf = std::get<Eigen::VectorXd>(schouten_bracket(p, f, pt));
  const auto fp = std::get<Eigen::VectorXd>(schouten_bracket(f, p, pt));
  CHECK((pf - fp).norm() <= 1e-6);

  const auto up = std::get<Eigen::MatrixXd>(schouten_bracket(u, p, pt));
  const auto pu = std::get<Eigen::MatrixXd>(schouten_bracket(p, u, pt));
  CHECK((up + pu).norm() <= 1e-6);

  const auto ps = std::get<Array3<double>>(schouten_bracket(p, s, pt));
  const auto sp = std::get<Array3<double>>(schouten_bracket(s, p, pt));
  CHECK((ps - sp).norm() <= 1e-6);

  CHECK(std::get<double>(schouten_bracket(f, f, pt)) == 0.0);
}

TEST_CASE("P map and its inverse") {
  const ChartBivector unit = constant_bivector(planar(1.0));
  const Point pt = Eigen::Vector2d(0.0, 0.0);
  const Eigen::MatrixXd w = p_inverse(unit, pt);
  CHECK((w - planar(1.0)).norm() == 0.0);

  const ChartBivector pi = cp1_chart_bivector(0.5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const Point x = Eigen::Vector2d(u(rng), u(rng));
    const Eigen::MatrixXd inv = p_inverse(pi, x);
    const ChartForm2 omega{2, [inv](const Point&) { return inv; }, Domain::whole()};
    CHECK((p_map(pi, omega, x) - pi.coeff(x)).norm() <= 1e-12);
  }
  CHECK_THROWS_AS(p_inverse(cp1_chart_bivector(-1.0), Eigen::Vector2d(1.0, 0.0)), DegeneratePoint);
  CHECK(p_map(pi, zero_form(2), Eigen::Vector2d(0.1, 0.2)).norm() == 0.0);
}

TEST_CASE("closedness of 2-forms") {
  const ChartForm2 planar_form{2, [](const Point& x) { return planar(x(0) * x(1)); }, Domain::whole()};
  CHECK(closedness_residual(planar_form, Eigen::Vector2d(0.3, 0.4)) == 0.0);
  const ChartForm2 not_closed{3,
                              [](const Point& x) {
                                Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
                                m(0, 1) = x(2);
                                return Eigen::MatrixXd(m - m.transpose());
                              },
                              Domain::whole()};
  CHECK(closedness_residual(not_closed, Eigen::Vector3d(0.1, 0.2, 0.3)) == doctest::Approx(1.0));
}

TEST_CASE("domain errors") {
  const Domain box = Domain::box(Eigen::Vector2d(0.1, -3.0), Eigen::Vector2d(3.0, 3.0));
  const ChartBivector pi = example1_bivector(box);
  const auto p = fn([](const Point& y) { return y(0); }, box);
  CHECK_THROWS_AS(hamiltonian_vector(pi, p, Eigen::Vector2d(-1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(hamiltonian_vector(pi, p, Eigen::Vector2d(0.10001, 0.0)), DomainError);
  CHECK_THROWS_AS(lie_derivative_bivector(example1_field(box), pi, Eigen::Vector2d(5.0, 0.0)),
                  DomainError);

  const Domain ring = Domain::annulus(0.5, 2.0);
  CHECK(ring.contains(Eigen::Vector2d(1.0, 0.0)));
  CHECK_FALSE(ring.contains(Eigen::Vector2d(0.1, 0.0)));
  CHECK(Domain::whole().contains(Eigen::Vector2d(1e9, -1e9)));
}
