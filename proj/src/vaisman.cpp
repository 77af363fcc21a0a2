#include "rpencil/vaisman.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rpencil/io.hpp"
#include "rpencil/lie_core.hpp"
#include "rpencil/pencil.hpp"

namespace rpencil {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd planar(double c) {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, c, -c, 0.0;
  return m;
}

}  // namespace

double vaisman_residual(const VaismanInstance& inst, std::span<const Point> points, double h) {
  double worst = 0.0;
  for (const auto& x : points) {
    if (inst.degeneracy_distance && inst.degeneracy_distance(x) < inst.excision) {
      throw DomainError("sample point lies inside the excised neighbourhood of the degeneracy locus");
    }
    const Eigen::MatrixXd lhs = inst.pi.coeff(x) + lie_derivative_bivector(inst.x, inst.pi, x, h);
    worst = std::max(worst, component_norm(lhs - p_map(inst.pi, inst.omega, x)));
  }
  return worst;
}

double delta_squared_residual(const ChartBivector& pi, std::span<const ChartFunction> functions,
                              std::span<const Point> points, double h) {
  double worst = 0.0;
  for (const auto& f : functions) {
    const ChartVector df = hamiltonian_field(pi, f, h);
    for (const auto& x : points) {
      const auto value = poisson_differential(pi, df, x, h);
      worst = std::max(worst, component_norm(std::get<Eigen::MatrixXd>(value)));
    }
  }
  return worst;
}

std::vector<ChartFunction> random_test_functions(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<ChartFunction> out;
  for (int k = 0; k < count; ++k) {
    const double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng), e = unit(rng);
    ChartFunction f;
    f.value = [=](const Point& x) {
      return a * std::sin(b * x(0) + c * x(1)) + d * x(0) * x(1) + e * x(0) * x(0);
    };
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Point> uniform_points(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    Point p(2);
    for (int i = 0; i < 2; ++i) p(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
    out.push_back(std::move(p));
  }
  return out;
}

bool Certification::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

const CheckRecord& Certification::check(const std::string& check_name) const {
  for (const auto& c : checks)
    if (c.name == check_name) return c;
  throw OutOfRange("no check named " + check_name);
}

ChartBivector bivector_from_hamiltonians(const ChartBivector& base, const ChartFunction& h1,
                                         const ChartFunction& h2, double h) {
  ChartBivector out;
  out.dim = base.dim;
  out.domain = base.domain;
  out.coeff = [=](const Point& x) {
    // {x_i, h} = base^{il} d_l h
    const Eigen::MatrixXd b = base.coeff(x);
    const Eigen::VectorXd u = b * gradient(h1, x, h);
    const Eigen::VectorXd v = b * gradient(h2, x, h);
    return Eigen::MatrixXd(u * v.transpose() - v * u.transpose());
  };
  return out;
}

ChartBivector example1_bivector(Domain domain) {
  ChartBivector pi;
  pi.dim = 2;
  pi.coeff = [](const Point& x) { return planar(x(0)); };
  pi.derivative = [](const Point&) { return std::vector<Eigen::MatrixXd>{planar(1.0), planar(0.0)}; };
  pi.domain = std::move(domain);
  pi.closed_form = "p d_p^d_q";
  return pi;
}

ChartVector example1_field(Domain domain) {
  ChartVector v;
  v.dim = 2;
  v.coeff = [](const Point& x) { return Eigen::Vector2d(0.0, x(1)).eval(); };
  v.jacobian = [](const Point&) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
    j(1, 1) = 1.0;
    return j;
  };
  v.domain = std::move(domain);
  return v;
}

ChartBivector example2_bivector(Domain domain) {
  ChartBivector pi;
  pi.dim = 2;
  pi.coeff = [](const Point& x) { return planar(-0.5 * x(0) * std::sin(x(1))); };
  pi.derivative = [](const Point& x) {
    return std::vector<Eigen::MatrixXd>{planar(-0.5 * std::sin(x(1))),
                                        planar(-0.5 * x(0) * std::cos(x(1)))};
  };
  pi.domain = std::move(domain);
  pi.closed_form = "-(r/2) sin(phi) d_r^d_phi";
  return pi;
}

ChartVector example2_field(int sign, Domain domain) {
  ChartVector v;
  v.dim = 2;
  const double s = sign;
  v.coeff = [s](const Point& x) { return Eigen::Vector2d(s * x(0) * std::log(x(0)), 0.0).eval(); };
  v.jacobian = [s](const Point& x) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
    j(0, 0) = s * (std::log(x(0)) + 1.0);
    return j;
  };
  v.domain = std::move(domain);
  return v;
}

namespace {

// Basis E, F, H of sl(2, R); X = X01 E + X10 F + X00 H for traceless X.
Eigen::Vector3d sl2_coordinates(const Eigen::Matrix2d& x) { return {x(0, 1), x(1, 0), x(0, 0)}; }

Array3<double> sl2_structure_constants() {
  std::array<Eigen::Matrix2d, 3> e;
  e[0] << 0, 1, 0, 0;
  e[1] << 0, 0, 1, 0;
  e[2] << 1, 0, 0, -1;
  Array3<double> c(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Eigen::Vector3d k = sl2_coordinates(e[a] * e[b] - e[b] * e[a]);
      for (int i = 0; i < 3; ++i) c(a, b, i) = k(i);
    }
  return c;
}

}  // namespace

double example2_ambient_coefficient(double r, double phi) {
  static const Array3<double> structure = sl2_structure_constants();
  const double s = 1.0 / std::sqrt(2.0);  // sin(pi/4) = cos(pi/4)
  const Eigen::Vector3d x(r * std::cos(phi) * s, r * std::sin(phi) * s, r * s);
  Eigen::Matrix2d m;
  m << x(1), x(0) + x(2), x(0) - x(2), -x(1);
  // <xi, X> = tr(M X)
  const Eigen::VectorXd pairings = Eigen::Vector3d(m(1, 0), m(0, 1), m(0, 0) - m(1, 1));
  Eigen::MatrixXd rmat = Eigen::MatrixXd::Zero(3, 3);
  rmat(0, 1) = kSplitRCoefficient;
  rmat(1, 0) = -kSplitRCoefficient;
  const Eigen::MatrixXd p = r_bracket_matrix(kks_matrix(pairings, structure), rmat);

  // x1 = (f_E + f_F)/2, x2 = f_H/2, x3 = (f_F - f_E)/2
  Eigen::Matrix3d dx_df;
  dx_df << 0.5, 0.5, 0.0, 0.0, 0.0, 0.5, -0.5, 0.5, 0.0;
  const Eigen::Vector3d grad_r = x / x.norm();
  const double planar2 = x(0) * x(0) + x(1) * x(1);
  const Eigen::Vector3d grad_phi(-x(1) / planar2, x(0) / planar2, 0.0);
  const Eigen::Vector3d gr = dx_df.transpose() * grad_r;
  const Eigen::Vector3d gp = dx_df.transpose() * grad_phi;
  return gr.dot(p * gp);
}

int resolve_example2_sign(std::span<const Point> points, double tol) {
  const Domain dom = Domain::box(Eigen::Vector2d(0.2, 0.1), Eigen::Vector2d(3.0, kPi - 0.1));
  for (const int sign : {+1, -1}) {
    VaismanInstance inst{example2_bivector(dom), example2_field(sign, dom), zero_form(2, dom), {}, 0.05};
    if (vaisman_residual(inst, points) <= tol) return sign;
  }
  return 0;
}

Certification example1(int points, std::uint64_t seed) {
  Certification cert;
  cert.name = "example1";
  const Domain dom = Domain::box(Eigen::Vector2d(0.1, -3.0), Eigen::Vector2d(3.0, 3.0));

  ChartFunction canonical_p{[](const Point& x) { return x(0); },
                            [](const Point&) { return Eigen::Vector2d(1.0, 0.0).eval(); }, {}};
  ChartFunction h2{[](const Point& x) { return x(0) * x(1); },
                   [](const Point& x) { return Eigen::Vector2d(x(1), x(0)).eval(); }, {}};
  const ChartBivector canonical = constant_bivector(planar(1.0));
  const ChartBivector recipe = bivector_from_hamiltonians(canonical, canonical_p, h2);

  const double bracket = recipe.coeff(Eigen::Vector2d(2.0, 3.0))(0, 1);
  cert.checks.push_back({"bracket_pq_at_(2,3)", bracket, 2.0, bracket == 2.0});

  const auto pts = uniform_points({0.1, -3.0}, {3.0, 3.0}, points, seed);
  const ChartBivector pi = example1_bivector(dom);
  double recipe_err = 0.0;
  for (const auto& x : pts) {
    recipe_err = std::max(recipe_err, std::abs(recipe.coeff(x)(0, 1) - x(0)));
  }
  cert.checks.push_back({"recipe_bracket_equals_p", recipe_err, 0.0, recipe_err == 0.0});

  const double at_zero = recipe.coeff(Eigen::Vector2d(0.0, 1.7))(0, 1);
  const bool degenerate = std::abs(at_zero) < 1e-10;
  cert.checks.push_back({"degenerate_at_p=0", degenerate ? 1.0 : 0.0, 1.0, degenerate});

  VaismanInstance inst{pi, example1_field(dom), zero_form(2, dom),
                       [](const Point& x) { return std::abs(x(0)); }, 0.05};
  const double residual = vaisman_residual(inst, pts);
  cert.checks.push_back({"vaisman_residual", residual, 1e-8, residual <= 1e-8});

  const auto inner = uniform_points({0.2, -2.9}, {2.9, 2.9}, 20, seed + 100);
  const auto fns = random_test_functions(20, seed + 200);
  const double d2 = delta_squared_residual(pi, fns, inner);
  cert.checks.push_back({"delta_squared", d2, 1e-6, d2 <= 1e-6});

  cert.metadata = {{"pi", pi.closed_form},
                   {"X", "q d_q"},
                   {"omega", "0"},
                   {"domain", "[0.1,3]x[-3,3]"},
                   {"convention", "L_X pi = [[X, pi]]"}};
  return cert;
}

Certification example2(int points, std::uint64_t seed) {
  Certification cert;
  cert.name = "example2";
  const Domain dom = Domain::box(Eigen::Vector2d(0.2, 0.1), Eigen::Vector2d(3.0, kPi - 0.1));
  const ChartBivector pi = example2_bivector(dom);

  const double at_half = pi.coeff(Eigen::Vector2d(1.0, kPi / 2))(0, 1);
  cert.checks.push_back({"coefficient_at_(1,pi/2)", at_half, -0.5, std::abs(at_half + 0.5) <= 1e-15});

  const auto pts = uniform_points({0.2, 0.1}, {3.0, kPi - 0.1}, points, seed);
  double ambient_err = 0.0;
  for (const auto& x : pts) {
    ambient_err =
        std::max(ambient_err, std::abs(pi.coeff(x)(0, 1) - example2_ambient_coefficient(x(0), x(1))));
  }
  cert.checks.push_back({"ambient_r_bracket_cross_check", ambient_err, 1e-8, ambient_err <= 1e-8});

  const ChartBivector whole = example2_bivector(Domain::whole());
  const bool deg0 = std::abs(whole.coeff(Eigen::Vector2d(1.3, 0.0))(0, 1)) < 1e-10;
  const bool degpi = std::abs(whole.coeff(Eigen::Vector2d(1.3, kPi))(0, 1)) < 1e-10;
  cert.checks.push_back({"degenerate_at_phi=0", deg0 ? 1.0 : 0.0, 1.0, deg0});
  cert.checks.push_back({"degenerate_at_phi=pi", degpi ? 1.0 : 0.0, 1.0, degpi});

  const int sign = resolve_example2_sign(pts);
  cert.checks.push_back({"resolved_sign", static_cast<double>(sign), 1.0, sign != 0});
  const int used = sign == 0 ? 1 : sign;
  VaismanInstance inst{pi, example2_field(used, dom), zero_form(2, dom),
                       [](const Point& x) { return std::min(x(1), kPi - x(1)); }, 0.05};
  const double residual = vaisman_residual(inst, pts);
  cert.checks.push_back({"vaisman_residual", residual, 1e-8, residual <= 1e-8});

  VaismanInstance printed{pi, example2_field(-1, dom), zero_form(2, dom), {}, 0.05};
  const double printed_residual = vaisman_residual(printed, pts);

  const auto inner = uniform_points({0.3, 0.2}, {2.9, kPi - 0.2}, 20, seed + 100);
  const auto fns = random_test_functions(20, seed + 200);
  const double d2 = delta_squared_residual(pi, fns, inner);
  cert.checks.push_back({"delta_squared", d2, 1e-6, d2 <= 1e-6});

  cert.metadata = {{"pi", pi.closed_form},
                   {"X", std::string(used > 0 ? "+" : "-") + "r ln(r) d_r"},
                   {"resolved_sign", used > 0 ? "+1" : "-1"},
                   {"residual_with_X=-r_ln(r)_d_r", format_double(printed_residual)},
                   {"omega", "0"},
                   {"domain", "r in [0.2,3], phi in [0.1,pi-0.1]"},
                   {"split_r", "-1/4 E^F"},
                   {"convention", "L_X pi = [[X, pi]]"}};
  return cert;
}

LinearFit fit_linear(std::span<const double> basis, std::span<const double> y) {
  if (basis.size() != y.size() || y.size() < 2) throw ShapeError("fit_linear needs matching data");
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    a(k, 0) = basis[static_cast<std::size_t>(k)];
    a(k, 1) = 1.0;
    b(k) = y[static_cast<std::size_t>(k)];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  const double ss_res = (a * coef - b).squaredNorm();
  const double ss_tot = (b.array() - b.mean()).matrix().squaredNorm();
  return {coef(0), coef(1), ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

double degeneracy_radius(double lambda) { return std::sqrt(-lambda / (lambda + 2.0)); }

double obstruction_lhs_closed_form(double lambda, double xi) {
  const double xi2 = xi * xi;
  return -2.0 * kPi * std::log((lambda + (lambda + 2.0) * xi2) / ((lambda + 2.0) * (1.0 + xi2)));
}

double obstruction_lhs_quadrature(double lambda, double xi, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  const double u_star = degeneracy_radius(lambda) * degeneracy_radius(lambda);
  const double u0 = xi * xi;
  if (!(u0 > u_star)) throw DomainError("quadrature needs xi beyond the degeneracy radius");
  // s = 1 / (u - xi0^2) maps [xi^2, inf) onto [0, 1/(xi^2 - xi0^2)] and removes the pole.
  auto integrand = [u_star](double s) { return 1.0 / (1.0 + (1.0 + u_star) * s); };
  double err = 0.0;
  const double value =
      gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0 / (u0 - u_star), 20, rel_tol, &err);
  return 4.0 * kPi * value / (lambda + 2.0);
}

std::vector<double> default_xi_grid(double lambda) {
  const double xi0 = degeneracy_radius(lambda);
  std::vector<double> grid;
  for (const double d : kDefaultXiOffsets) grid.push_back(xi0 * (1.0 + d));
  return grid;
}

ObstructionResult cp1_obstruction(double lambda, std::span<const double> xi_grid) {
  if (!(lambda > -2.0 && lambda < 0.0)) {
    throw OutOfRange("cp1_obstruction needs lambda in (-2, 0), got " + format_double(lambda));
  }
  ObstructionResult out;
  out.lambda = lambda;
  out.xi0 = degeneracy_radius(lambda);
  out.method = "log-vs-polar fit";
  for (std::size_t k = 0; k < xi_grid.size(); ++k) {
    if (xi_grid[k] <= out.xi0) {
      throw DomainError("xi = " + format_double(xi_grid[k]) + " is not beyond xi0 = " +
                        format_double(out.xi0));
    }
    if (k > 0 && !(xi_grid[k] < xi_grid[k - 1])) {
      throw DomainError("xi grid must decrease strictly toward xi0");
    }
  }
  out.xi_grid.assign(xi_grid.begin(), xi_grid.end());
  std::vector<double> log_basis;
  std::vector<double> polar_basis;
  for (const double xi : xi_grid) {
    out.lhs_quadrature.push_back(obstruction_lhs_quadrature(lambda, xi));
    out.lhs_closed_form.push_back(obstruction_lhs_closed_form(lambda, xi));
    log_basis.push_back(std::log(xi - out.xi0));
    polar_basis.push_back(1.0 / (lambda + (lambda + 2.0) * xi * xi));
  }
  if (xi_grid.size() >= 2) {
    out.log_fit = fit_linear(log_basis, out.lhs_quadrature);
    out.polar_fit = fit_linear(polar_basis, out.lhs_quadrature);
  }
  out.quantizable = !(out.log_fit.r_squared > kLogFitThreshold);
  return out;
}

Verdict obstruction_verdict(double lambda) {
  if (lambda == 0.0 || lambda == -2.0) {
    // pi_0 vanishes on the small orbit, and pi_{-2} is its Weyl flip.
    return {lambda, false, "weyl-flip endpoint"};
  }
  const auto grid = default_xi_grid(lambda);
  const auto result = cp1_obstruction(lambda, grid);
  return {lambda, result.quantizable, result.method};
}

std::string to_string(const PrequantumConvention& c) {
  std::string s = c.grouping == XGrouping::Outside ? "F + (hbar/2pi i) c(F)" : "F + (hbar/2pi i)(c(F)";
  s += c.x_sign > 0 ? " + X(F)" : " - X(F)";
  if (c.grouping == XGrouping::Inside) s += ")";
  return s;
}

std::vector<PrequantumConvention> all_prequantum_conventions() {
  return {{XGrouping::Outside, +1}, {XGrouping::Outside, -1}, {XGrouping::Inside, +1},
          {XGrouping::Inside, -1}};
}

PrequantumConvention shipped_prequantum_convention() { return {XGrouping::Outside, -1}; }

namespace {

using Section = std::function<Complex(const Point&)>;

Eigen::VectorXcd section_gradient(const Section& s, const Point& x, double h) {
  Eigen::VectorXcd g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double step = h * std::max(1.0, std::abs(x(k)));
    Point xp = x;
    Point xm = x;
    xp(k) += step;
    xm(k) -= step;
    g(k) = (s(xp) - s(xm)) / (2.0 * step);
  }
  return g;
}

Section apply_prequantum(const ChartBivector& pi, const ChartVector& xfield, const ChartFunction& f,
                         double hbar, const PrequantumConvention& conv, double h, Section s) {
  const Complex k = hbar / (2.0 * kPi * Complex(0.0, 1.0));
  const Complex x_weight = conv.grouping == XGrouping::Outside ? Complex(conv.x_sign)
                                                               : k * static_cast<double>(conv.x_sign);
  return [=](const Point& x) {
    const Eigen::VectorXd grad_f = gradient(f, x, h);
    const Eigen::VectorXcd cf = (pi.coeff(x).transpose() * grad_f).cast<Complex>();
    const Complex multiplier = f.value(x) + x_weight * xfield.coeff(x).dot(grad_f);
    return multiplier * s(x) + k * (cf.transpose() * section_gradient(s, x, h))(0);
  };
}

std::vector<Section> test_sections(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Section> out;
  for (int n = 0; n < count; ++n) {
    const double a0 = unit(rng), a1 = unit(rng), b0 = 0.3 * unit(rng), b1 = 0.3 * unit(rng);
    out.push_back([=](const Point& x) {
      return std::exp(Complex(0.0, a0 * x(0) + a1 * x(1))) * (1.0 + b0 * x(0) + b1 * x(1));
    });
  }
  return out;
}

}  // namespace

double prequantum_commutator_check(const ChartBivector& pi, const ChartVector& xfield,
                                   const ChartFunction& f1, const ChartFunction& f2, double hbar,
                                   std::span<const Point> points,
                                   const PrequantumConvention& convention, double h) {
  const Complex inv_k = 2.0 * kPi * Complex(0.0, 1.0) / hbar;
  const ChartFunction bracket = poisson_bracket(pi, f1, f2, h);
  double worst = 0.0;
  for (const auto& s : test_sections(10, 17)) {
    const Section q2s = apply_prequantum(pi, xfield, f2, hbar, convention, h, s);
    const Section q1s = apply_prequantum(pi, xfield, f1, hbar, convention, h, s);
    const Section q1q2s = apply_prequantum(pi, xfield, f1, hbar, convention, h, q2s);
    const Section q2q1s = apply_prequantum(pi, xfield, f2, hbar, convention, h, q1s);
    const Section qbs = apply_prequantum(pi, xfield, bracket, hbar, convention, h, s);
    for (const auto& x : points) {
      const Complex diff = qbs(x) - inv_k * (q1q2s(x) - q2q1s(x));
      worst = std::max(worst, std::abs(diff));
    }
  }
  return worst;
}

PrequantumConvention select_prequantum_convention(double hbar) {
  const Domain dom = Domain::box(Eigen::Vector2d(0.1, -3.0), Eigen::Vector2d(3.0, 3.0));
  const ChartBivector pi = example1_bivector(dom);
  const ChartVector xfield = example1_field(dom);
  const ChartFunction p{[](const Point& x) { return x(0); }, {}, {}};
  const ChartFunction q{[](const Point& x) { return x(1); }, {}, {}};
  const auto pts = uniform_points({0.5, -2.0}, {2.5, 2.0}, 5, 11);
  PrequantumConvention best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (const auto& conv : all_prequantum_conventions()) {
    const double r = prequantum_commutator_check(pi, xfield, p, q, hbar, pts, conv);
    if (r < best_residual) {
      best_residual = r;
      best = conv;
    }
  }
  return best;
}

}  // namespace rpencil
