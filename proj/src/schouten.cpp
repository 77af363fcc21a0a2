#include "rpencil/schouten.hpp"

#include <algorithm>
#include <sstream>

namespace rpencil {

namespace {

std::string describe(const Point& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x(k);
  os << ")";
  return os.str();
}

void require_inside(const Domain& dom, const Point& x) {
  if (!dom.contains(x)) throw DomainError("point " + describe(x) + " is outside the chart domain");
}

template <typename Fn>
auto central_difference(const Fn& fn, const Point& x, Eigen::Index k, double h, const Domain& dom) {
  using Result = std::decay_t<decltype(fn(x))>;
  const double step = h * std::max(1.0, std::abs(x(k)));
  Point xp = x;
  Point xm = x;
  xp(k) += step;
  xm(k) -= step;
  if (!dom.contains(xp) || !dom.contains(xm)) {
    throw DomainError("finite-difference stencil at " + describe(x) + " leaves the chart domain");
  }
  Result out = fn(xp);
  out -= fn(xm);
  out /= 2.0 * step;
  return out;
}

void check_dim(int expected, const Point& x, const char* what) {
  if (x.size() != expected) throw ShapeError(std::string(what) + ": point has the wrong dimension");
}

Eigen::MatrixXd lie_derivative(const ChartVector& v, const ChartBivector& pi, const Point& x,
                               double h) {
  if (v.dim != pi.dim) throw ShapeError("vector and bivector live on different charts");
  const Eigen::VectorXd xv = v.coeff(x);
  const Eigen::MatrixXd p = pi.coeff(x);
  const Eigen::MatrixXd jv = jacobian(v, x, h);
  const auto dp = derivatives(pi, x, h);
  Eigen::MatrixXd out = -jv * p - p * jv.transpose();
  for (int k = 0; k < pi.dim; ++k) out += xv(k) * dp[static_cast<std::size_t>(k)];
  return kLieDerivativeSign * out;
}

Array3<double> bivector_bracket(const ChartBivector& pi, const ChartBivector& sigma, const Point& x,
                                double h) {
  if (pi.dim != sigma.dim) throw ShapeError("bivectors live on different charts");
  const int d = pi.dim;
  const Eigen::MatrixXd p = pi.coeff(x);
  const Eigen::MatrixXd s = sigma.coeff(x);
  const auto dp = derivatives(pi, x, h);
  const auto ds = derivatives(sigma, x, h);
  auto term = [&](int i, int j, int k) {
    double acc = 0.0;
    for (int l = 0; l < d; ++l) {
      acc += p(i, l) * ds[static_cast<std::size_t>(l)](j, k) +
             s(i, l) * dp[static_cast<std::size_t>(l)](j, k);
    }
    return acc;
  };
  Array3<double> out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out(i, j, k) = term(i, j, k) + term(j, k, i) + term(k, i, j);
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Domain Domain::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() != hi.size()) throw ShapeError("box bounds differ in dimension");
  Domain d;
  d.kind = Kind::Box;
  d.lower = std::move(lo);
  d.upper = std::move(hi);
  return d;
}

Domain Domain::annulus(double r_min, double r_max) {
  Domain d;
  d.kind = Kind::Annulus;
  d.r_min = r_min;
  d.r_max = r_max;
  return d;
}

bool Domain::contains(const Point& x) const {
  switch (kind) {
    case Kind::Whole:
      return x.allFinite();
    case Kind::Box:
      return x.size() == lower.size() && (x.array() >= lower.array()).all() &&
             (x.array() <= upper.array()).all();
    case Kind::Annulus: {
      if (x.size() != 2) return false;
      const double r = x.norm();
      return r >= r_min && r <= r_max;
    }
  }
  return false;
}

ChartBivector constant_bivector(const Eigen::MatrixXd& pi, Domain domain) {
  ChartBivector out;
  out.dim = static_cast<int>(pi.rows());
  out.coeff = [pi](const Point&) { return pi; };
  out.derivative = [pi](const Point&) {
    return std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(pi.rows()),
                                        Eigen::MatrixXd::Zero(pi.rows(), pi.cols()));
  };
  out.domain = std::move(domain);
  out.closed_form = "constant";
  return out;
}

ChartForm2 zero_form(int dim, Domain domain) {
  return {dim, [dim](const Point&) { return Eigen::MatrixXd::Zero(dim, dim).eval(); },
          std::move(domain)};
}

ChartVector zero_vector(int dim, Domain domain) {
  ChartVector v;
  v.dim = dim;
  v.coeff = [dim](const Point&) { return Eigen::VectorXd::Zero(dim).eval(); };
  v.jacobian = [dim](const Point&) { return Eigen::MatrixXd::Zero(dim, dim).eval(); };
  v.domain = std::move(domain);
  return v;
}

Eigen::VectorXd gradient(const ChartFunction& f, const Point& x, double h) {
  require_inside(f.domain, x);
  if (f.gradient) return f.gradient(x);
  Eigen::VectorXd g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) g(k) = central_difference(f.value, x, k, h, f.domain);
  return g;
}

Eigen::MatrixXd jacobian(const ChartVector& v, const Point& x, double h) {
  check_dim(v.dim, x, "jacobian");
  require_inside(v.domain, x);
  if (v.jacobian) return v.jacobian(x);
  Eigen::MatrixXd j(v.dim, v.dim);
  for (int k = 0; k < v.dim; ++k) j.col(k) = central_difference(v.coeff, x, k, h, v.domain);
  return j;
}

std::vector<Eigen::MatrixXd> derivatives(const ChartBivector& pi, const Point& x, double h) {
  check_dim(pi.dim, x, "derivatives");
  require_inside(pi.domain, x);
  if (pi.derivative) return pi.derivative(x);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(pi.dim));
  for (int k = 0; k < pi.dim; ++k) out.push_back(central_difference(pi.coeff, x, k, h, pi.domain));
  return out;
}

Eigen::VectorXd hamiltonian_vector(const ChartBivector& pi, const ChartFunction& f, const Point& x,
                                   double h) {
  check_dim(pi.dim, x, "hamiltonian_vector");
  require_inside(pi.domain, x);
  return pi.coeff(x).transpose() * gradient(f, x, h);
}

ChartVector hamiltonian_field(const ChartBivector& pi, const ChartFunction& f, double h) {
  ChartVector v;
  v.dim = pi.dim;
  v.coeff = [pi, f, h](const Point& x) { return hamiltonian_vector(pi, f, x, h); };
  v.domain = pi.domain;
  return v;
}

ChartFunction poisson_bracket(const ChartBivector& pi, const ChartFunction& f,
                              const ChartFunction& g, double h) {
  ChartFunction out;
  out.value = [pi, f, g, h](const Point& x) {
    return gradient(f, x, h).dot(pi.coeff(x) * gradient(g, x, h));
  };
  out.domain = pi.domain;
  return out;
}

MultivectorValue schouten_bracket(const Multivector& a, const Multivector& b, const Point& x,
                                  double h) {
  return std::visit(
      Overloaded{
          [](const ChartFunction&, const ChartFunction&) -> MultivectorValue { return 0.0; },
          [&](const ChartVector& v, const ChartFunction& f) -> MultivectorValue {
            return v.coeff(x).dot(gradient(f, x, h));
          },
          [&](const ChartFunction& f, const ChartVector& v) -> MultivectorValue {
            return -v.coeff(x).dot(gradient(f, x, h));
          },
          [&](const ChartBivector& pi, const ChartFunction& f) -> MultivectorValue {
            return hamiltonian_vector(pi, f, x, h);
          },
          [&](const ChartFunction& f, const ChartBivector& pi) -> MultivectorValue {
            return hamiltonian_vector(pi, f, x, h);
          },
          [&](const ChartVector& u, const ChartVector& v) -> MultivectorValue {
            if (u.dim != v.dim) throw ShapeError("vectors live on different charts");
            return Eigen::VectorXd(jacobian(v, x, h) * u.coeff(x) - jacobian(u, x, h) * v.coeff(x));
          },
          [&](const ChartVector& v, const ChartBivector& pi) -> MultivectorValue {
            return lie_derivative(v, pi, x, h);
          },
          [&](const ChartBivector& pi, const ChartVector& v) -> MultivectorValue {
            return Eigen::MatrixXd(-lie_derivative(v, pi, x, h));
          },
          [&](const ChartBivector& pi, const ChartBivector& sigma) -> MultivectorValue {
            return bivector_bracket(pi, sigma, x, h);
          },
      },
      a, b);
}

Array3<double> schouten_square(const ChartBivector& pi, const Point& x, double h) {
  return bivector_bracket(pi, pi, x, h);
}

double jacobiator(const ChartBivector& pi, const Point& x, double h) {
  return component_norm(schouten_square(pi, x, h));
}

Eigen::MatrixXd lie_derivative_bivector(const ChartVector& v, const ChartBivector& pi,
                                        const Point& x, double h) {
  return lie_derivative(v, pi, x, h);
}

MultivectorValue poisson_differential(const ChartBivector& pi,
                                      const std::variant<ChartFunction, ChartVector>& a,
                                      const Point& x, double h) {
  return std::visit(
      [&](const auto& field) { return schouten_bracket(Multivector{pi}, Multivector{field}, x, h); },
      a);
}

Eigen::MatrixXd p_map(const ChartBivector& pi, const ChartForm2& omega, const Point& x) {
  if (pi.dim != omega.dim) throw ShapeError("bivector and form live on different charts");
  require_inside(pi.domain, x);
  const Eigen::MatrixXd p = pi.coeff(x);
  return p * omega.coeff(x) * p.transpose();
}

Eigen::MatrixXd p_inverse(const ChartBivector& pi, const Point& x, double cutoff) {
  if (pi.dim != 2) throw ShapeError("p_inverse is implemented for 2D charts only");
  require_inside(pi.domain, x);
  const double c = pi.coeff(x)(0, 1);
  if (std::abs(c) < cutoff) {
    throw DegeneratePoint("bivector degenerates at " + describe(x));
  }
  Eigen::MatrixXd w(2, 2);
  w << 0.0, 1.0 / c, -1.0 / c, 0.0;
  return w;
}

double closedness_residual(const ChartForm2& omega, const Point& x, double h) {
  check_dim(omega.dim, x, "closedness_residual");
  require_inside(omega.domain, x);
  const int d = omega.dim;
  std::vector<Eigen::MatrixXd> dw;
  for (int k = 0; k < d; ++k) dw.push_back(central_difference(omega.coeff, x, k, h, omega.domain));
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const double v = dw[static_cast<std::size_t>(i)](j, k) +
                         dw[static_cast<std::size_t>(j)](k, i) +
                         dw[static_cast<std::size_t>(k)](i, j);
        s += v * v;
      }
  return std::sqrt(s);
}

double component_norm(const Eigen::MatrixXd& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

double component_norm(const Array3<double>& t) {
  double s = 0.0;
  const Eigen::Index d = t.size();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      for (Eigen::Index k = j + 1; k < d; ++k) s += t(i, j, k) * t(i, j, k);
  return std::sqrt(s);
}

}  // namespace rpencil
