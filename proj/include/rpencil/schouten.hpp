#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "rpencil/types.hpp"

namespace rpencil {

using Point = Eigen::VectorXd;

/// Where chart fields may be evaluated.
struct Domain {
  enum class Kind { Whole, Box, Annulus };

  Kind kind = Kind::Whole;
  Eigen::VectorXd lower;  // Box
  Eigen::VectorXd upper;  // Box
  double r_min = 0.0;     // Annulus, 2D, centred at the origin
  double r_max = 0.0;

  static Domain whole() { return {}; }
  static Domain box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  static Domain annulus(double r_min, double r_max);

  bool contains(const Point& x) const;
};

struct ChartFunction {
  std::function<double(const Point&)> value;
  std::function<Eigen::VectorXd(const Point&)> gradient;  // optional closed form
  Domain domain;
};

struct ChartVector {
  int dim = 0;
  std::function<Eigen::VectorXd(const Point&)> coeff;
  std::function<Eigen::MatrixXd(const Point&)> jacobian;  // optional: (i, k) = d_k X^i
  Domain domain;
};

/// pi = sum_{i<j} pi^{ij} d_i ^ d_j; `coeff` returns the antisymmetric matrix pi^{ij}.
struct ChartBivector {
  int dim = 0;
  std::function<Eigen::MatrixXd(const Point&)> coeff;
  std::function<std::vector<Eigen::MatrixXd>(const Point&)> derivative;  // optional: [k] = d_k pi
  Domain domain;
  std::string closed_form;
};

struct ChartForm2 {
  int dim = 0;
  std::function<Eigen::MatrixXd(const Point&)> coeff;
  Domain domain;
};

using Multivector = std::variant<ChartFunction, ChartVector, ChartBivector>;

/// Degree 0, 1, 2 or 3 value of a multivector at a point.
using MultivectorValue = std::variant<double, Eigen::VectorXd, Eigen::MatrixXd, Array3<double>>;

inline constexpr double kDefaultStep = 1e-4;

/// Sign convention shared by every bracket in this module: [[X, pi]] = L_X pi
/// with (L_X pi)^{ij} = X^k d_k pi^{ij} - pi^{kj} d_k X^i - pi^{ik} d_k X^j, and
/// [[pi, f]] = c(f) so that the Poisson differential is [[pi, .]] in degrees 0 and 1.
/// Under it, pi = p d_p ^ d_q and X = q d_q give pi + L_X pi = 0.
inline constexpr int kLieDerivativeSign = +1;

ChartBivector constant_bivector(const Eigen::MatrixXd& pi, Domain domain = Domain::whole());
ChartForm2 zero_form(int dim, Domain domain = Domain::whole());
ChartVector zero_vector(int dim, Domain domain = Domain::whole());

Eigen::VectorXd gradient(const ChartFunction& f, const Point& x, double h = kDefaultStep);
Eigen::MatrixXd jacobian(const ChartVector& v, const Point& x, double h = kDefaultStep);
std::vector<Eigen::MatrixXd> derivatives(const ChartBivector& pi, const Point& x,
                                         double h = kDefaultStep);

/// c(f)^i = pi^{ji} d_j f, so that c(f) g = {f, g} = pi(df, dg).
Eigen::VectorXd hamiltonian_vector(const ChartBivector& pi, const ChartFunction& f, const Point& x,
                                   double h = kDefaultStep);

/// c(f) as a field, evaluated lazily by finite differences.
ChartVector hamiltonian_field(const ChartBivector& pi, const ChartFunction& f,
                              double h = kDefaultStep);

/// {f, g} = pi(df, dg) as a chart function.
ChartFunction poisson_bracket(const ChartBivector& pi, const ChartFunction& f,
                              const ChartFunction& g, double h = kDefaultStep);

MultivectorValue schouten_bracket(const Multivector& a, const Multivector& b, const Point& x,
                                  double h = kDefaultStep);

/// [[pi, pi]] as a totally antisymmetric 3-array.
Array3<double> schouten_square(const ChartBivector& pi, const Point& x, double h = kDefaultStep);

/// Norm of [[pi, pi]] over independent components i < j < k.
double jacobiator(const ChartBivector& pi, const Point& x, double h = kDefaultStep);

Eigen::MatrixXd lie_derivative_bivector(const ChartVector& v, const ChartBivector& pi,
                                        const Point& x, double h = kDefaultStep);

/// delta f = c(f), delta X = [[pi, X]].
MultivectorValue poisson_differential(const ChartBivector& pi,
                                      const std::variant<ChartFunction, ChartVector>& a,
                                      const Point& x, double h = kDefaultStep);

/// P(omega)^{ij} = pi^{ik} omega_{kl} pi^{jl}.
Eigen::MatrixXd p_map(const ChartBivector& pi, const ChartForm2& omega, const Point& x);

/// The 2-form with P(omega) = pi; 2D charts only. Throws DegeneratePoint when |pi^{12}| < cutoff.
Eigen::MatrixXd p_inverse(const ChartBivector& pi, const Point& x, double cutoff = 1e-10);

/// Norm of d(omega) over components i < j < k.
double closedness_residual(const ChartForm2& omega, const Point& x, double h = kDefaultStep);

/// sqrt(sum_{i<j} m_ij^2).
double component_norm(const Eigen::MatrixXd& m);

/// sqrt(sum_{i<j<k} t_ijk^2).
double component_norm(const Array3<double>& t);

}  // namespace rpencil
