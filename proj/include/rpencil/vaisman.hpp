#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rpencil/schouten.hpp"

namespace rpencil {

/// (pi, X, omega) for the relation pi + L_X pi = P(omega).
struct VaismanInstance {
  ChartBivector pi;
  ChartVector x;
  ChartForm2 omega;
  std::function<double(const Point&)> degeneracy_distance;  // optional
  double excision = 0.05;
};

/// max over points of the component norm of pi + L_X pi - P(omega).
double vaisman_residual(const VaismanInstance& inst, std::span<const Point> points,
                        double h = kDefaultStep);

/// max over functions and points of || delta(delta f) ||.
double delta_squared_residual(const ChartBivector& pi, std::span<const ChartFunction> functions,
                              std::span<const Point> points, double h = kDefaultStep);

/// Smooth seeded test functions a sin(b x0 + c x1) + d x0 x1 + e x0^2 on a 2D chart.
std::vector<ChartFunction> random_test_functions(int count, std::uint64_t seed);

std::vector<Point> uniform_points(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int count,
                                  std::uint64_t seed);

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct Certification {
  std::string name;
  std::vector<CheckRecord> checks;
  std::vector<std::pair<std::string, std::string>> metadata;

  bool passed() const;
  const CheckRecord& check(const std::string& name) const;
};

/// {f1, f2}_new = {f1, h1}{f2, h2} - {f1, h2}{f2, h1} over the bracket `base`.
ChartBivector bivector_from_hamiltonians(const ChartBivector& base, const ChartFunction& h1,
                                         const ChartFunction& h2, double h = kDefaultStep);

/// p d_p ^ d_q on (p, q), closed form.
ChartBivector example1_bivector(Domain domain = Domain::whole());
ChartVector example1_field(Domain domain = Domain::whole());

/// -(r/2) sin(phi) d_r ^ d_phi on (r, phi), closed form.
ChartBivector example2_bivector(Domain domain);

/// sign * r ln(r) d_r.
ChartVector example2_field(int sign, Domain domain);

/// {r, phi} on the cone theta = pi/4 from the r-bracket of sl(2, R)*.
double example2_ambient_coefficient(double r, double phi);

/// Coefficient of E ^ F in the split real r-matrix used for sl(2, R).
inline constexpr double kSplitRCoefficient = -0.25;

/// Sign s of X = s r ln r d_r solving pi + L_X pi = 0 on the sampled points, or 0 if neither does.
int resolve_example2_sign(std::span<const Point> points, double tol = 1e-8);

Certification example1(int points = 50, std::uint64_t seed = 1);
Certification example2(int points = 50, std::uint64_t seed = 2);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares y ~ slope * basis + intercept.
LinearFit fit_linear(std::span<const double> basis, std::span<const double> y);

struct ObstructionResult {
  double lambda = 0.0;
  double xi0 = 0.0;
  std::vector<double> xi_grid;
  std::vector<double> lhs_quadrature;
  std::vector<double> lhs_closed_form;
  LinearFit log_fit;    // lhs ~ a ln(xi - xi0) + b
  LinearFit polar_fit;  // lhs ~ a / (lambda + (lambda+2) xi^2) + b
  bool quantizable = true;
  std::string method;
};

/// sqrt(-lambda / (lambda + 2)), the radius of the degeneracy circle.
double degeneracy_radius(double lambda);

/// -2 pi ln[(lambda + (lambda+2) xi^2) / ((lambda+2)(1 + xi^2))].
double obstruction_lhs_closed_form(double lambda, double xi);

/// 4 pi int_{xi^2}^inf du / ((1+u)(lambda + (lambda+2) u)) by adaptive Gauss-Kronrod
/// after s = 1 / (u - xi0^2).
double obstruction_lhs_quadrature(double lambda, double xi, double rel_tol = 1e-12);

inline constexpr std::array<double, 5> kDefaultXiOffsets{0.1, 0.05, 0.01, 0.005, 0.001};

/// xi0 (1 + d) for d in kDefaultXiOffsets.
std::vector<double> default_xi_grid(double lambda);

/// Throws OutOfRange unless lambda in (-2, 0) and DomainError if some xi <= xi0.
ObstructionResult cp1_obstruction(double lambda, std::span<const double> xi_grid);

inline constexpr double kLogFitThreshold = 0.999;

struct Verdict {
  double lambda = 0.0;
  bool quantizable = true;
  std::string method;
};

/// Obstruction verdict on [-2, 0]; the endpoints go through the Weyl flip.
Verdict obstruction_verdict(double lambda);

/// Where X(F) sits in F^ = F + (hbar/2 pi i) c(F) + X(F).
enum class XGrouping { Outside, Inside };

struct PrequantumConvention {
  XGrouping grouping = XGrouping::Outside;
  int x_sign = 1;

  friend bool operator==(const PrequantumConvention&, const PrequantumConvention&) = default;
};

std::string to_string(const PrequantumConvention& c);

std::vector<PrequantumConvention> all_prequantum_conventions();

/// Outside grouping with X(F) entering as -X(F), i.e. F^ = F - X(F) + (hbar/2 pi i) c(F).
PrequantumConvention shipped_prequantum_convention();

/// max |{f1,f2}^ s - (2 pi i / hbar)[f1^, f2^] s| over 10 seeded test sections and the points.
double prequantum_commutator_check(const ChartBivector& pi, const ChartVector& x,
                                   const ChartFunction& f1, const ChartFunction& f2, double hbar,
                                   std::span<const Point> points,
                                   const PrequantumConvention& convention,
                                   double h = kDefaultStep);

/// Convention with the smallest residual on Example 1 with (f1, f2) = (p, q).
PrequantumConvention select_prequantum_convention(double hbar = 1.0);

}  // namespace rpencil
