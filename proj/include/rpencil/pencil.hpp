#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rpencil/lie_core.hpp"
#include "rpencil/rmatrix.hpp"
#include "rpencil/schouten.hpp"

namespace rpencil {

/// Point of k* represented, through the trace form, by an anti-hermitian traceless matrix.
struct CoalgebraPoint {
  ComplexMatrix xi;
};

/// Basis, r-matrices and structure constants of one orbit K / K_p.
struct PencilSetup {
  LieBasis basis;
  RealTensor2 r_o;
  RealTensor2 r_p;
  Array3<double> structure;

  int m() const { return static_cast<int>(basis.parabolic.size()); }
};

PencilSetup make_pencil_setup(int rank, std::span<const Root> dp);

/// CP^n: parabolic roots (1, j), j = 2..n+1.
std::vector<Root> projective_space_roots(int n);

/// P_ab = <xi, [e_a, e_b]> from the pairings xi_c = <xi, e_c> and structure constants.
Eigen::MatrixXd kks_matrix(const Eigen::VectorXd& pairings, const Array3<double>& structure);
Eigen::MatrixXd kks_matrix(const CoalgebraPoint& xi, const LieBasis& basis);

/// P^r_ab = sum_st r^{st} <xi, [e_s, e_a]> <xi, [e_t, e_b]>, i.e. K^T r K with K the KKS matrix.
Eigen::MatrixXd r_bracket_matrix(const Eigen::MatrixXd& kks, const Eigen::MatrixXd& r);
Eigen::MatrixXd r_bracket_matrix(const CoalgebraPoint& xi, const RealTensor2& r,
                                 const LieBasis& basis);

struct PencilPoint {
  GroupElement g;
  double lambda = 0.0;
};

/// Left-trivialized pencil r_o - Ad_{g^-1} r_o + lambda r_p.
RealTensor2 pencil_tensor(const PencilPoint& p, const RealTensor2& r_o, const RealTensor2& r_p,
                          const LieBasis& basis);

/// Leading 2m x 2m block of the coefficient matrix.
Eigen::MatrixXd leading_block(const RealTensor2& t, int m);

/// Number of singular values of the leading 2m x 2m block above tol * max(sigma_max, scale).
int leading_minor_rank(const RealTensor2& t, int m, double tol, double scale = 1.0);

/// Pfaffian of an even-dimensional antisymmetric matrix.
double pfaffian(const Eigen::MatrixXd& a);

/// || 16 Ad_g^T R_o Ad_g R_p ||_2.
double spectral_bound(const GroupElement& g, const RealTensor2& r_o, const RealTensor2& r_p,
                      const LieBasis& basis);

struct PencilWitness {
  double sweep_angle = 0.0;  // angle of exp(s V_alpha) along the small-orbit sweep, or NaN
  std::string source;        // "identity", "longest", "sweep", "haar"
  std::optional<double> z_abs2;  // |z|^2 of the witness on CP^1
};

struct PencilRow {
  double lambda = 0.0;
  int min_rank = 0;
  double max_bound = 0.0;
  bool degenerate = false;
  std::optional<PencilWitness> witness;
};

struct PencilReport {
  std::vector<double> lambda_grid;
  std::vector<PencilRow> rows;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  int orbit_dim = 0;
  int sweep_points = 0;
};

struct ScanOptions {
  int sample_count = 100;
  std::uint64_t seed = 7;
  double rank_tol = 1e-9;
  int sweep_points = 512;
};

/// Ranks of the pencil on Haar samples, the identity, the longest Weyl element and a
/// root-located sweep through the small orbit of K_alpha for the first simple root in dp.
PencilReport degeneracy_scan(const PencilSetup& setup, std::span<const double> lambda_grid,
                             const ScanOptions& options);

/// Orbit-direction norm of (l_w)_* pi_lambda(g) + pi_{-(lambda+2)}(g).
double weyl_flip_residual(const GroupElement& g, double lambda, const RealTensor2& r_o,
                          const RealTensor2& r_p, const LieBasis& basis);

/// CP^1 chart z = x + iy: coefficient 1/4 (1+|z|^2)(lambda + (lambda+2)|z|^2) of d_x ^ d_y.
ChartBivector cp1_chart_bivector(double lambda);

double cp1_chart_coefficient(double lambda, double x, double y);

/// Stereographic image of Ad_g(base point) on CP^1; the base point maps to 0.
/// Empty at the antipode.
std::optional<Complex> cp1_coordinate(const LieBasis& su2_basis, const GroupElement& g);

struct CrossCheck {
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  bool agree() const { return disagreements == 0; }
};

/// Compares the group-level rank verdict with the chart verdict at corresponding points.
CrossCheck cross_check_group_vs_chart(double lambda, std::span<const GroupElement> samples,
                                      double tol = 1e-9);

}  // namespace rpencil
