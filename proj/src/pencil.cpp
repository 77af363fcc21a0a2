#include "rpencil/pencil.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <limits>
#include <numbers>

namespace rpencil {

PencilSetup make_pencil_setup(int rank, std::span<const Root> dp) {
  PencilSetup s;
  s.basis = make_basis(rank, dp);
  s.r_o = compact_r(s.basis);
  s.r_p = parabolic_r(s.basis);
  s.structure = compact_structure_constants(s.basis);
  return s;
}

std::vector<Root> projective_space_roots(int n) {
  std::vector<Root> out;
  for (int j = 1; j <= n; ++j) out.push_back({0, j});
  return out;
}

Eigen::MatrixXd kks_matrix(const Eigen::VectorXd& pairings, const Array3<double>& structure) {
  const Eigen::Index d = structure.size();
  if (pairings.size() != d) throw ShapeError("kks_matrix: pairing vector does not match the basis");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index c = 0; c < d; ++c) p(a, b) += pairings(c) * structure(a, b, c);
  return p;
}

Eigen::MatrixXd kks_matrix(const CoalgebraPoint& xi, const LieBasis& basis) {
  if ((xi.xi + xi.xi.adjoint()).norm() > 1e-10) {
    throw DomainError("coalgebra point must be anti-hermitian");
  }
  return kks_matrix(compact_coordinates(basis, xi.xi), compact_structure_constants(basis));
}

Eigen::MatrixXd r_bracket_matrix(const Eigen::MatrixXd& kks, const Eigen::MatrixXd& r) {
  if (kks.rows() != r.rows() || kks.cols() != r.cols()) {
    throw ShapeError("r_bracket_matrix: dimension mismatch");
  }
  return kks.transpose() * r * kks;
}

Eigen::MatrixXd r_bracket_matrix(const CoalgebraPoint& xi, const RealTensor2& r,
                                 const LieBasis& basis) {
  if (r.basis != BasisKind::Compact) throw ShapeError("r must be over the compact basis");
  return r_bracket_matrix(kks_matrix(xi, basis), r.coeff);
}

RealTensor2 pencil_tensor(const PencilPoint& p, const RealTensor2& r_o, const RealTensor2& r_p,
                          const LieBasis& basis) {
  RealTensor2 out = ad_tensor2(p.g.inverse(), r_o, basis);
  out.coeff = r_o.coeff - out.coeff + p.lambda * r_p.coeff;
  return out;
}

Eigen::MatrixXd leading_block(const RealTensor2& t, int m) {
  if (m < 0 || 2 * m > t.dim()) throw ShapeError("leading block larger than the tensor");
  return t.coeff.topLeftCorner(2 * m, 2 * m);
}

int leading_minor_rank(const RealTensor2& t, int m, double tol, double scale) {
  if (m == 0) return 0;
  const Eigen::MatrixXd block = leading_block(t, m);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(block).singularValues();
  const double threshold = tol * std::max(sv(0), scale);
  return static_cast<int>((sv.array() > threshold).count());
}

double pfaffian(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols() || n % 2 != 0) throw ShapeError("pfaffian needs an even square matrix");
  if (n == 0) return 1.0;
  // Expansion along the first row.
  double acc = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (a(0, j) == 0.0) continue;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    Eigen::MatrixXd minor(n - 2, n - 2);
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c)
        minor(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(keep[r], keep[c]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * a(0, j) * pfaffian(minor);
  }
  return acc;
}

double spectral_bound(const GroupElement& g, const RealTensor2& r_o, const RealTensor2& r_p,
                      const LieBasis& basis) {
  const Eigen::MatrixXd ad = adjoint_matrix(basis, g);
  const Eigen::MatrixXd m = 16.0 * ad.transpose() * r_o.coeff * ad * r_p.coeff;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

namespace {

struct Probe {
  GroupElement g;
  Eigen::MatrixXd base;  // r_o - Ad_{g^-1} r_o
  std::string source;
  double angle = std::numeric_limits<double>::quiet_NaN();
};

Eigen::MatrixXd pencil_base(const PencilSetup& s, const GroupElement& g) {
  return s.r_o.coeff - ad_tensor2(g.inverse(), s.r_o, s.basis).coeff;
}

Root sweep_root(const PencilSetup& s) {
  for (const auto& r : s.basis.parabolic)
    if (r.simple()) return r;
  return s.basis.parabolic.front();
}

}  // namespace

PencilReport degeneracy_scan(const PencilSetup& setup, std::span<const double> lambda_grid,
                             const ScanOptions& options) {
  const int m = setup.m();
  if (m == 0) throw ShapeError("degeneracy_scan needs a non-empty parabolic root set");
  if (options.sample_count < 1) throw OutOfRange("sample count must be positive");

  const LieBasis& basis = setup.basis;
  const int n = basis.matrix_size();
  const bool is_cp1 = basis.roots.rank == 1;

  std::vector<Probe> probes;
  auto add_probe = [&](GroupElement g, std::string source, double angle) {
    Eigen::MatrixXd base = pencil_base(setup, g);
    probes.push_back({std::move(g), std::move(base), std::move(source), angle});
  };
  add_probe(GroupElement::identity(n), "identity", std::numeric_limits<double>::quiet_NaN());
  add_probe(longest_weyl_representative(basis.roots), "longest",
            std::numeric_limits<double>::quiet_NaN());
  std::mt19937_64 rng(options.seed);
  for (int k = 0; k < options.sample_count; ++k) {
    add_probe(random_group_element(n, rng), "haar", std::numeric_limits<double>::quiet_NaN());
  }
  const std::size_t fixed_count = probes.size();

  const Root alpha = sweep_root(setup);
  auto sweep_base = [&](double s) {
    return pencil_base(setup, root_rotation(basis.roots, alpha, s));
  };
  std::vector<double> angles;
  std::vector<Eigen::MatrixXd> sweep_bases;
  for (int k = 0; k <= options.sweep_points; ++k) {
    const double s = std::numbers::pi * k / options.sweep_points;
    angles.push_back(s);
    sweep_bases.push_back(sweep_base(s));
  }

  double max_bound = 0.0;
  for (std::size_t k = 0; k < fixed_count; ++k) {
    max_bound = std::max(max_bound, spectral_bound(probes[k].g, setup.r_o, setup.r_p, basis));
  }

  PencilReport report;
  report.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  report.samples = options.sample_count;
  report.seed = options.seed;
  report.tolerance = options.rank_tol;
  report.orbit_dim = 2 * m;
  report.sweep_points = options.sweep_points;

  auto rank_of = [&](const Eigen::MatrixXd& base, double lambda) {
    RealTensor2 t{BasisKind::Compact, base + lambda * setup.r_p.coeff};
    return leading_minor_rank(t, m, options.rank_tol);
  };
  auto pf_of = [&](const Eigen::MatrixXd& base, double lambda) {
    return pfaffian((base + lambda * setup.r_p.coeff).topLeftCorner(2 * m, 2 * m));
  };
  auto witness_for = [&](const GroupElement& g, const std::string& source, double angle) {
    PencilWitness w;
    w.source = source;
    w.sweep_angle = angle;
    if (is_cp1) {
      const auto z = cp1_coordinate(basis, g);
      w.z_abs2 = z ? std::norm(*z) : std::numeric_limits<double>::infinity();
    }
    return w;
  };

  for (const double lambda : lambda_grid) {
    PencilRow row;
    row.lambda = lambda;
    row.max_bound = max_bound;
    row.min_rank = 2 * m;
    auto record = [&](int rank, const GroupElement& g, const std::string& source, double angle) {
      if (rank < row.min_rank) row.min_rank = rank;
      if (rank < 2 * m && !row.witness) row.witness = witness_for(g, source, angle);
    };

    for (std::size_t k = 0; k < 2; ++k) {
      record(rank_of(probes[k].base, lambda), probes[k].g, probes[k].source, probes[k].angle);
    }

    std::vector<double> pf(angles.size());
    for (std::size_t k = 0; k < angles.size(); ++k) {
      pf[k] = pf_of(sweep_bases[k], lambda);
      const int rank = rank_of(sweep_bases[k], lambda);
      if (rank < 2 * m) {
        record(rank, root_rotation(basis.roots, alpha, angles[k]), "sweep", angles[k]);
      }
    }
    for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
      if (!(pf[k] * pf[k + 1] < 0.0)) continue;
      auto f = [&](double s) { return pf_of(sweep_base(s), lambda); };
      boost::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          f, angles[k], angles[k + 1], pf[k], pf[k + 1],
          boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
          iterations);
      // Both ends bracket the root to machine precision; keep the lower-rank one.
      for (const double s : {bracket.first, bracket.second}) {
        const GroupElement g = root_rotation(basis.roots, alpha, s);
        record(rank_of(sweep_base(s), lambda), g, "sweep", s);
      }
    }

    for (std::size_t k = 2; k < fixed_count; ++k) {
      record(rank_of(probes[k].base, lambda), probes[k].g, probes[k].source, probes[k].angle);
    }
    row.degenerate = row.min_rank < 2 * m;
    report.rows.push_back(std::move(row));
  }
  return report;
}

double weyl_flip_residual(const GroupElement& g, double lambda, const RealTensor2& r_o,
                          const RealTensor2& r_p, const LieBasis& basis) {
  const GroupElement w = longest_weyl_representative(basis.roots);
  const RealTensor2 moved = pencil_tensor({w.inverse() * g, lambda}, r_o, r_p, basis);
  const RealTensor2 flipped = pencil_tensor({g, -(lambda + 2.0)}, r_o, r_p, basis);
  const int m = basis.orbit_dim() / 2;
  RealTensor2 sum{BasisKind::Compact, moved.coeff + flipped.coeff};
  return leading_block(sum, m).norm();
}

double cp1_chart_coefficient(double lambda, double x, double y) {
  const double rho2 = x * x + y * y;
  return 0.25 * (1.0 + rho2) * (lambda + (lambda + 2.0) * rho2);
}

ChartBivector cp1_chart_bivector(double lambda) {
  ChartBivector pi;
  pi.dim = 2;
  pi.coeff = [lambda](const Point& p) {
    const double c = cp1_chart_coefficient(lambda, p(0), p(1));
    Eigen::MatrixXd m(2, 2);
    m << 0.0, c, -c, 0.0;
    return m;
  };
  pi.derivative = [lambda](const Point& p) {
    const double rho2 = p.squaredNorm();
    // dc/dx_k = x_k/2 [ (lambda + (lambda+2) rho^2) + (lambda+2)(1 + rho^2) ]
    const double common = 0.5 * ((lambda + (lambda + 2.0) * rho2) + (lambda + 2.0) * (1.0 + rho2));
    std::vector<Eigen::MatrixXd> out;
    for (int k = 0; k < 2; ++k) {
      const double dc = p(k) * common;
      Eigen::MatrixXd m(2, 2);
      m << 0.0, dc, -dc, 0.0;
      out.push_back(m);
    }
    return out;
  };
  pi.domain = Domain::whole();
  pi.closed_form = "1/4 (1+|z|^2)(lambda+(lambda+2)|z|^2) d_x^d_y";
  return pi;
}

std::optional<Complex> cp1_coordinate(const LieBasis& su2_basis, const GroupElement& g) {
  if (su2_basis.roots.rank != 1 || !su2_basis.has_compact()) {
    throw ShapeError("cp1_coordinate needs the su(2) compact basis");
  }
  const Eigen::VectorXd n = adjoint_matrix(su2_basis, g).col(2);
  const double denom = 1.0 + n(2);
  if (denom < 1e-15) return std::nullopt;
  return Complex(n(0), n(1)) / denom;
}

CrossCheck cross_check_group_vs_chart(double lambda, std::span<const GroupElement> samples,
                                      double tol) {
  const std::vector<Root> dp = projective_space_roots(1);
  const PencilSetup setup = make_pencil_setup(1, dp);
  CrossCheck out;
  for (const auto& g : samples) {
    const bool group_degenerate =
        leading_minor_rank(pencil_tensor({g, lambda}, setup.r_o, setup.r_p, setup.basis), 1, tol) <
        2;
    bool chart_degenerate = false;
    if (const auto z = cp1_coordinate(setup.basis, g)) {
      // Normalize by the conformal factor of the stereographic chart.
      const double z2 = std::norm(*z);
      const double c = cp1_chart_coefficient(lambda, z->real(), z->imag());
      chart_degenerate = std::abs(c) / ((1.0 + z2) * (1.0 + z2)) < tol;
    } else {
      chart_degenerate = std::abs(lambda + 2.0) < tol;
    }
    ++out.samples;
    if (group_degenerate != chart_degenerate) ++out.disagreements;
  }
  return out;
}

}  // namespace rpencil
