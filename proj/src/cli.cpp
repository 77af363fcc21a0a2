#include "rpencil/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <random>

#include "rpencil/errors.hpp"
#include "rpencil/io.hpp"
#include "rpencil/pencil.hpp"
#include "rpencil/rmatrix.hpp"
#include "rpencil/vaisman.hpp"

namespace rpencil {

using nlohmann::json;

namespace {

constexpr double kBoundTol = 1e-10;
constexpr double kBasisTol = 1e-12;
constexpr double kInvarianceTol = 1e-10;

// Shortest round-trip form for the console summary; files use format_double.
std::string brief(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Checks {
 public:
  Checks(std::ostream& out, std::string prefix) : out_(out), prefix_(std::move(prefix)) {}

  bool add(const std::string& name, double value, double threshold, bool ok) {
    out_ << (ok ? "PASS " : "FAIL ") << prefix_ << "." << name << " = " << brief(value)
         << " (threshold " << brief(threshold) << ")\n";
    list_.push_back(json{{"name", name}, {"value", std::isfinite(value) ? json(value) : json(nullptr)},
                         {"threshold", threshold}, {"passed", ok}});
    passed_ = passed_ && ok;
    return ok;
  }

  bool below(const std::string& name, double value, double threshold) {
    return add(name, value, threshold, value <= threshold);
  }

  bool passed() const { return passed_; }
  const json& list() const { return list_; }

 private:
  std::ostream& out_;
  std::string prefix_;
  json list_ = json::array();
  bool passed_ = true;
};

json header(const std::string& command, const RunConfig& cfg) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"config", config_to_json(cfg)}};
}

int code(bool passed) { return passed ? kExitPass : kExitCheckFailed; }

std::string obstruction_file(double lambda) { return "obstruction_lambda_" + format_double(lambda) + ".csv"; }

}  // namespace

RunConfig resolve_config(const CliOptions& opts) {
  RunConfig cfg = opts.config_path ? load_config(*opts.config_path) : RunConfig{};
  if (opts.preset) apply_preset(cfg, *opts.preset);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;
  if (opts.format) cfg.format = parse_output_format(*opts.format);
  validate(cfg);
  return cfg;
}

int cmd_algebra(const RunConfig& cfg, std::ostream& out) {
  const LieBasis basis = make_basis(cfg.rank, cfg.parabolic);
  const int n = basis.matrix_size();
  Checks checks(out, "algebra");

  checks.add("dimension", basis.compact.size(), n * n - 1,
             static_cast<int>(basis.compact.size()) == n * n - 1);
  checks.add("orbit_dim", basis.orbit_dim(), 2.0 * cfg.parabolic.size(),
             basis.orbit_dim() == 2 * static_cast<int>(cfg.parabolic.size()));
  const double gram_dev =
      (basis.gram - Eigen::MatrixXd::Identity(basis.gram.rows(), basis.gram.cols())).cwiseAbs().maxCoeff();
  checks.below("orthonormality", gram_dev, kBasisTol);
  double skew = 0.0;
  double trace = 0.0;
  for (const auto& x : basis.compact) {
    skew = std::max(skew, (x + x.adjoint()).cwiseAbs().maxCoeff());
    trace = std::max(trace, std::abs(x.trace()));
  }
  checks.below("anti_hermitian", skew, kBasisTol);
  checks.below("traceless", trace, kBasisTol);

  const Array3<double> c = compact_structure_constants(basis);
  double antisym = 0.0;
  const int d = basis.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) antisym = std::max(antisym, std::abs(c(a, b, k) + c(b, a, k)));
  checks.below("structure_antisymmetry", antisym, 0.0);

  const RealTensor2 r_o = compact_r(basis);
  const RealTensor2 r_p = parabolic_r(basis);
  std::vector<GroupElement> samples;
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < 10; ++k) samples.push_back(random_group_element(n, rng));
  const double inv = check_ad_invariance(schouten_square(r_o, basis), basis, samples);
  checks.below("mybe_invariance", inv, kInvarianceTol);

  json doc = header("algebra", cfg);
  doc["basis"] = basis_to_json(basis);
  doc["r_o"] = tensor_to_json(r_o, basis);
  doc["r_p"] = tensor_to_json(r_p, basis);
  doc["checks"] = checks.list();
  doc["passed"] = checks.passed();
  if (cfg.wants_json()) write_json_file(cfg.out_dir / "basis.json", doc);
  return code(checks.passed());
}

int cmd_pencil_scan(const RunConfig& cfg, std::ostream& out) {
  const PencilSetup setup = make_pencil_setup(cfg.rank, cfg.parabolic);
  const ScanOptions options{cfg.samples, cfg.seed, cfg.tolerances.rank_tol, 512};

  // One task per lambda; every task draws the same seeded probes, so rows do not depend on
  // scheduling.
  std::vector<std::future<PencilReport>> tasks;
  for (const double lambda : cfg.lambda_grid) {
    tasks.push_back(std::async(std::launch::async, [&setup, &options, lambda] {
      const double grid[] = {lambda};
      return degeneracy_scan(setup, grid, options);
    }));
  }
  PencilReport report;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    PencilReport part = tasks[k].get();
    if (k == 0) report = part;
    else report.rows.push_back(part.rows.front());
  }
  report.lambda_grid = cfg.lambda_grid;

  Checks checks(out, "pencil");
  double worst_bound = 0.0;
  int window_mismatch = 0;
  for (const auto& row : report.rows) {
    worst_bound = std::max(worst_bound, row.max_bound);
    const bool expected = row.lambda >= -2.0 && row.lambda <= 0.0;
    if (row.degenerate != expected) ++window_mismatch;
    out << "  lambda " << format_double(row.lambda) << ": min_rank " << row.min_rank << ", "
        << (row.degenerate ? "degenerate" : "nondegenerate") << "\n";
  }
  checks.below("spectral_bound", worst_bound, 1.0 + kBoundTol);
  checks.add("degeneracy_window_mismatches", window_mismatch, 0.0, window_mismatch == 0);

  double flip = 0.0;
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> lam(-3.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const GroupElement g = random_group_element(setup.basis.matrix_size(), rng);
    flip = std::max(flip, weyl_flip_residual(g, lam(rng), setup.r_o, setup.r_p, setup.basis));
  }
  checks.below("weyl_flip", flip, kInvarianceTol);

  if (cfg.wants_json()) {
    json doc = header("pencil-scan", cfg);
    doc["report"] = report_to_json(report);
    doc["checks"] = checks.list();
    doc["passed"] = checks.passed();
    write_json_file(cfg.out_dir / "pencil_report.json", doc);
  }
  if (cfg.wants_csv()) write_text_file(cfg.out_dir / "pencil_report.csv", report_csv(report));
  return code(checks.passed());
}

int cmd_vaisman(const RunConfig& cfg, std::ostream& out) {
  for (const double l : cfg.obstruction_lambdas) {
    if (!(l >= -2.0 && l <= 0.0)) {
      throw OutOfRange("obstruction lambda " + format_double(l) + " lies outside [-2, 0]");
    }
  }
  json doc = header("vaisman", cfg);
  bool passed = true;

  for (const auto& cert : {example1(50, cfg.seed), example2(50, cfg.seed + 1)}) {
    for (const auto& c : cert.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << cert.name << "." << c.name << " = "
          << brief(c.value) << "\n";
    }
    out << (cert.passed() ? "PASS " : "FAIL ") << cert.name << "\n";
    passed = passed && cert.passed();
    doc[cert.name] = certification_to_json(cert);
  }

  Checks checks(out, "obstruction");
  json results = json::array();
  std::vector<Verdict> verdicts;
  for (const double l : cfg.obstruction_lambdas) {
    if (l == 0.0 || l == -2.0) {
      const Verdict v = obstruction_verdict(l);
      verdicts.push_back(v);
      results.push_back(verdict_to_json(v));
      out << "  lambda " << format_double(l) << ": quantizable=" << (v.quantizable ? "true" : "false")
          << " (" << v.method << ")\n";
      continue;
    }
    const double xi0 = degeneracy_radius(l);
    std::vector<double> grid;
    for (const double d : cfg.xi_offsets) grid.push_back(xi0 * (1.0 + d));
    const ObstructionResult r = cp1_obstruction(l, grid);
    double rel = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      rel = std::max(rel, std::abs(r.lhs_quadrature[k] - r.lhs_closed_form[k]) /
                              std::abs(r.lhs_closed_form[k]));
    }
    const std::string tag = "lambda_" + format_double(l);
    checks.below(tag + ".quadrature_rel_err", rel, cfg.tolerances.quad_rel_err);
    checks.add(tag + ".log_fit_r_squared", r.log_fit.r_squared, kLogFitThreshold,
               r.log_fit.r_squared > kLogFitThreshold);
    out << "  lambda " << format_double(l) << ": quantizable=" << (r.quantizable ? "true" : "false")
        << "\n";
    verdicts.push_back({l, r.quantizable, r.method});
    results.push_back(obstruction_to_json(r));
    if (cfg.wants_csv()) write_text_file(cfg.out_dir / obstruction_file(l), obstruction_csv(r));
  }
  for (std::size_t a = 0; a < verdicts.size(); ++a) {
    for (std::size_t b = a + 1; b < verdicts.size(); ++b) {
      if (std::abs(verdicts[a].lambda + verdicts[b].lambda + 2.0) > 1e-12) continue;
      const bool same = verdicts[a].quantizable == verdicts[b].quantizable;
      checks.add("flip_pair_" + format_double(verdicts[a].lambda) + "_" +
                     format_double(verdicts[b].lambda),
                 same ? 0.0 : 1.0, 0.0, same);
    }
  }
  doc["obstruction"] = std::move(results);
  doc["obstruction_checks"] = checks.list();

  const PrequantumConvention selected = select_prequantum_convention();
  const PrequantumConvention shipped = shipped_prequantum_convention();
  doc["prequantum"] = {{"selected", to_string(selected)}, {"shipped", to_string(shipped)}};
  const bool conv_ok = selected == shipped;
  out << (conv_ok ? "PASS " : "FAIL ") << "prequantum.convention = " << to_string(selected) << "\n";

  passed = passed && checks.passed() && conv_ok;
  doc["passed"] = passed;
  if (cfg.wants_json()) write_json_file(cfg.out_dir / "vaisman_report.json", doc);
  return code(passed);
}

int cmd_all(const RunConfig& cfg, std::ostream& out) {
  int worst = kExitPass;
  for (auto* cmd : {&cmd_algebra, &cmd_pencil_scan, &cmd_vaisman}) worst = std::max(worst, cmd(cfg, out));
  out << (worst == kExitPass ? "ALL PASS" : "SOME CHECKS FAILED") << "\n";
  return worst;
}

int run_command(std::string_view command, const CliOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    const RunConfig cfg = resolve_config(opts);
    if (command == "algebra") return cmd_algebra(cfg, out);
    if (command == "pencil-scan") return cmd_pencil_scan(cfg, out);
    if (command == "vaisman") return cmd_vaisman(cfg, out);
    if (command == "all") return cmd_all(cfg, out);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const OutOfRange& e) {
    err << "out of range: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidParabolic& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace rpencil
