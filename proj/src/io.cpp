#include "rpencil/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rpencil {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json roots_to_json(std::span<const Root> roots) {
  json out = json::array();
  for (const auto& r : roots) out.push_back(root_label(r));
  return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json basis_to_json(const LieBasis& basis) {
  json j;
  j["series"] = "A";
  j["rank"] = basis.roots.rank;
  j["dimension"] = basis.dim();
  j["positive_roots"] = roots_to_json(basis.roots.positive_roots);
  j["simple_roots"] = roots_to_json(basis.roots.simple_roots);
  j["parabolic"] = roots_to_json(basis.parabolic);
  j["orbit_dim"] = basis.orbit_dim();
  json elems = json::array();
  for (std::size_t k = 0; k < basis.compact.size(); ++k) {
    elems.push_back({{"label", basis.labels[k]}, {"matrix", matrix_to_json(basis.compact[k])}});
  }
  j["compact"] = std::move(elems);
  j["gram"] = matrix_to_json(basis.gram);
  return j;
}

json tensor_to_json(const RealTensor2& t, const LieBasis& basis) {
  json j;
  j["basis"] = std::string(to_string(t.basis));
  j["labels"] = basis.labels;
  j["coefficients"] = matrix_to_json(t.coeff);
  return j;
}

json report_to_json(const PencilReport& report) {
  json j;
  j["lambda_grid"] = report.lambda_grid;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  j["rank_tol"] = report.tolerance;
  j["orbit_dim"] = report.orbit_dim;
  j["sweep_points"] = report.sweep_points;
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row{{"lambda", r.lambda},
             {"min_rank", r.min_rank},
             {"degenerate", r.degenerate},
             {"max_bound", r.max_bound}};
    if (r.witness) {
      json w{{"source", r.witness->source}, {"sweep_angle", number_or_null(r.witness->sweep_angle)}};
      if (r.witness->z_abs2) w["z_abs2"] = number_or_null(*r.witness->z_abs2);
      row["witness"] = std::move(w);
    } else {
      row["witness"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

json certification_to_json(const Certification& cert) {
  json j;
  j["name"] = cert.name;
  j["passed"] = cert.passed();
  json checks = json::array();
  for (const auto& c : cert.checks) {
    checks.push_back({{"name", c.name},
                      {"value", number_or_null(c.value)},
                      {"threshold", c.threshold},
                      {"passed", c.passed}});
  }
  j["checks"] = std::move(checks);
  json meta = json::object();
  for (const auto& [k, v] : cert.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  return j;
}

json obstruction_to_json(const ObstructionResult& r) {
  auto fit = [](const LinearFit& f) {
    return json{{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
  };
  return json{{"lambda", r.lambda},
              {"xi0", r.xi0},
              {"xi_grid", r.xi_grid},
              {"lhs_quadrature", r.lhs_quadrature},
              {"lhs_closed_form", r.lhs_closed_form},
              {"log_fit", fit(r.log_fit)},
              {"polar_fit", fit(r.polar_fit)},
              {"quantizable", r.quantizable},
              {"method", r.method}};
}

json verdict_to_json(const Verdict& v) {
  return json{{"lambda", v.lambda}, {"quantizable", v.quantizable}, {"method", v.method}};
}

std::string report_csv(const PencilReport& report) {
  std::string out = "lambda,min_rank,degenerate,max_bound,samples,seed\n";
  for (const auto& r : report.rows) {
    out += format_double(r.lambda) + "," + std::to_string(r.min_rank) + "," +
           (r.degenerate ? "true" : "false") + "," + format_double(r.max_bound) + "," +
           std::to_string(report.samples) + "," + std::to_string(report.seed) + "\n";
  }
  return out;
}

std::string obstruction_csv(const ObstructionResult& result) {
  std::string out = "xi,lhs_quadrature,lhs_closed_form,abs_err\n";
  for (std::size_t k = 0; k < result.xi_grid.size(); ++k) {
    const double q = result.lhs_quadrature[k];
    const double c = result.lhs_closed_form[k];
    out += format_double(result.xi_grid[k]) + "," + format_double(q) + "," + format_double(c) + "," +
           format_double(std::abs(q - c)) + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << content;
  if (!os) throw IoError("failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace rpencil
