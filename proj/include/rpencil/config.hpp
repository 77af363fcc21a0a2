#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rpencil/lie_core.hpp"

namespace rpencil {

enum class OutputFormat { Json, Csv, Both };

OutputFormat parse_output_format(std::string_view s);
std::string_view to_string(OutputFormat f);

struct Tolerances {
  double rank_tol = 1e-9;
  double residual_tol = 1e-8;
  double quad_rel_err = 1e-6;
};

struct RunConfig {
  std::string series = "A";
  int rank = 1;
  std::string preset = "cp1";  // empty when the roots were given explicitly
  std::vector<Root> parabolic{Root{0, 1}};
  std::vector<double> lambda_grid{-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0};
  int samples = 100;
  std::uint64_t seed = 7;
  Tolerances tolerances;
  std::vector<double> obstruction_lambdas{-0.5, -1.0, -1.5};
  std::vector<double> xi_offsets{0.1, 0.05, 0.01, 0.005, 0.001};
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::Both;

  bool wants_json() const { return format != OutputFormat::Csv; }
  bool wants_csv() const { return format != OutputFormat::Json; }
};

/// Sets rank and parabolic roots for "cp1" or "cp2"; ConfigError otherwise.
void apply_preset(RunConfig& cfg, std::string_view preset);

/// ConfigError naming the offending field.
void validate(const RunConfig& cfg);

/// Keys override the defaults; unknown keys are errors. `source` names the input in diagnostics.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Every resolved setting, for provenance in reports.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace rpencil
