#include "rpencil/config.hpp"

#include <algorithm>
#include <cmath>

#include "rpencil/errors.hpp"
#include "rpencil/io.hpp"

namespace rpencil {

using nlohmann::json;

OutputFormat parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "both") return OutputFormat::Both;
  throw ConfigError("format: expected json, csv or both, got '" + std::string(s) + "'");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Both:
      return "both";
  }
  return "both";
}

void apply_preset(RunConfig& cfg, std::string_view preset) {
  if (preset == "cp1") {
    cfg.rank = 1;
    cfg.parabolic = {Root{0, 1}};
  } else if (preset == "cp2") {
    cfg.rank = 2;
    cfg.parabolic = {Root{0, 1}, Root{0, 2}};
  } else {
    throw ConfigError("parabolic: unknown preset '" + std::string(preset) + "' (expected cp1 or cp2)");
  }
  cfg.series = "A";
  cfg.preset = std::string(preset);
}

void validate(const RunConfig& cfg) {
  if (cfg.series != "A") throw ConfigError("algebra.series: only A is supported, got " + cfg.series);
  if (cfg.rank < 1) throw ConfigError("algebra.rank: must be >= 1, got " + std::to_string(cfg.rank));
  if (cfg.parabolic.empty()) throw ConfigError("parabolic: at least one root is required");
  const RootSystem rs = build_root_system(Series::A, cfg.rank);
  for (const auto& r : cfg.parabolic) {
    if (!rs.contains(r)) {
      throw ConfigError("parabolic: " + root_label(r) + " is not a positive root of A" +
                        std::to_string(cfg.rank));
    }
  }
  if (cfg.lambda_grid.empty()) throw ConfigError("lambda_grid: must not be empty");
  for (const double l : cfg.lambda_grid) {
    if (!std::isfinite(l)) throw ConfigError("lambda_grid: entries must be finite");
  }
  if (cfg.samples < 1) throw ConfigError("samples: must be >= 1, got " + std::to_string(cfg.samples));
  const auto& t = cfg.tolerances;
  if (!(t.rank_tol > 0.0)) throw ConfigError("tolerances.rank_tol: must be > 0");
  if (!(t.residual_tol > 0.0)) throw ConfigError("tolerances.residual_tol: must be > 0");
  if (!(t.quad_rel_err > 0.0)) throw ConfigError("tolerances.quad_rel_err: must be > 0");
  if (cfg.xi_offsets.size() < 2) throw ConfigError("vaisman.xi_offsets: need at least two offsets");
  for (std::size_t k = 0; k < cfg.xi_offsets.size(); ++k) {
    if (!(cfg.xi_offsets[k] > 0.0)) throw ConfigError("vaisman.xi_offsets: offsets must be > 0");
    if (k > 0 && !(cfg.xi_offsets[k] < cfg.xi_offsets[k - 1])) {
      throw ConfigError("vaisman.xi_offsets: offsets must decrease strictly");
    }
  }
}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ConfigError(source_ + ": field '" + field + "': " + what);
  }

  void check_keys(const json& obj, const std::string& prefix,
                  std::initializer_list<std::string_view> allowed) const {
    if (!obj.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(prefix.empty() ? key : prefix + "." + key, "unknown key");
      }
    }
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const json& v, const std::string& field) const {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string string(const json& v, const std::string& field) const {
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const json& v, const std::string& field) const {
    if (!v.is_array()) fail(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      out.push_back(number(v[k], field + "[" + std::to_string(k) + "]"));
    }
    return out;
  }

 private:
  std::string source_;
};

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(source) + ": parse error at " + line_column(text, e.byte) + ": " +
                      e.what());
  }
  const Reader rd{std::string(source)};
  rd.check_keys(doc, "",
                {"schema_version", "algebra", "parabolic", "lambda_grid", "samples", "seed",
                 "tolerances", "vaisman", "output"});

  RunConfig cfg;
  if (doc.contains("schema_version") && rd.integer(doc["schema_version"], "schema_version") != kSchemaVersion) {
    rd.fail("schema_version", "expected " + std::to_string(kSchemaVersion));
  }
  bool rank_given = false;
  if (doc.contains("algebra")) {
    const json& a = doc["algebra"];
    rd.check_keys(a, "algebra", {"series", "rank"});
    if (a.contains("series")) cfg.series = rd.string(a["series"], "algebra.series");
    if (a.contains("rank")) {
      cfg.rank = static_cast<int>(rd.integer(a["rank"], "algebra.rank"));
      rank_given = true;
    }
  }
  if (doc.contains("parabolic")) {
    const json& p = doc["parabolic"];
    if (p.is_string()) {
      const int rank = cfg.rank;
      try {
        apply_preset(cfg, p.get<std::string>());
      } catch (const ConfigError& e) {
        rd.fail("parabolic", e.what());
      }
      if (rank_given && rank != cfg.rank) {
        rd.fail("algebra.rank", "preset " + cfg.preset + " needs rank " + std::to_string(cfg.rank));
      }
    } else if (p.is_array()) {
      cfg.preset.clear();
      cfg.parabolic.clear();
      for (std::size_t k = 0; k < p.size(); ++k) {
        const std::string field = "parabolic[" + std::to_string(k) + "]";
        if (!p[k].is_array() || p[k].size() != 2) rd.fail(field, "expected a pair [i, j]");
        const auto i = rd.integer(p[k][0], field);
        const auto j = rd.integer(p[k][1], field);
        if (!(i >= 1 && i < j)) rd.fail(field, "expected 1 <= i < j");
        cfg.parabolic.push_back(Root{static_cast<int>(i - 1), static_cast<int>(j - 1)});
      }
    } else {
      rd.fail("parabolic", "expected a preset name or a list of [i, j] pairs");
    }
  } else if (rank_given && cfg.rank != 1) {
    cfg.preset.clear();
    cfg.parabolic = {Root{0, 1}};
  }
  if (doc.contains("lambda_grid")) cfg.lambda_grid = rd.numbers(doc["lambda_grid"], "lambda_grid");
  if (doc.contains("samples")) cfg.samples = static_cast<int>(rd.integer(doc["samples"], "samples"));
  if (doc.contains("seed")) {
    const auto s = rd.integer(doc["seed"], "seed");
    if (s < 0) rd.fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    rd.check_keys(t, "tolerances", {"rank_tol", "residual_tol", "quad_rel_err"});
    if (t.contains("rank_tol")) cfg.tolerances.rank_tol = rd.number(t["rank_tol"], "tolerances.rank_tol");
    if (t.contains("residual_tol")) {
      cfg.tolerances.residual_tol = rd.number(t["residual_tol"], "tolerances.residual_tol");
    }
    if (t.contains("quad_rel_err")) {
      cfg.tolerances.quad_rel_err = rd.number(t["quad_rel_err"], "tolerances.quad_rel_err");
    }
  }
  if (doc.contains("vaisman")) {
    const json& v = doc["vaisman"];
    rd.check_keys(v, "vaisman", {"obstruction_lambdas", "xi_offsets"});
    if (v.contains("obstruction_lambdas")) {
      cfg.obstruction_lambdas = rd.numbers(v["obstruction_lambdas"], "vaisman.obstruction_lambdas");
    }
    if (v.contains("xi_offsets")) cfg.xi_offsets = rd.numbers(v["xi_offsets"], "vaisman.xi_offsets");
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    rd.check_keys(o, "output", {"dir", "formats"});
    if (o.contains("dir")) cfg.out_dir = rd.string(o["dir"], "output.dir");
    if (o.contains("formats")) {
      try {
        cfg.format = parse_output_format(rd.string(o["formats"], "output.formats"));
      } catch (const ConfigError& e) {
        rd.fail("output.formats", e.what());
      }
    }
  }
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.string());
}

json config_to_json(const RunConfig& cfg) {
  json roots = json::array();
  for (const auto& r : cfg.parabolic) roots.push_back({r.i + 1, r.j + 1});
  return json{{"algebra", {{"series", cfg.series}, {"rank", cfg.rank}}},
              {"preset", cfg.preset.empty() ? json(nullptr) : json(cfg.preset)},
              {"parabolic", std::move(roots)},
              {"lambda_grid", cfg.lambda_grid},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"tolerances",
               {{"rank_tol", cfg.tolerances.rank_tol},
                {"residual_tol", cfg.tolerances.residual_tol},
                {"quad_rel_err", cfg.tolerances.quad_rel_err}}},
              {"vaisman",
               {{"obstruction_lambdas", cfg.obstruction_lambdas}, {"xi_offsets", cfg.xi_offsets}}},
              {"output", {{"formats", std::string(to_string(cfg.format))}}}};
}

}  // namespace rpencil
