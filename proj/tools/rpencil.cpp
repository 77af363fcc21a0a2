#include <iostream>

#include "CLI11.hpp"
#include "rpencil/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"r-matrix Poisson pencils on coadjoint orbits"};
  app.require_subcommand(1);
  app.fallthrough();

  rpencil::CliOptions opts;
  std::string config, out, format, preset;
  std::uint64_t seed = 0;
  auto* config_opt = app.add_option("--config", config, "JSON run configuration");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* out_opt = app.add_option("--out", out, "output directory");
  auto* format_opt =
      app.add_option("--format", format, "report formats")->check(CLI::IsMember({"json", "csv", "both"}));
  auto* preset_opt =
      app.add_option("--preset", preset, "orbit preset")->check(CLI::IsMember({"cp1", "cp2"}));

  app.add_subcommand("algebra", "build and check the Lie algebra basis");
  app.add_subcommand("pencil-scan", "degeneracy and spectral-bound scan of the pencil");
  app.add_subcommand("vaisman", "quantization-condition certifications and the CP^1 obstruction");
  app.add_subcommand("all", "run every command");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : rpencil::kExitConfigError;
  }

  if (*config_opt) opts.config_path = config;
  if (*seed_opt) opts.seed = seed;
  if (*out_opt) opts.out_dir = out;
  if (*format_opt) opts.format = format;
  if (*preset_opt) opts.preset = preset;

  const std::string command = app.get_subcommands().front()->get_name();
  return rpencil::run_command(command, opts, std::cout, std::cerr);
}
