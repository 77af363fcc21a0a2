#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "rpencil/config.hpp"

namespace rpencil {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

/// Command-line overrides applied on top of the config file.
struct CliOptions {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<std::string> preset;
};

/// Defaults, then the config file, then the flags. Throws ConfigError.
RunConfig resolve_config(const CliOptions& opts);

int cmd_algebra(const RunConfig& cfg, std::ostream& out);
int cmd_pencil_scan(const RunConfig& cfg, std::ostream& out);
int cmd_vaisman(const RunConfig& cfg, std::ostream& out);
int cmd_all(const RunConfig& cfg, std::ostream& out);

/// Resolves the config and dispatches; errors become messages on `err` and exit code 2
/// (configuration, IO, precondition) or 1 (anything else raised by the math).
int run_command(std::string_view command, const CliOptions& opts, std::ostream& out,
                std::ostream& err);

}  // namespace rpencil
