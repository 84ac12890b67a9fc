#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ksrg/error.hpp"
#include "ksrg_cli/config.hpp"

namespace ksrg::cli {

struct Invocation {
    Subcommand subcommand = Subcommand::Phase;
    std::optional<std::filesystem::path> config_path;
    Overrides overrides;
    bool help = false;
};

/// Parses `SUBCOMMAND [--config FILE] [--key value | --key=value]...`.
Invocation parse_arguments(const std::vector<std::string>& args);

/// 1 for parse/validation errors, 2 for capacity, 3 for insufficient events.
int exit_code(ErrorCode code);

/// Runs one subcommand; files go to config.out.
int run(Subcommand subcommand, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point; never throws.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksrg::cli
