// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "holomult/config.hpp"

namespace holomult::cli {

using config::Json;

/// Command-line overrides; they take precedence over the config file.
struct Overrides {
    std::optional<int> nodes;
    std::optional<TruncationBox> box;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

struct Outcome {
    int exit_code = 0; // 0 pass, 1 check failure, 2 config error
    Json report;
    /// CSV (or JSON) payload written to --out; empty when the command has none.
    std::string data;
};

/// Runs one subcommand on a parsed config. Never throws for config or
/// engine errors; they are reported in the outcome.
Outcome run(const std::string& command, const Json& config, const Overrides& overrides = {});

/// Full command line: `holomult <command> --config PATH [--out PATH]
/// [--nodes N] [--box D1,D2,...] [--seed S] [--tol T]`. The report goes to
/// `out` as JSON.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace holomult::cli
