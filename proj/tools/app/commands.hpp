#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace syndyn::app {

inline const char *kVersion = "0.1.0";

enum class Mode { Codes, Graph, Rates, Suppress, Correct, Stability };
Mode parse_mode(const std::string &name);
std::string mode_name(Mode m);

struct RunOptions {
    uint64_t seed = 0;
    size_t threads = 0;
    bool svg = false;
};

struct RunOutput {
    /// Config with every default filled in.
    json resolved;
    std::vector<OutputFile> files;
    /// One-line human summary.
    std::string summary;
};

/// Checks the schema and builds the run, without writing anything.
RunOutput run(Mode mode, const json &config, const RunOptions &opts);

/// Registry table of built-in codes.
Table codes_table();

/// Schema and physics checks without simulating. Never throws for bad input;
/// findings go into the report.
json validate(const json &config, Mode fallback_mode);

}  // namespace syndyn::app
