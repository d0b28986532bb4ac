#pragma once

// Batch driver: one job per process, JSON in, JSON report and text tables out.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "report.hpp"

namespace grext::cli {

struct JobConfig {
    std::string command;
    std::vector<std::string> inputs;  // JSON files, merged key by key in order
    int max_bar_degree = 4;
    std::size_t max_dim = 200000;
    std::uint64_t seed = 1;
    std::string output;  // JSON report path; the table goes next to it as .txt
};

const std::vector<std::string>& command_names();

/// Validates caps and runs the command on an already merged input document.
/// Engine errors propagate as exceptions.
Report execute(const JobConfig& job, const Json& input);

/// Exit status: 0 when every asserted property holds, 2 on a hypothesis-failed
/// verdict, 1 on an engine error (the message names the violated field).
int exit_code(const Report& r);

/// Reads the inputs, executes, writes the report files and the table to `out`
/// (the JSON goes to `out` as well when no output path is set). Errors are
/// printed to `err` and yield 1.
int run(const JobConfig& job, std::ostream& out, std::ostream& err);

/// The report serialized as written to disk (sorted keys, two-space indent).
std::string report_text(const Report& r, std::uint64_t seed);

}  // namespace grext::cli
