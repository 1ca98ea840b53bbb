#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ahodge {

/// Centered Hodge diamond of h[q][p]: row p + q = 2n at the top, larger p to the left.
std::string render_diamond(const std::vector<std::vector<long>>& h);
/// "q,p,h" lines under a header, q-major.
std::string diamond_csv(const std::vector<std::vector<long>>& h);
/// "path,value" lines for every leaf of a JSON document (paths joined with '/').
std::string flatten_csv(const nlohmann::json& j);

enum class OutputFormat { Json, Csv, Text };
OutputFormat parse_format(const std::string& s);

struct JobSpec {
    std::string command;
    std::string input;
    OutputFormat format = OutputFormat::Json;
    std::optional<int> k;
    bool integral = false;
    bool dual = false;
    bool strict_simplicity = false;
    std::uint64_t seed = 20240611;
    unsigned jobs = 1;
};

struct JobResult {
    int exit_code = 0;
    nlohmann::json report;
    std::string rendered;  // report in the requested format, newline terminated
};

/// Exit code for an error kind: 2 structural, 3 parse, 4 internal.
int exit_code_for(const std::string& kind);

const std::vector<std::string>& command_names();

/// Runs one command end to end; errors become an {"error": {...}} report with the mapped exit code.
JobResult run_job(const JobSpec& spec);

}  // namespace ahodge
