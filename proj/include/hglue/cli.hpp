#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hglue/errors.hpp"

namespace hglue::cli {

enum class Command { verifyAlgebra, verifyModel, kernel, glue, solve, sweep, classify, census };

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command c);
const std::vector<Command>& all_commands();

// bad flag values; the message names the flag
class UsageError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
    const char* name() const noexcept override { return "UsageError"; }
};

struct RunParams {
    int g1 = 1, g2 = 1, s = 1;
    double C = 1.0;
    double R = 0.1;
    std::vector<double> RList{0.2, 0.1, 0.05, 0.025};
    int jmax = 16;
    int gridNTau = 0;  // 0: spacing chosen from the mixing zone width
    int gridNModes = 2;
    int eigenNTau = 512;
    double tol = 1e-8;
    int maxIter = 20;
    double epsilon = 0.1;
    std::uint64_t seed = 20240611;
    bool dryRun = false;  // validate only, every verdict skipped
    std::string out;
};

struct RunConfig {
    Command command;
    RunParams params;
};

// range checks for the parameters the command consumes; throws UsageError
void validate(const RunConfig& cfg);

enum class Status { pass, fail, skipped };
const char* status_name(Status s);

struct Verdict {
    std::string criterion;
    Status status;
    double value;
    double tolerance;
    std::string relation;  // how value is compared with tolerance
};

struct CsvTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ReportEnvelope {
    std::string command;
    std::string timestamp;
    nlohmann::ordered_json parameters;
    nlohmann::ordered_json results;
    std::vector<Verdict> verdicts;
    std::vector<CsvTable> tables;
};

// criterion names a command reports, in output order
std::vector<std::string> criteria(Command c);

nlohmann::ordered_json parameter_snapshot(const RunConfig& cfg);

// Runs the pipeline. Library errors raised by the pipeline are recorded in
// results.error with a failing verdict; UsageError propagates.
ReportEnvelope dispatch(const RunConfig& cfg);

// 0 when nothing failed, 1 otherwise
int exit_code(const ReportEnvelope& env);

std::string render_report(const ReportEnvelope& env);
std::string render_csv(const CsvTable& t);
// Writes the JSON report to `path` and each table next to it as
// <stem>.<table>.csv. Empty path prints the JSON to stdout.
void emit_report(const ReportEnvelope& env, const std::string& path);

} // namespace hglue::cli
