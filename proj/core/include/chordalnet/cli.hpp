#ifndef CHORDALNET_CLI_HPP
#define CHORDALNET_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace chordalnet {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInput = 2,
    kExitSolver = 3,
    kExitCertify = 4,
};

struct RunConfig {
    std::string subcommand;            // score | encode | solve | certify
    std::string input_path;            // csv / score file / network json
    std::string aux_input_path;        // certify: score file
    std::string output_path;           // empty = stdout (reports) or required (files)
    std::optional<std::string> instance_path; // solve --solver: where the WCNF goes
    double prior = 0.5;
    std::int64_t scale = 1000;
    int max_clique = 0;                // 0 = no cap
    std::string solver;                // command template with {}
    bool oracle = false;
    int workers = 0;                   // 0 = hardware parallelism
    std::uint64_t seed = 0;
    bool allow_large = false;
};

// Each returns a process exit code and writes machine-readable output to
// the report/output path (or stdout); human summaries go to stderr.
int cmd_score(const RunConfig& cfg);
int cmd_encode(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_certify(const RunConfig& cfg);

int run_cli(const RunConfig& cfg);

} // namespace chordalnet

#endif
