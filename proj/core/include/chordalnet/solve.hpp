#ifndef CHORDALNET_SOLVE_HPP
#define CHORDALNET_SOLVE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chordalnet/chordal.hpp"
#include "chordalnet/encoder.hpp"
#include "chordalnet/scoring.hpp"

namespace chordalnet {

// Independent per-item verification of a network against a score table;
// never trusts upstream flags.
struct Certificate {
    bool coverage = false;
    bool maximality = false;
    bool chordality = false;
    bool balancing = false;             // forest acyclic + balancing condition
    bool running_intersection = false;
    bool score_match = false;           // stored score vs Eq.-style recomputation
    std::string detail;                 // first failure, empty when all pass

    bool all_pass() const {
        return coverage && maximality && chordality && balancing &&
               running_intersection && score_match;
    }
};

Certificate certify(const ChordalNetwork& net, const ScoreTable& table);

struct SolveResult {
    ChordalNetwork network;
    double objective = 0.0;            // real network score
    std::int64_t objective_int = 0;    // scaled integer score
    std::int64_t scale = 1;
    std::string method;                // "oracle" | "external"
    Certificate certificate;
    std::uint64_t visited_graphs = 0;
    std::uint64_t chordal_graphs = 0;
};

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

// Enumerate all 2^(n(n-1)/2) graphs, keep the best-scoring chordal one.
// Ties go to the lexicographically smallest edge set. workers = 0 picks the
// hardware parallelism; allow_large gates n in {7, 8}. `scale` only fills
// the reported integer objective.
SolveResult exhaustive_optimum(const ScoreTable& table, int n, int workers = 1,
                               bool allow_large = false, std::int64_t scale = 1000,
                               const ProgressFn& progress = nullptr);

// External MaxSAT solver invocation: `command_template` with `{}` replaced
// by the instance path. Expected stdout: an `s` status line plus `v` model
// line(s) of signed literals (a single 0/1 string of instance length is
// also understood).
struct SolverCommand {
    std::string command_template;
};

Assignment run_external(const Encoding& enc, const SolverCommand& cmd,
                        const std::string& instance_path);

std::string solve_report_json(const SolveResult& result);
std::string certificate_json(const Certificate& cert);
ChordalNetwork network_from_json(const std::string& json_text, int n_vars_hint = 0);

} // namespace chordalnet

#endif
