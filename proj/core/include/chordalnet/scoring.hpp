#ifndef CHORDALNET_SCORING_HPP
#define CHORDALNET_SCORING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chordalnet/dataset.hpp"
#include "chordalnet/nodeset.hpp"

namespace chordalnet {

// Symmetric Dirichlet prior: the same pseudocount for every cell of every
// subset's contingency table.
struct PriorSpec {
    double per_cell_pseudocount = 0.5;
};

// All nonempty subsets of {0..n-1} with size <= cap, in canonical order
// (size, then lexicographic member sequence). cap < 1 is treated as n.
std::vector<NodeSet> canonical_subsets(int n, int cap);

// log P_a(X_a) for one subset under the symmetric Dirichlet prior, computed
// entirely in log-gamma space. Exactly 0 when the table holds no
// observations.
double log_marginal(const ContingencyTable& table, const PriorSpec& prior);

// Log marginal likelihood per candidate subset; the only input the
// optimizer needs.
class ScoreTable {
public:
    ScoreTable(int n_vars, int max_subset_size);

    int n_vars() const { return n_vars_; }
    int max_subset_size() const { return cap_; }
    std::size_t size() const { return entries_.size(); }

    void set(NodeSet s, double v);
    double score(NodeSet s) const;               // throws InputError when absent
    std::optional<double> try_score(NodeSet s) const;

    const std::unordered_map<std::uint32_t, double>& entries() const { return entries_; }

private:
    int n_vars_;
    int cap_;
    std::unordered_map<std::uint32_t, double> entries_;
};

class IntScoreTable {
public:
    IntScoreTable(int n_vars, int max_subset_size, std::int64_t scale);

    int n_vars() const { return n_vars_; }
    int max_subset_size() const { return cap_; }
    std::int64_t scale_factor() const { return scale_; }
    std::size_t size() const { return entries_.size(); }

    void set(NodeSet s, std::int64_t v);
    std::int64_t score(NodeSet s) const;

private:
    int n_vars_;
    int cap_;
    std::int64_t scale_;
    std::unordered_map<std::uint32_t, std::int64_t> entries_;
};

// One entry per nonempty subset of size <= max_subset_size. A cap of 0 or
// less means no cap. workers = 0 picks the available hardware parallelism.
ScoreTable build_score_table(const Dataset& dataset, const PriorSpec& prior,
                             int max_subset_size = 0, int workers = 1);

// Sum of clique scores minus sum of separator scores; separators counted
// with multiplicity.
double network_score(const ScoreTable& table, std::span<const NodeSet> cliques,
                     std::span<const NodeSet> separators);
std::int64_t network_score(const IntScoreTable& table, std::span<const NodeSet> cliques,
                           std::span<const NodeSet> separators);

// Round half away from zero, entry by entry.
IntScoreTable integer_scale(const ScoreTable& table, std::int64_t factor = 1000);

// Score file: line 1 = variable count, line 2 = entry count, then one line
// per entry `<score> <k> <i_1> ... <i_k>`, entries in canonical subset
// order. Scores carry enough digits that read(write(t)) == t exactly.
std::string write_score_file(const ScoreTable& table);
ScoreTable read_score_file(std::string_view text);

} // namespace chordalnet

#endif
