#ifndef CHORDALNET_DATASET_HPP
#define CHORDALNET_DATASET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chordalnet/nodeset.hpp"

namespace chordalnet {

struct VariableSpec {
    std::string name;
    int arity = 2; // number of categories, >= 2
};

// Immutable categorical dataset: every cell is an integer in [0, arity).
class Dataset {
public:
    Dataset(std::vector<VariableSpec> variables, std::vector<std::int32_t> cells);

    int n_vars() const { return static_cast<int>(variables_.size()); }
    std::size_t row_count() const { return rows_; }
    const std::vector<VariableSpec>& variables() const { return variables_; }
    const VariableSpec& variable(int v) const { return variables_[static_cast<std::size_t>(v)]; }

    std::int32_t value(std::size_t row, int var) const {
        return cells_[row * static_cast<std::size_t>(variables_.size()) + static_cast<std::size_t>(var)];
    }

private:
    std::vector<VariableSpec> variables_;
    std::vector<std::int32_t> cells_; // row-major
    std::size_t rows_ = 0;
};

// Marginal cell counts over one variable subset. Cells are indexed in
// row-major order over the subset's members sorted by ascending variable
// index, last member fastest, so that score files and tests are byte-stable.
struct ContingencyTable {
    NodeSet subset;
    std::vector<int> arities;         // per member, ascending variable index
    std::vector<std::int64_t> cells;
    std::int64_t total = 0;
};

// Parse a CSV dataset: one header line of variable names, then rows of
// comma-separated nonnegative integers. When `arities` is absent each
// variable's arity is inferred as max observed value + 1, floored at 2.
Dataset load_dataset(std::string_view csv_text,
                     const std::optional<std::vector<int>>& arities = std::nullopt);

ContingencyTable contingency(const Dataset& dataset, NodeSet subset);

} // namespace chordalnet

#endif
