#include "chordalnet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "chordalnet/errors.hpp"

namespace chordalnet {

namespace {

// One CSV line -> fields; handles CRLF, no quoting.
std::vector<std::string_view> split_fields(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::int32_t parse_cell(std::string_view field, std::size_t line_no) {
    std::int32_t v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || field.empty())
        throw InputError("line " + std::to_string(line_no) + ": non-integer cell '" +
                         std::string(field) + "'");
    if (v < 0)
        throw InputError("line " + std::to_string(line_no) + ": negative value");
    return v;
}

} // namespace

Dataset::Dataset(std::vector<VariableSpec> variables, std::vector<std::int32_t> cells)
    : variables_(std::move(variables)), cells_(std::move(cells)) {
    if (variables_.empty()) throw InputError("dataset has no variables");
    if (cells_.size() % variables_.size() != 0)
        throw InputError("cell count is not a multiple of the variable count");
    rows_ = cells_.size() / variables_.size();
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].arity < 2)
            throw InputError("variable '" + variables_[i].name + "' has arity < 2");
        for (std::size_t j = i + 1; j < variables_.size(); ++j)
            if (variables_[i].name == variables_[j].name)
                throw InputError("duplicate variable name '" + variables_[i].name + "'");
    }
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t v = 0; v < variables_.size(); ++v) {
            std::int32_t x = cells_[r * variables_.size() + v];
            if (x < 0 || x >= variables_[v].arity)
                throw InputError("row " + std::to_string(r + 1) + ": value " +
                                 std::to_string(x) + " >= arity of variable '" +
                                 variables_[v].name + "'");
        }
}

Dataset load_dataset(std::string_view csv_text,
                     const std::optional<std::vector<int>>& arities) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= csv_text.size(); ++i) {
        if (i == csv_text.size() || csv_text[i] == '\n') {
            lines.push_back(csv_text.substr(start, i - start));
            start = i + 1;
        }
    }
    // A trailing newline produces one empty tail entry; drop it.
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw InputError("line 1: empty header");

    std::vector<std::string_view> header = split_fields(lines[0]);
    if (header.size() == 1 && header[0].empty())
        throw InputError("line 1: empty header");
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i].empty())
            throw InputError("line 1: empty variable name in column " + std::to_string(i + 1));

    const std::size_t n = header.size();
    if (arities && arities->size() != n)
        throw InputError("arity declarations do not match the header width");

    std::vector<std::int32_t> cells;
    cells.reserve((lines.size() - 1) * n);
    std::vector<std::int32_t> max_seen(n, 0);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty() || lines[li] == "\r")
            throw InputError("line " + std::to_string(li + 1) + ": empty row");
        std::vector<std::string_view> fields = split_fields(lines[li]);
        if (fields.size() != n)
            throw InputError("line " + std::to_string(li + 1) + ": expected " +
                             std::to_string(n) + " fields, got " +
                             std::to_string(fields.size()));
        for (std::size_t v = 0; v < n; ++v) {
            std::int32_t x = parse_cell(fields[v], li + 1);
            if (arities && x >= (*arities)[v])
                throw InputError("line " + std::to_string(li + 1) + ": value >= arity for '" +
                                 std::string(header[v]) + "'");
            max_seen[v] = std::max(max_seen[v], x);
            cells.push_back(x);
        }
    }

    std::vector<VariableSpec> vars;
    vars.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        int arity = arities ? (*arities)[v] : std::max(max_seen[v] + 1, 2);
        vars.push_back({std::string(header[v]), arity});
    }
    return Dataset(std::move(vars), std::move(cells));
}

ContingencyTable contingency(const Dataset& dataset, NodeSet subset) {
    if (subset.empty()) throw InputError("contingency: empty subset");
    std::vector<int> members = subset.members();
    if (members.back() >= dataset.n_vars())
        throw InputError("contingency: variable index out of range");

    ContingencyTable t;
    t.subset = subset;
    std::size_t cell_count = 1;
    for (int v : members) {
        t.arities.push_back(dataset.variable(v).arity);
        cell_count *= static_cast<std::size_t>(dataset.variable(v).arity);
    }
    t.cells.assign(cell_count, 0);

    // Row-major over ascending members, last member fastest.
    for (std::size_t r = 0; r < dataset.row_count(); ++r) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < members.size(); ++k)
            idx = idx * static_cast<std::size_t>(t.arities[k]) +
                  static_cast<std::size_t>(dataset.value(r, members[k]));
        ++t.cells[idx];
    }
    t.total = static_cast<std::int64_t>(dataset.row_count());
    return t;
}

} // namespace chordalnet
