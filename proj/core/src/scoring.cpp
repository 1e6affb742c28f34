#include "chordalnet/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <thread>

#include "chordalnet/errors.hpp"

namespace chordalnet {

namespace {

std::string subset_label(NodeSet s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int v) {
        if (!first) out += ',';
        out += std::to_string(v);
        first = false;
    });
    return out + "}";
}

double log_gamma(double x) {
#ifdef __GLIBC__
    int sign = 0;
    return lgamma_r(x, &sign); // all arguments here are positive
#else
    return std::lgamma(x);
#endif
}

// Enough fractional digits that parsing recovers the exact double, never
// fewer than six.
std::string format_score(double v) {
    int prec = 6;
    if (v != 0.0) {
        int mag = static_cast<int>(std::floor(std::log10(std::fabs(v))));
        prec = std::max(6, 16 - mag);
    }
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, prec);
    if (ec != std::errc()) throw Error("score formatting failed");
    return std::string(buf, ptr);
}

int effective_cap(int n, int cap) { return (cap < 1 || cap > n) ? n : cap; }

} // namespace

std::vector<NodeSet> canonical_subsets(int n, int cap) {
    cap = effective_cap(n, cap);
    std::vector<NodeSet> out;
    std::vector<int> comb;
    for (int k = 1; k <= cap; ++k) {
        comb.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
        for (;;) {
            NodeSet s;
            for (int v : comb) s.add(v);
            out.push_back(s);
            // next k-combination in lexicographic order
            int i = k - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

double log_marginal(const ContingencyTable& table, const PriorSpec& prior) {
    const double a_cell = prior.per_cell_pseudocount;
    if (!(a_cell > 0.0)) throw InputError("per-cell pseudocount must be positive");
    const double k = static_cast<double>(table.cells.size());
    const double alpha = k * a_cell;

    double lp = log_gamma(alpha) - log_gamma(static_cast<double>(table.total) + alpha);
    for (std::int64_t c : table.cells) {
        if (c < 0) throw InputError("negative contingency count");
        if (c != 0) lp += log_gamma(static_cast<double>(c) + a_cell) - log_gamma(a_cell);
    }
    if (table.total == 0) return 0.0; // integral of the prior alone
    if (!std::isfinite(lp)) throw Error("non-finite log marginal");
    return std::min(lp, 0.0);
}

ScoreTable::ScoreTable(int n_vars, int max_subset_size)
    : n_vars_(n_vars), cap_(effective_cap(n_vars, max_subset_size)) {
    if (n_vars < 1 || n_vars > NodeSet::kMaxNodes)
        throw InputError("variable count must be in [1, " +
                         std::to_string(NodeSet::kMaxNodes) + "]");
}

void ScoreTable::set(NodeSet s, double v) { entries_[s.mask()] = v; }

double ScoreTable::score(NodeSet s) const {
    auto it = entries_.find(s.mask());
    if (it == entries_.end())
        throw InputError("score table has no entry for subset " + subset_label(s));
    return it->second;
}

std::optional<double> ScoreTable::try_score(NodeSet s) const {
    auto it = entries_.find(s.mask());
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

IntScoreTable::IntScoreTable(int n_vars, int max_subset_size, std::int64_t scale)
    : n_vars_(n_vars), cap_(effective_cap(n_vars, max_subset_size)), scale_(scale) {
    if (scale < 1) throw InputError("scale factor must be >= 1");
}

void IntScoreTable::set(NodeSet s, std::int64_t v) { entries_[s.mask()] = v; }

std::int64_t IntScoreTable::score(NodeSet s) const {
    auto it = entries_.find(s.mask());
    if (it == entries_.end())
        throw InputError("integer score table has no entry for subset " + subset_label(s));
    return it->second;
}

ScoreTable build_score_table(const Dataset& dataset, const PriorSpec& prior,
                             int max_subset_size, int workers) {
    const int n = dataset.n_vars();
    if (n > NodeSet::kMaxNodes)
        throw InputError("dataset has " + std::to_string(n) + " variables, cap is " +
                         std::to_string(NodeSet::kMaxNodes));
    if (!(prior.per_cell_pseudocount > 0.0))
        throw InputError("per-cell pseudocount must be positive");

    std::vector<NodeSet> subsets = canonical_subsets(n, max_subset_size);
    std::vector<double> scores(subsets.size());

    if (workers < 1) {
        unsigned hc = std::thread::hardware_concurrency();
        workers = hc > 0 ? static_cast<int>(hc) : 1;
    }
    workers = std::min<int>(workers, static_cast<int>(subsets.size()));

    auto worker = [&](std::atomic<std::size_t>& next) {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= subsets.size()) return;
            scores[i] = log_marginal(contingency(dataset, subsets[i]), prior);
        }
    };

    if (workers <= 1) {
        std::atomic<std::size_t> next{0};
        worker(next);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back([&] { worker(next); });
        for (std::thread& t : pool) t.join();
    }

    ScoreTable table(n, max_subset_size);
    for (std::size_t i = 0; i < subsets.size(); ++i) table.set(subsets[i], scores[i]);
    return table;
}

double network_score(const ScoreTable& table, std::span<const NodeSet> cliques,
                     std::span<const NodeSet> separators) {
    double v = 0.0;
    for (NodeSet c : cliques) v += table.score(c);
    for (NodeSet s : separators) v -= table.score(s);
    return v;
}

std::int64_t network_score(const IntScoreTable& table, std::span<const NodeSet> cliques,
                           std::span<const NodeSet> separators) {
    std::int64_t v = 0;
    for (NodeSet c : cliques) v += table.score(c);
    for (NodeSet s : separators) v -= table.score(s);
    return v;
}

IntScoreTable integer_scale(const ScoreTable& table, std::int64_t factor) {
    if (factor < 1) throw InputError("scale factor must be >= 1");
    IntScoreTable out(table.n_vars(), table.max_subset_size(), factor);
    for (NodeSet s : canonical_subsets(table.n_vars(), table.max_subset_size())) {
        double scaled = table.score(s) * static_cast<double>(factor);
        if (!std::isfinite(scaled) || std::fabs(scaled) > 4.6e18)
            throw InputError("scaled score overflows the integer representation");
        out.set(s, std::llround(scaled)); // rounds half away from zero
    }
    return out;
}

std::string write_score_file(const ScoreTable& table) {
    std::vector<NodeSet> subsets = canonical_subsets(table.n_vars(), table.max_subset_size());
    std::string out = std::to_string(table.n_vars());
    out += '\n';
    out += std::to_string(subsets.size());
    out += '\n';
    for (NodeSet s : subsets) {
        out += format_score(table.score(s));
        out += ' ';
        out += std::to_string(s.size());
        s.for_each([&](int v) {
            out += ' ';
            out += std::to_string(v);
        });
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

long long parse_int(std::string_view tok, std::size_t line_no, const char* what) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw InputError("score file line " + std::to_string(line_no) + ": bad " + what);
    return v;
}

} // namespace

ScoreTable read_score_file(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i)
        if (i == text.size() || text[i] == '\n') {
            lines.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
    if (lines.size() < 2) throw InputError("score file: missing header lines");

    auto head1 = split_ws(lines[0]);
    auto head2 = split_ws(lines[1]);
    if (head1.size() != 1 || head2.size() != 1)
        throw InputError("score file: malformed header");
    int n = static_cast<int>(parse_int(head1[0], 1, "variable count"));
    long long count = parse_int(head2[0], 2, "entry count");
    if (n < 1 || n > NodeSet::kMaxNodes)
        throw InputError("score file: variable count out of range");
    if (count != static_cast<long long>(lines.size()) - 2)
        throw InputError("score file: entry count " + std::to_string(count) + " but " +
                         std::to_string(lines.size() - 2) + " entry lines");

    std::unordered_map<std::uint32_t, double> entries;
    int max_size = 1;
    for (std::size_t li = 2; li < lines.size(); ++li) {
        auto toks = split_ws(lines[li]);
        if (toks.size() < 3)
            throw InputError("score file line " + std::to_string(li + 1) + ": too few fields");
        double score = 0.0;
        {
            auto [ptr, ec] = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), score);
            if (ec != std::errc() || ptr != toks[0].data() + toks[0].size() || !std::isfinite(score))
                throw InputError("score file line " + std::to_string(li + 1) + ": bad score");
        }
        int k = static_cast<int>(parse_int(toks[1], li + 1, "subset size"));
        if (k < 1 || static_cast<std::size_t>(k) != toks.size() - 2)
            throw InputError("score file line " + std::to_string(li + 1) +
                             ": subset size does not match the index list");
        NodeSet s;
        int prev = -1;
        for (int j = 0; j < k; ++j) {
            int idx = static_cast<int>(parse_int(toks[static_cast<std::size_t>(j) + 2], li + 1, "index"));
            if (idx < 0 || idx >= n)
                throw InputError("score file line " + std::to_string(li + 1) +
                                 ": index out of range");
            if (idx <= prev)
                throw InputError("score file line " + std::to_string(li + 1) +
                                 ": indices must be ascending");
            prev = idx;
            s.add(idx);
        }
        if (!entries.emplace(s.mask(), score).second)
            throw InputError("score file line " + std::to_string(li + 1) +
                             ": duplicate subset " + subset_label(s));
        max_size = std::max(max_size, k);
    }

    ScoreTable table(n, max_size);
    std::vector<NodeSet> expected = canonical_subsets(n, max_size);
    if (expected.size() != entries.size())
        throw InputError("score file: incomplete table (expected " +
                         std::to_string(expected.size()) + " entries up to size " +
                         std::to_string(max_size) + ", got " +
                         std::to_string(entries.size()) + ")");
    for (NodeSet s : expected) {
        auto it = entries.find(s.mask());
        if (it == entries.end())
            throw InputError("score file: missing subset " + subset_label(s));
        table.set(s, it->second);
    }
    return table;
}

} // namespace chordalnet
