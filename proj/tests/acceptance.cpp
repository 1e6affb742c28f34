// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 4 is skipped (not failed) when no external MaxSAT
// solver is configured; everything else runs standalone.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "chordalnet/chordal.hpp"
#include "chordalnet/cli.hpp"
#include "chordalnet/dataset.hpp"
#include "chordalnet/encoder.hpp"
#include "chordalnet/errors.hpp"
#include "chordalnet/rng.hpp"
#include "chordalnet/scoring.hpp"
#include "chordalnet/solve.hpp"
#include "oracles.hpp"

using namespace chordalnet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    enum Status { kPass, kFail, kSkip } status = kFail;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Corpus {
    std::vector<Graph> graphs;
};

Corpus make_corpus() {
    Corpus corpus;
    const double densities[] = {0.15, 0.3, 0.5, 0.7, 0.85};
    for (int i = 0; i < 550; ++i) {
        int n = 2 + (i % 11); // n in [2, 12]
        double density = densities[i % 5];
        corpus.graphs.push_back(random_chordal(n, density, 9000 + static_cast<std::uint64_t>(i)));
    }
    return corpus;
}

// Criterion 1: over the seeded corpus, (a) every Kruskal forest is
// balanced, (b) a random spanning forest is balanced iff it has maximum
// weight, (c) all balanced forests of one clique graph share that weight.
Outcome criterion1(const Corpus& corpus) {
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t forests = 0;
    for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
        const Graph& g = corpus.graphs[gi];
        std::vector<NodeSet> cliques = maximal_cliques(g);
        CliqueGraph cg = clique_graph(cliques);
        SpanningForest kruskal = max_weight_spanning_forest(cg);
        const int max_weight = forest_weight(kruskal);

        if (!is_balanced(cliques, kruskal))
            return {Outcome::kFail, "Kruskal forest not balanced on corpus graph " +
                                        std::to_string(gi)};

        Rng rng(77000 + static_cast<std::uint64_t>(gi));
        for (int f = 0; f < 100; ++f) {
            SpanningForest forest = testoracle::random_spanning_forest(cg, rng);
            ++forests;
            const bool balanced = is_balanced(cliques, forest);
            const bool maximum = forest_weight(forest) == max_weight;
            if (balanced != maximum)
                return {Outcome::kFail,
                        "balanced <-> max-weight equivalence failed on graph " +
                            std::to_string(gi)};
            if (balanced && forest_weight(forest) != max_weight)
                return {Outcome::kFail, "balanced forests disagree on weight"};
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0)
        return {Outcome::kFail, "took " + std::to_string(dt) + " s (budget 60 s)"};
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%zu graphs, %llu random forests, zero counterexamples (%.1f s)",
                  corpus.graphs.size(), static_cast<unsigned long long>(forests), dt);
    return {Outcome::kPass, buf};
}

// Criterion 2: log_marginal vs the sequential predictive-chain oracle.
Outcome criterion2() {
    Rng rng(880);
    for (int t = 0; t < 1000; ++t) {
        int subset_size = rng.range(1, 3);
        int k = 1;
        for (int i = 0; i < subset_size; ++i) k *= rng.range(2, 4);
        std::vector<std::int64_t> cells = testoracle::random_cells(rng, k, 10000);
        double alpha = rng.chance(0.5) ? 0.5 : 0.1 + 2.0 * rng.unit();

        ContingencyTable table;
        table.subset = NodeSet::of({0});
        table.arities = {k};
        table.total = 0;
        for (std::int64_t c : cells) table.total += c;
        table.cells = cells;

        double got = log_marginal(table, PriorSpec{alpha});
        double want = testoracle::sequential_log_marginal(cells, alpha);
        if (std::fabs(got - want) > 1e-9 * std::max(1.0, std::fabs(want)))
            return {Outcome::kFail,
                    "relative error above 1e-9 on table " + std::to_string(t)};

        std::vector<std::int64_t> zeros(static_cast<std::size_t>(k), 0);
        table.cells = zeros;
        table.total = 0;
        if (log_marginal(table, PriorSpec{alpha}) != 0.0)
            return {Outcome::kFail, "all-zero table does not score exactly 0"};
    }
    return {Outcome::kPass, "1000 random tables within 1e-9 relative, zero-count tables exact"};
}

// Criterion 3: encoding soundness across all 64 graphs on 4 nodes.
Outcome criterion3() {
    Rng rng(881);
    Dataset data = load_dataset(testoracle::random_csv(rng, 4, 120));
    ScoreTable table = build_score_table(data, PriorSpec{}, 0);
    IntScoreTable scaled = integer_scale(table, 1000);
    Encoding enc = build_encoding(scaled);

    int chordal_count = 0, cycle_count = 0;
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        Graph g = graph_from_edge_mask(4, mask);
        if (is_chordal(g).chordal) {
            ++chordal_count;
            ChordalNetwork net = network_from_graph(g, table);
            Assignment a = canonical_assignment(net, enc);
            if (find_violated_hard(enc, a))
                return {Outcome::kFail,
                        "canonical assignment violates a hard clause (mask " +
                            std::to_string(mask) + ")"};
            std::int64_t want = network_score(scaled, net.cliques, net.separators);
            if (objective_of(enc, a) != want)
                return {Outcome::kFail, "offset-adjusted objective mismatch (mask " +
                                            std::to_string(mask) + ")"};
        } else {
            ++cycle_count;
            Assignment a(enc.var_count);
            for (auto [u, v] : g.edges()) a.set_lit(enc.vars.e_var(u, v), true);
            auto [lo, hi] = enc.section_range(Section::chordality);
            bool violated = false;
            for (std::uint32_t ci = lo; ci < hi && !violated; ++ci)
                violated = !clause_satisfied(enc.hard[ci], a);
            if (!violated)
                return {Outcome::kFail, "chordless cycle not caught by a chordality clause"};
        }
    }
    if (chordal_count != 61 || cycle_count != 3)
        return {Outcome::kFail, "expected 61 chordal / 3 chordless graphs"};
    return {Outcome::kPass,
            "61 chordal graphs sound with exact objectives; 3 chordless 4-cycles rejected"};
}

// Criterion 4: external MaxSAT optimum equals the exhaustive oracle's.
Outcome criterion4() {
    std::string solver;
    if (const char* env = std::getenv("CHORDALNET_SOLVER"); env && *env) {
        solver = env;
    } else if (std::system("python3 -c 'import scipy.optimize' >/dev/null 2>&1") == 0) {
        solver = "python3 " CHORDALNET_MILP_ADAPTER " {}";
    } else {
        return {Outcome::kSkip, "no external MaxSAT solver configured "
                                "(set CHORDALNET_SOLVER=\"cmd {}\")"};
    }

    fs::path dir = fs::temp_directory_path() / "chordalnet-acceptance";
    fs::create_directories(dir);
    auto t0 = std::chrono::steady_clock::now();

    // Independent instances; spread the solver runs over the hardware.
    std::vector<std::string> failures(20);
    std::atomic<int> next_seed{1};
    auto work = [&] {
        for (;;) {
            int seed = next_seed.fetch_add(1);
            if (seed > 20) return;
            std::string tag = "seed " + std::to_string(seed) + ": ";
            try {
                Rng rng(static_cast<std::uint64_t>(seed));
                Dataset data = load_dataset(testoracle::random_csv(rng, 5, 200));
                ScoreTable table = build_score_table(data, PriorSpec{}, 0);
                IntScoreTable scaled = integer_scale(table, 1000);
                Encoding enc = build_encoding(scaled);

                fs::path instance = dir / ("agree-" + std::to_string(seed) + ".wcnf");
                std::ofstream(instance) << emit_wcnf(enc);

                Assignment model = run_external(enc, SolverCommand{solver}, instance.string());
                std::error_code ec;
                fs::remove(instance, ec);

                DecodedNetwork decoded = decode_model(enc, model, scaled);
                SolveResult oracle = exhaustive_optimum(table, 5, 1);

                if (decoded.objective != oracle.objective_int) {
                    failures[static_cast<std::size_t>(seed - 1)] =
                        tag + "external objective " + std::to_string(decoded.objective) +
                        " != oracle " + std::to_string(oracle.objective_int);
                    continue;
                }
                decoded.network.score = network_score(table, decoded.network.cliques,
                                                      decoded.network.separators);
                Certificate ext_cert = certify(decoded.network, table);
                if (!ext_cert.all_pass() || !oracle.certificate.all_pass())
                    failures[static_cast<std::size_t>(seed - 1)] =
                        tag + "certificate failed: " + ext_cert.detail +
                        oracle.certificate.detail;
            } catch (const std::exception& e) {
                failures[static_cast<std::size_t>(seed - 1)] = tag + e.what();
            }
        }
    };
    unsigned hc = std::thread::hardware_concurrency();
    int pool_size = std::max(1, std::min<int>(4, static_cast<int>(hc)));
    std::vector<std::thread> pool;
    for (int w = 0; w < pool_size; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();

    for (const std::string& f : failures)
        if (!f.empty()) return {Outcome::kFail, f};
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "20 datasets agree exactly (integer objectives), certificates all-pass (%.1f s)",
                  seconds_since(t0));
    return {Outcome::kPass, buf};
}

// Criterion 5: heart-scale oracle search space and instance size.
Outcome criterion5() {
    Rng rng(882);
    fs::path dir = fs::temp_directory_path() / "chordalnet-acceptance";
    fs::create_directories(dir);
    fs::path csv = dir / "heart-scale.csv";
    std::ofstream(csv) << testoracle::random_csv(rng, 6, 250);
    fs::path scores = dir / "heart-scale.scores";
    fs::path report = dir / "heart-scale.json";
    fs::path wcnf = dir / "heart-scale.wcnf";

    RunConfig score_cfg;
    score_cfg.subcommand = "score";
    score_cfg.input_path = csv.string();
    score_cfg.output_path = scores.string();
    if (cmd_score(score_cfg) != 0) return {Outcome::kFail, "cmd_score failed"};

    RunConfig solve_cfg;
    solve_cfg.subcommand = "solve";
    solve_cfg.input_path = scores.string();
    solve_cfg.output_path = report.string();
    solve_cfg.oracle = true;
    solve_cfg.workers = 0;
    auto t0 = std::chrono::steady_clock::now();
    if (cmd_solve(solve_cfg) != 0) return {Outcome::kFail, "cmd_solve --oracle failed"};
    double solve_dt = seconds_since(t0);
    if (solve_dt >= 10.0)
        return {Outcome::kFail, "oracle took " + std::to_string(solve_dt) + " s (budget 10 s)"};

    nlohmann::json j;
    {
        std::ifstream in(report);
        in >> j;
    }
    std::uint64_t visited = j.at("visited_graphs").get<std::uint64_t>();
    if (visited != 32768)
        return {Outcome::kFail, "visited " + std::to_string(visited) + " graphs, want 2^15"};
    if (!j.at("certificate").at("all_pass").get<bool>())
        return {Outcome::kFail, "oracle certificate failed"};

    RunConfig enc_cfg;
    enc_cfg.subcommand = "encode";
    enc_cfg.input_path = scores.string();
    enc_cfg.output_path = wcnf.string();
    if (cmd_encode(enc_cfg) != 0) return {Outcome::kFail, "cmd_encode failed"};
    std::uintmax_t bytes = fs::file_size(wcnf);
    // megabyte order: within one order of magnitude of the reported 3120 kB
    if (bytes < 312 * 1024ull || bytes > 31200 * 1024ull)
        return {Outcome::kFail, "wcnf is " + std::to_string(bytes) +
                                    " bytes, outside [312 kB, 31.2 MB]"};

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "2^15 graphs visited in %.2f s; wcnf %.1f MB is megabyte-order",
                  solve_dt, static_cast<double>(bytes) / (1024.0 * 1024.0));
    return {Outcome::kPass, buf};
}

// Criterion 6: at most n maximal cliques across the criterion-1 corpus.
Outcome criterion6(const Corpus& corpus) {
    for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
        const Graph& g = corpus.graphs[gi];
        if (maximal_cliques(g).size() > static_cast<std::size_t>(g.node_count()))
            return {Outcome::kFail, "graph " + std::to_string(gi) + " exceeds n cliques"};
    }
    return {Outcome::kPass, "clique count <= n on all " +
                                std::to_string(corpus.graphs.size()) + " corpus graphs"};
}

} // namespace

int main() {
    Corpus corpus = make_corpus();
    struct Entry {
        int number;
        const char* name;
        Outcome outcome;
    };
    std::vector<Entry> entries;
    entries.push_back({1, "balancing theorem suite", criterion1(corpus)});
    entries.push_back({2, "scoring oracle agreement", criterion2()});
    entries.push_back({3, "encoding soundness at n=4", criterion3()});
    entries.push_back({4, "oracle/solver agreement", criterion4()});
    entries.push_back({5, "heart-scale search space and instance size", criterion5()});
    entries.push_back({6, "maximal clique count bound", criterion6(corpus)});

    bool failed = false;
    for (const Entry& e : entries) {
        const char* tag = e.outcome.status == Outcome::kPass   ? "PASS"
                          : e.outcome.status == Outcome::kSkip ? "SKIP"
                                                               : "FAIL";
        std::printf("[%s] criterion %d: %s - %s\n", tag, e.number, e.name,
                    e.outcome.detail.c_str());
        if (e.outcome.status == Outcome::kFail) failed = true;
    }
    return failed ? 1 : 0;
}
