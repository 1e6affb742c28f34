#include "chordalnet/solve.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "chordalnet/errors.hpp"

namespace chordalnet {

namespace {

using nlohmann::json;

bool forest_is_acyclic(const SpanningForest& forest, std::size_t clique_count) {
    std::vector<int> parent(clique_count);
    for (std::size_t i = 0; i < clique_count; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    for (const CliqueGraphEdge& e : forest.edges) {
        int ra = find(e.a), rb = find(e.b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    return true;
}

} // namespace

Certificate certify(const ChordalNetwork& net, const ScoreTable& table) {
    Certificate cert;
    const int n = table.n_vars();
    auto fail = [&](const std::string& why) {
        if (cert.detail.empty()) cert.detail = why;
    };

    // Structural sanity first: out-of-range members make every later check
    // meaningless.
    for (NodeSet c : net.cliques) {
        if (c.empty()) {
            fail("empty clique");
            return cert;
        }
        bool in_range = true;
        c.for_each([&](int v) { in_range = in_range && v < n; });
        if (!in_range) {
            fail("clique member out of range");
            return cert;
        }
    }
    if (net.cliques.empty()) {
        fail("network has no cliques");
        return cert;
    }

    NodeSet covered;
    for (NodeSet c : net.cliques) covered = covered | c;
    cert.coverage = covered.size() == n;
    if (!cert.coverage) fail("some node is in no clique");

    bool antichain = true;
    for (std::size_t i = 0; i < net.cliques.size() && antichain; ++i)
        for (std::size_t j = i + 1; j < net.cliques.size() && antichain; ++j)
            if (net.cliques[i].subset_of(net.cliques[j]) ||
                net.cliques[j].subset_of(net.cliques[i]))
                antichain = false;

    Graph g = union_graph(net.cliques, n);
    std::vector<NodeSet> sorted(net.cliques.begin(), net.cliques.end());
    std::sort(sorted.begin(), sorted.end(), canonical_less);
    cert.maximality = antichain && maximal_cliques(g) == sorted;
    if (!cert.maximality)
        fail(antichain ? "cliques are not the maximal cliques of their edge union"
                       : "cliques are not an antichain");

    cert.chordality = is_chordal(g).chordal;
    if (!cert.chordality) fail("edge union is not chordal");

    bool labels_ok = true;
    for (const CliqueGraphEdge& e : net.forest.edges) {
        if (e.a < 0 || e.b <= e.a || static_cast<std::size_t>(e.b) >= net.cliques.size()) {
            labels_ok = false;
            break;
        }
        NodeSet expect = net.cliques[static_cast<std::size_t>(e.a)] &
                         net.cliques[static_cast<std::size_t>(e.b)];
        if (expect.empty() || !(e.label == expect)) {
            labels_ok = false;
            break;
        }
    }
    cert.balancing = labels_ok && forest_is_acyclic(net.forest, net.cliques.size()) &&
                     is_balanced(net.cliques, net.forest);
    if (!cert.balancing) fail("forest is not a balanced acyclic edge subset");

    cert.running_intersection =
        labels_ok && check_running_intersection(net.forest, net.cliques);
    if (!cert.running_intersection) fail("running intersection property violated");

    double recomputed = 0.0;
    bool score_computable = true;
    try {
        std::vector<NodeSet> seps = separators_of(net.forest);
        recomputed = network_score(table, net.cliques, seps);
    } catch (const InputError&) {
        score_computable = false;
    }
    cert.score_match = score_computable && std::fabs(recomputed - net.score) <= 1e-9;
    if (!cert.score_match)
        fail(score_computable ? "stored score differs from recomputation" :
                                "score table lacks an entry for a clique or separator");
    return cert;
}

SolveResult exhaustive_optimum(const ScoreTable& table, int n, int workers,
                               bool allow_large, std::int64_t scale,
                               const ProgressFn& progress) {
    if (n < 1) throw InputError("exhaustive oracle needs n >= 1");
    if (n > 8)
        throw InputError("exhaustive oracle is limited to 8 variables (2^28 graphs)");
    if (n >= 7 && !allow_large)
        throw InputError("exhaustive runs for n >= 7 must be explicitly allowed "
                         "(hours of compute at n = 8)");
    if (table.n_vars() != n)
        throw InputError("score table is over " + std::to_string(table.n_vars()) +
                         " variables, not " + std::to_string(n));

    const int m = n * (n - 1) / 2;
    const std::uint64_t total = std::uint64_t{1} << m;

    if (workers < 1) {
        unsigned hc = std::thread::hardware_concurrency();
        workers = hc > 0 ? static_cast<int>(hc) : 1;
    }

    struct Best {
        bool has = false;
        double score = 0.0;
        std::vector<std::pair<int, int>> edges;
        std::uint64_t mask = 0;
    };
    auto better = [](const Best& a, const Best& b) {
        if (!b.has) return a.has;
        if (!a.has) return false;
        if (a.score != b.score) return a.score > b.score;
        return std::lexicographical_compare(a.edges.begin(), a.edges.end(),
                                            b.edges.begin(), b.edges.end());
    };

    const std::uint64_t chunk = std::min<std::uint64_t>(total, 1u << 14);
    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> done{0};
    std::atomic<std::uint64_t> chordal_count{0};
    std::mutex merge_mu;
    Best best;

    auto work = [&] {
        Best local;
        std::uint64_t local_chordal = 0;
        for (;;) {
            std::uint64_t c = next_chunk.fetch_add(1);
            std::uint64_t lo = c * chunk;
            if (lo >= total) break;
            std::uint64_t hi = std::min(total, lo + chunk);
            for (std::uint64_t mask = lo; mask < hi; ++mask) {
                Graph g = graph_from_edge_mask(n, mask);
                if (!is_chordal(g).chordal) continue;
                ++local_chordal;
                std::vector<NodeSet> cliques = maximal_cliques(g);
                CliqueGraph cg = clique_graph(cliques);
                SpanningForest forest = max_weight_spanning_forest(cg);
                std::vector<NodeSet> seps = separators_of(forest);
                double score = network_score(table, cliques, seps);
                if (!local.has || score > local.score ||
                    (score == local.score && [&] {
                         auto e = g.edges();
                         return std::lexicographical_compare(e.begin(), e.end(),
                                                             local.edges.begin(),
                                                             local.edges.end());
                     }())) {
                    local.has = true;
                    local.score = score;
                    local.edges = g.edges();
                    local.mask = mask;
                }
            }
            std::uint64_t d = done.fetch_add(hi - lo) + (hi - lo);
            if (progress) {
                std::lock_guard<std::mutex> lock(merge_mu);
                progress(d, total);
            }
        }
        chordal_count.fetch_add(local_chordal);
        std::lock_guard<std::mutex> lock(merge_mu);
        if (better(local, best)) best = local;
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    SolveResult result;
    result.method = "oracle";
    result.visited_graphs = total;
    result.chordal_graphs = chordal_count.load();
    result.network = network_from_graph(graph_from_edge_mask(n, best.mask), table);
    result.objective = result.network.score;
    result.scale = scale;
    IntScoreTable int_table = integer_scale(table, scale);
    result.objective_int =
        network_score(int_table, result.network.cliques, result.network.separators);
    result.certificate = certify(result.network, table);
    if (!result.certificate.all_pass())
        throw VerifyError("oracle produced a network that fails certification: " +
                          result.certificate.detail);
    return result;
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

} // namespace

Assignment run_external(const Encoding& enc, const SolverCommand& cmd,
                        const std::string& instance_path) {
    std::size_t hole = cmd.command_template.find("{}");
    if (hole == std::string::npos)
        throw InputError("solver command template must contain the {} placeholder");
    std::string command = cmd.command_template.substr(0, hole) + shell_quote(instance_path) +
                          cmd.command_template.substr(hole + 2);

    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw SolverError("failed to launch solver: " + command);
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
    int rc = pclose(pipe);

    std::string status;
    std::vector<std::string> model_tokens;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= output.size(); ++i) {
        if (i != output.size() && output[i] != '\n') continue;
        std::string_view line(output.data() + start, i - start);
        start = i + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.size() >= 2 && line[0] == 's' && line[1] == ' ') {
            status = std::string(line.substr(2));
            while (!status.empty() && status.back() == ' ') status.pop_back();
        } else if (line.size() >= 2 && line[0] == 'v' && line[1] == ' ') {
            std::string_view rest = line.substr(2);
            std::size_t p = 0;
            while (p < rest.size()) {
                while (p < rest.size() && rest[p] == ' ') ++p;
                std::size_t tok = p;
                while (p < rest.size() && rest[p] != ' ') ++p;
                if (p > tok) model_tokens.emplace_back(rest.substr(tok, p - tok));
            }
        }
    }

    if (status.empty()) {
        if (rc != 0)
            throw SolverError("solver failure (exit status " + std::to_string(rc) +
                              ", no status line)");
        throw SolverError("solver produced no status line");
    }
    if (status == "UNSATISFIABLE" || status == "UNSAT")
        throw SolverError("solver reports UNSAT; encoding bug suspected (a complete score "
                          "table always admits the fully disconnected network)");
    if (status != "OPTIMUM FOUND")
        throw SolverError("solver did not prove optimality (status: " + status + ")");
    if (model_tokens.empty()) throw SolverError("solver printed no model line");

    Assignment a(enc.var_count);

    // Newer solvers print the model as one 0/1 string instead of signed
    // literals; accept that dialect when the length matches.
    if (model_tokens.size() == 1 &&
        model_tokens[0].size() == static_cast<std::size_t>(enc.var_count) &&
        model_tokens[0].find_first_not_of("01") == std::string::npos &&
        enc.var_count > 1) {
        for (int v = 1; v <= enc.var_count; ++v)
            a.set_var(v, model_tokens[0][static_cast<std::size_t>(v - 1)] == '1');
        return a;
    }

    for (const std::string& tok : model_tokens) {
        long long lit = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw SolverError("unparseable model token '" + tok + "'");
        if (lit == 0) continue; // optional terminator
        long long v = lit > 0 ? lit : -lit;
        if (v > enc.var_count)
            throw SolverError("model literal " + tok + " exceeds the variable count");
        a.set_var(static_cast<int>(v), lit > 0);
    }
    return a;
}

namespace {

json nodeset_to_json(NodeSet s) {
    json arr = json::array();
    s.for_each([&](int v) { arr.push_back(v); });
    return arr;
}

NodeSet nodeset_from_json(const json& arr) {
    NodeSet s;
    for (const auto& v : arr) {
        int i = v.get<int>();
        if (i < 0 || i >= NodeSet::kMaxNodes) throw InputError("node index out of range");
        s.add(i);
    }
    return s;
}

json network_to_json(const ChordalNetwork& net, int n_vars) {
    json j;
    j["n_vars"] = n_vars;
    json cliques = json::array();
    for (NodeSet c : net.cliques) cliques.push_back(nodeset_to_json(c));
    j["cliques"] = cliques;
    json forest = json::array();
    for (const CliqueGraphEdge& e : net.forest.edges) {
        json edge;
        edge["a"] = e.a;
        edge["b"] = e.b;
        edge["label"] = nodeset_to_json(e.label);
        forest.push_back(edge);
    }
    j["forest"] = forest;
    json seps = json::array();
    for (NodeSet s : net.separators) seps.push_back(nodeset_to_json(s));
    j["separators"] = seps;
    j["score"] = net.score;
    return j;
}

} // namespace

std::string certificate_json(const Certificate& cert) {
    json j;
    j["coverage"] = cert.coverage;
    j["maximality"] = cert.maximality;
    j["chordality"] = cert.chordality;
    j["balancing"] = cert.balancing;
    j["running_intersection"] = cert.running_intersection;
    j["score_match"] = cert.score_match;
    j["all_pass"] = cert.all_pass();
    j["detail"] = cert.detail;
    return j.dump(2) + "\n";
}

std::string solve_report_json(const SolveResult& result) {
    int n_vars = 0;
    for (NodeSet c : result.network.cliques)
        c.for_each([&](int v) { n_vars = std::max(n_vars, v + 1); });

    json j;
    j["method"] = result.method;
    j["objective"] = result.objective;
    j["objective_int"] = result.objective_int;
    j["scale"] = result.scale;
    j["visited_graphs"] = result.visited_graphs;
    j["chordal_graphs"] = result.chordal_graphs;
    j["network"] = network_to_json(result.network, n_vars);
    json cert;
    cert["coverage"] = result.certificate.coverage;
    cert["maximality"] = result.certificate.maximality;
    cert["chordality"] = result.certificate.chordality;
    cert["balancing"] = result.certificate.balancing;
    cert["running_intersection"] = result.certificate.running_intersection;
    cert["score_match"] = result.certificate.score_match;
    cert["all_pass"] = result.certificate.all_pass();
    cert["detail"] = result.certificate.detail;
    j["certificate"] = cert;
    return j.dump(2) + "\n";
}

ChordalNetwork network_from_json(const std::string& json_text, int) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InputError(std::string("network JSON: ") + e.what());
    }
    try {
        if (j.contains("network")) j = j["network"];
        ChordalNetwork net;
        for (const auto& c : j.at("cliques")) {
            NodeSet s = nodeset_from_json(c);
            if (s.empty()) throw InputError("network JSON: empty clique");
            net.cliques.push_back(s);
        }
        for (const auto& edge : j.at("forest")) {
            CliqueGraphEdge e;
            e.a = edge.at("a").get<int>();
            e.b = edge.at("b").get<int>();
            if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= net.cliques.size() ||
                static_cast<std::size_t>(e.b) >= net.cliques.size() || e.a == e.b)
                throw InputError("network JSON: forest edge index out of range");
            if (e.a > e.b) std::swap(e.a, e.b);
            e.label = net.cliques[static_cast<std::size_t>(e.a)] &
                      net.cliques[static_cast<std::size_t>(e.b)];
            e.weight = e.label.size();
            net.forest.edges.push_back(e);
        }
        net.separators = separators_of(net.forest);
        net.score = j.at("score").get<double>();
        return net;
    } catch (const json::exception& e) {
        throw InputError(std::string("network JSON: ") + e.what());
    }
}

} // namespace chordalnet
