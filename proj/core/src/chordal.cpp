#include "chordalnet/chordal.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "chordalnet/errors.hpp"
#include "chordalnet/rng.hpp"

namespace chordalnet {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 1 || n > NodeSet::kMaxNodes)
        throw InputError("graph node count must be in [1, " +
                         std::to_string(NodeSet::kMaxNodes) + "]");
}

void Graph::add_edge(int i, int j) {
    if (i == j) throw InputError("self-loop");
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw InputError("edge endpoint out of range");
    adj_[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
    adj_[static_cast<std::size_t>(j)] |= std::uint32_t{1} << i;
}

std::size_t Graph::edge_count() const {
    std::size_t deg = 0;
    for (std::uint32_t m : adj_) deg += static_cast<std::size_t>(std::popcount(m));
    return deg / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
}

std::vector<std::pair<int, int>> pair_list(int n) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
    return out;
}

Graph graph_from_edge_mask(int n, std::uint64_t mask) {
    if (n > 11) throw InputError("edge mask representation limited to 11 nodes");
    Graph g(n);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++p)
            if ((mask >> p) & 1u) g.add_edge(i, j);
    return g;
}

// Maximum cardinality search; the reverse visit order is a perfect
// elimination ordering iff the graph is chordal (zero fill-in check).
ChordalityResult is_chordal(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    std::vector<int> visit_order;
    visit_order.reserve(static_cast<std::size_t>(n));
    std::uint32_t visited = 0;

    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if ((visited >> v) & 1u) continue;
            if (best < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(best)])
                best = v;
        }
        pos[static_cast<std::size_t>(best)] = step;
        visit_order.push_back(best);
        visited |= std::uint32_t{1} << best;
        std::uint32_t nb = g.neighbors(best) & ~visited;
        while (nb) {
            int u = std::countr_zero(nb);
            nb &= nb - 1;
            ++weight[static_cast<std::size_t>(u)];
        }
    }

    // For each vertex: earlier neighbors minus the latest of them must be
    // adjacent to that latest one.
    std::uint32_t seen = 0;
    for (int step = 0; step < n; ++step) {
        int v = visit_order[static_cast<std::size_t>(step)];
        std::uint32_t earlier = g.neighbors(v) & seen;
        seen |= std::uint32_t{1} << v;
        if (earlier == 0) continue;
        int parent = -1;
        std::uint32_t m = earlier;
        while (m) {
            int u = std::countr_zero(m);
            m &= m - 1;
            if (parent < 0 || pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(parent)])
                parent = u;
        }
        std::uint32_t rest = earlier & ~(std::uint32_t{1} << parent);
        if ((rest & ~g.neighbors(parent)) != 0) return {false, {}};
    }

    std::vector<int> peo(visit_order.rbegin(), visit_order.rend());
    return {true, std::move(peo)};
}

namespace {

void bron_kerbosch(const Graph& g, std::uint32_t r, std::uint32_t p, std::uint32_t x,
                   std::vector<NodeSet>& out) {
    if (p == 0 && x == 0) {
        out.push_back(NodeSet::from_mask(r));
        return;
    }
    // Pivot on the vertex of P|X with the most neighbors in P.
    std::uint32_t px = p | x;
    int pivot = -1, best = -1;
    std::uint32_t m = px;
    while (m) {
        int u = std::countr_zero(m);
        m &= m - 1;
        int cnt = std::popcount(p & g.neighbors(u));
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
    }
    std::uint32_t ext = p & ~g.neighbors(pivot);
    while (ext) {
        int v = std::countr_zero(ext);
        ext &= ext - 1;
        std::uint32_t bit = std::uint32_t{1} << v;
        bron_kerbosch(g, r | bit, p & g.neighbors(v), x & g.neighbors(v), out);
        p &= ~bit;
        x |= bit;
    }
}

} // namespace

std::vector<NodeSet> maximal_cliques(const Graph& g) {
    std::vector<NodeSet> out;
    std::uint32_t all = g.node_count() == 32 ? ~std::uint32_t{0}
                                             : (std::uint32_t{1} << g.node_count()) - 1;
    bron_kerbosch(g, 0, all, 0, out);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

CliqueGraph clique_graph(std::vector<NodeSet> cliques) {
    std::sort(cliques.begin(), cliques.end(), canonical_less);
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        if (cliques[i].empty()) throw InputError("clique graph: empty clique");
        for (std::size_t j = i + 1; j < cliques.size(); ++j)
            if (cliques[i].subset_of(cliques[j]) || cliques[j].subset_of(cliques[i]))
                throw InputError("clique graph: cliques must form an antichain");
    }
    CliqueGraph cg;
    cg.cliques = std::move(cliques);
    for (std::size_t i = 0; i < cg.cliques.size(); ++i)
        for (std::size_t j = i + 1; j < cg.cliques.size(); ++j) {
            NodeSet label = cg.cliques[i] & cg.cliques[j];
            if (!label.empty())
                cg.edges.push_back({static_cast<int>(i), static_cast<int>(j), label, label.size()});
        }
    return cg;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

SpanningForest max_weight_spanning_forest(const CliqueGraph& cg) {
    std::vector<std::size_t> order(cg.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Minimum spanning tree on negated weights, i.e. heaviest edge first;
    // ties resolved by lexicographic endpoint indices.
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const CliqueGraphEdge& a = cg.edges[l];
        const CliqueGraphEdge& b = cg.edges[r];
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.a != b.a) return a.a < b.a;
        return a.b < b.b;
    });
    UnionFind uf(cg.cliques.size());
    SpanningForest forest;
    for (std::size_t idx : order) {
        const CliqueGraphEdge& e = cg.edges[idx];
        if (uf.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b)))
            forest.edges.push_back(e);
    }
    std::sort(forest.edges.begin(), forest.edges.end(),
              [](const CliqueGraphEdge& a, const CliqueGraphEdge& b) {
                  return a.a != b.a ? a.a < b.a : a.b < b.b;
              });
    return forest;
}

int forest_weight(const SpanningForest& forest) {
    int w = 0;
    for (const CliqueGraphEdge& e : forest.edges) w += e.weight;
    return w;
}

std::vector<NodeSet> separators_of(const SpanningForest& forest) {
    std::vector<NodeSet> out;
    out.reserve(forest.edges.size());
    for (const CliqueGraphEdge& e : forest.edges) out.push_back(e.label);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

bool is_balanced(std::span<const NodeSet> cliques, const SpanningForest& forest) {
    NodeSet all;
    for (NodeSet c : cliques) all = all | c;
    std::array<int, NodeSet::kMaxNodes> clique_count{}, label_count{};
    for (NodeSet c : cliques) c.for_each([&](int v) { ++clique_count[static_cast<std::size_t>(v)]; });
    for (const CliqueGraphEdge& e : forest.edges)
        e.label.for_each([&](int v) { ++label_count[static_cast<std::size_t>(v)]; });
    bool ok = true;
    all.for_each([&](int v) {
        if (clique_count[static_cast<std::size_t>(v)] !=
            1 + label_count[static_cast<std::size_t>(v)])
            ok = false;
    });
    return ok;
}

bool check_running_intersection(const SpanningForest& forest,
                                std::span<const NodeSet> cliques) {
    const std::size_t m = cliques.size();
    std::vector<std::vector<int>> adj(m);
    for (const CliqueGraphEdge& e : forest.edges) {
        adj[static_cast<std::size_t>(e.a)].push_back(e.b);
        adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    std::vector<int> parent(m);
    for (std::size_t i = 0; i < m; ++i) {
        // BFS tree rooted at i covers every pair (i, j) in one component.
        std::fill(parent.begin(), parent.end(), -2);
        parent[i] = -1;
        std::vector<std::size_t> queue = {i};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            std::size_t v = queue[q];
            for (int u : adj[v])
                if (parent[static_cast<std::size_t>(u)] == -2) {
                    parent[static_cast<std::size_t>(u)] = static_cast<int>(v);
                    queue.push_back(static_cast<std::size_t>(u));
                }
        }
        for (std::size_t j = i + 1; j < m; ++j) {
            if (parent[j] == -2) continue; // different component
            NodeSet need = cliques[i] & cliques[j];
            if (need.empty()) continue;
            for (int at = static_cast<int>(j); at != -1; at = parent[static_cast<std::size_t>(at)])
                if (!need.subset_of(cliques[static_cast<std::size_t>(at)])) return false;
        }
    }
    return true;
}

Graph union_graph(std::span<const NodeSet> cliques, int n) {
    Graph g(n);
    for (NodeSet c : cliques) {
        std::vector<int> ms = c.members();
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j) g.add_edge(ms[i], ms[j]);
    }
    return g;
}

ChordalNetwork network_from_graph(const Graph& g, const ScoreTable& table) {
    ChordalityResult ch = is_chordal(g);
    if (!ch.chordal) throw InputError("network_from_graph: graph is not chordal");
    ChordalNetwork net;
    net.cliques = maximal_cliques(g);
    CliqueGraph cg = clique_graph(net.cliques);
    net.forest = max_weight_spanning_forest(cg);
    net.separators = separators_of(net.forest);
    net.score = network_score(table, net.cliques, net.separators);
    return net;
}

Graph random_chordal(int n, double density, std::uint64_t seed) {
    if (n < 1) throw InputError("random_chordal: n must be >= 1");
    density = std::clamp(density, 0.0, 1.0);
    Rng rng(seed);

    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(density)) g.add_edge(i, j);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    // Eliminate along the random ordering, filling in each vertex's later
    // neighborhood; the result is chordal with `order` as its PEO.
    std::uint32_t remaining = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    for (int v : order) {
        remaining &= ~(std::uint32_t{1} << v);
        std::uint32_t later = g.neighbors(v) & remaining;
        std::vector<int> ms;
        while (later) {
            ms.push_back(std::countr_zero(later));
            later &= later - 1;
        }
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j)
                if (!g.has_edge(ms[i], ms[j])) g.add_edge(ms[i], ms[j]);
    }
    return g;
}

} // namespace chordalnet
