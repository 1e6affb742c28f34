#ifndef CHORDALNET_CHORDAL_HPP
#define CHORDALNET_CHORDAL_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "chordalnet/nodeset.hpp"
#include "chordalnet/scoring.hpp"

namespace chordalnet {

// Undirected graph on nodes 0..n-1, adjacency kept as bit masks.
class Graph {
public:
    explicit Graph(int n);

    int node_count() const { return n_; }
    void add_edge(int i, int j);
    bool has_edge(int i, int j) const { return (adj_[static_cast<std::size_t>(i)] >> j) & 1u; }
    std::uint32_t neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const; // i < j, lexicographic

private:
    int n_;
    std::vector<std::uint32_t> adj_;
};

// Node pairs {i,j}, i < j, in lexicographic order; bit p of an edge mask
// selects pair_list(n)[p]. Used by the exhaustive enumerator.
std::vector<std::pair<int, int>> pair_list(int n);
Graph graph_from_edge_mask(int n, std::uint64_t mask);

struct ChordalityResult {
    bool chordal = false;
    // Perfect elimination ordering witness, filled only when chordal.
    std::vector<int> elimination_order;
};

// Maximum cardinality search + zero fill-in verification.
ChordalityResult is_chordal(const Graph& g);

// Inclusion-maximal cliques (Bron-Kerbosch with pivoting), canonical order.
// Works on any graph; for a chordal graph the result has at most n members.
std::vector<NodeSet> maximal_cliques(const Graph& g);

struct CliqueGraphEdge {
    int a = 0, b = 0;   // clique indices, a < b
    NodeSet label;      // intersection of the endpoint cliques
    int weight = 0;     // |label|
};

// Nodes are cliques; an edge joins every pair with nonempty intersection.
struct CliqueGraph {
    std::vector<NodeSet> cliques;
    std::vector<CliqueGraphEdge> edges;
};

// Requires the cliques to be pairwise incomparable (an antichain).
CliqueGraph clique_graph(std::vector<NodeSet> cliques);

// Acyclic edge subset of a clique graph; self-contained copy of the edges.
struct SpanningForest {
    std::vector<CliqueGraphEdge> edges;
};

// Kruskal on negated weights, ties broken by (a, b); spans every connected
// component of the clique graph.
SpanningForest max_weight_spanning_forest(const CliqueGraph& cg);

int forest_weight(const SpanningForest& forest);

// Edge labels with multiplicity, canonically sorted.
std::vector<NodeSet> separators_of(const SpanningForest& forest);

// Balancing condition: every node of the clique union appears in exactly
// one more clique than it appears in forest edge labels.
bool is_balanced(std::span<const NodeSet> cliques, const SpanningForest& forest);

// Junction-forest (running intersection) property: for every clique pair in
// one forest component, c cap c' is contained in every clique on the path.
bool check_running_intersection(const SpanningForest& forest,
                                std::span<const NodeSet> cliques);

struct ChordalNetwork {
    std::vector<NodeSet> cliques;     // canonical order
    SpanningForest forest;
    std::vector<NodeSet> separators;  // forest edge labels, with multiplicity
    double score = 0.0;
};

// Union of edges(c) over the given cliques, as a graph on n nodes.
Graph union_graph(std::span<const NodeSet> cliques, int n);

// Maximal cliques -> clique graph -> max weight spanning forest ->
// separators -> score. Throws InputError on a non-chordal input.
ChordalNetwork network_from_graph(const Graph& g, const ScoreTable& table);

// Chordal by construction: a random graph is closed under a random
// elimination ordering by filling in every vertex's later neighborhood.
// Deterministic in the seed.
Graph random_chordal(int n, double density, std::uint64_t seed);

} // namespace chordalnet

#endif
