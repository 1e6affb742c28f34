#include <doctest.h>

#include <algorithm>
#include <set>

#include "chordalnet/chordal.hpp"
#include "chordalnet/errors.hpp"
#include "chordalnet/rng.hpp"
#include "oracles.hpp"

using namespace chordalnet;

namespace {

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

ScoreTable mask_table(int n) {
    ScoreTable t(n, n);
    for (NodeSet s : canonical_subsets(n, n))
        t.set(s, -1.0 - 0.01 * static_cast<double>(s.mask()));
    return t;
}

} // namespace

TEST_SUITE("chordal") {

TEST_CASE("complete graphs are chordal, chordless 4-cycles are not") {
    CHECK(is_chordal(complete_graph(4)).chordal);
    CHECK_FALSE(is_chordal(cycle_graph(4)).chordal);
    CHECK_FALSE(is_chordal(cycle_graph(5)).chordal);
    Graph chorded = cycle_graph(4);
    chorded.add_edge(0, 2);
    CHECK(is_chordal(chorded).chordal);
}

TEST_CASE("61 of the 64 graphs on 4 nodes are chordal") {
    int chordal = 0, chordless_cycles = 0;
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        Graph g = graph_from_edge_mask(4, mask);
        if (is_chordal(g).chordal)
            ++chordal;
        else
            ++chordless_cycles;
    }
    CHECK(chordal == 61);
    CHECK(chordless_cycles == 3);
}

TEST_CASE("mcs test agrees with explicit cycle enumeration up to n = 5") {
    for (int n = 1; n <= 5; ++n) {
        const int m = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            Graph g = graph_from_edge_mask(n, mask);
            CHECK(is_chordal(g).chordal == testoracle::chordal_by_cycle_enumeration(g));
        }
    }
}

TEST_CASE("the chordality witness is a perfect elimination ordering") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        int n = rng.range(1, 12);
        Graph g = random_chordal(n, rng.unit(), rng.next_u64());
        ChordalityResult r = is_chordal(g);
        REQUIRE(r.chordal);
        CHECK(testoracle::is_peo(g, r.elimination_order));
    }
}

TEST_CASE("maximal cliques on hand graphs") {
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(maximal_cliques(path) ==
          std::vector<NodeSet>{NodeSet::of({0, 1}), NodeSet::of({1, 2})});

    CHECK(maximal_cliques(complete_graph(4)) ==
          std::vector<NodeSet>{NodeSet::of({0, 1, 2, 3})});

    Graph empty(3);
    CHECK(maximal_cliques(empty) ==
          std::vector<NodeSet>{NodeSet::of({0}), NodeSet::of({1}), NodeSet::of({2})});
}

TEST_CASE("maximal cliques match subset enumeration on all small graphs") {
    for (int n = 1; n <= 4; ++n) {
        const int m = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            Graph g = graph_from_edge_mask(n, mask);
            CHECK(maximal_cliques(g) == testoracle::cliques_by_enumeration(g));
        }
    }
}

TEST_CASE("chordal graphs have at most n maximal cliques") {
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.range(2, 12);
        Graph g = random_chordal(n, rng.unit(), rng.next_u64());
        CHECK(maximal_cliques(g).size() <= static_cast<std::size_t>(n));
    }
}

TEST_CASE("clique graph edges, labels and weights") {
    // three cliques sharing one node
    CliqueGraph star = clique_graph(
        {NodeSet::of({0, 1}), NodeSet::of({1, 2}), NodeSet::of({1, 3})});
    CHECK(star.edges.size() == 3);
    for (const CliqueGraphEdge& e : star.edges) {
        CHECK(e.label == NodeSet::of({1}));
        CHECK(e.weight == 1);
    }

    CliqueGraph disjoint = clique_graph({NodeSet::of({0, 1}), NodeSet::of({2, 3})});
    CHECK(disjoint.edges.empty());

    CliqueGraph chain = clique_graph(
        {NodeSet::of({0, 1, 2}), NodeSet::of({1, 2, 3}), NodeSet::of({2, 3, 4})});
    REQUIRE(chain.edges.size() == 3);
    std::multiset<int> weights;
    for (const CliqueGraphEdge& e : chain.edges) weights.insert(e.weight);
    CHECK(weights == std::multiset<int>{1, 2, 2});

    CHECK_THROWS_AS(clique_graph({NodeSet::of({0}), NodeSet::of({0, 1})}), InputError);
}

TEST_CASE("kruskal picks the heavy chain edges") {
    CliqueGraph chain = clique_graph(
        {NodeSet::of({0, 1, 2}), NodeSet::of({1, 2, 3}), NodeSet::of({2, 3, 4})});
    SpanningForest f = max_weight_spanning_forest(chain);
    REQUIRE(f.edges.size() == 2);
    CHECK(forest_weight(f) == 4);
    CHECK(separators_of(f) ==
          std::vector<NodeSet>{NodeSet::of({1, 2}), NodeSet::of({2, 3})});
}

TEST_CASE("star separators are the same multiset for any spanning tree") {
    CliqueGraph star = clique_graph(
        {NodeSet::of({0, 1}), NodeSet::of({1, 2}), NodeSet::of({1, 3})});
    SpanningForest kruskal = max_weight_spanning_forest(star);
    CHECK(separators_of(kruskal) ==
          std::vector<NodeSet>{NodeSet::of({1}), NodeSet::of({1})});

    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        SpanningForest f = testoracle::random_spanning_forest(star, rng);
        CHECK(separators_of(f) == separators_of(kruskal));
    }
}

TEST_CASE("single clique yields an empty forest") {
    CliqueGraph cg = clique_graph({NodeSet::of({0, 1, 2})});
    CHECK(max_weight_spanning_forest(cg).edges.empty());
}

TEST_CASE("balancing condition per-node counts") {
    std::vector<NodeSet> cliques = {NodeSet::of({0, 1, 2}), NodeSet::of({1, 2, 3}),
                                    NodeSet::of({2, 3, 4})};
    CliqueGraph cg = clique_graph(cliques);
    SpanningForest good = max_weight_spanning_forest(cg);
    CHECK(is_balanced(cliques, good));

    // take the {1,2} edge plus the weight-1 edge {2}, skipping {2,3}
    SpanningForest bad;
    for (const CliqueGraphEdge& e : cg.edges)
        if (e.weight == 1 || e.label == NodeSet::of({1, 2})) bad.edges.push_back(e);
    REQUIRE(bad.edges.size() == 2);
    CHECK_FALSE(is_balanced(cliques, bad));

    std::vector<NodeSet> single = {NodeSet::of({0, 1})};
    CHECK(is_balanced(single, SpanningForest{}));
}

TEST_CASE("running intersection holds for kruskal and fails for the detour") {
    std::vector<NodeSet> cliques = {NodeSet::of({0, 1, 2}), NodeSet::of({1, 2, 3}),
                                    NodeSet::of({2, 3, 4})};
    CliqueGraph cg = clique_graph(cliques);
    CHECK(check_running_intersection(max_weight_spanning_forest(cg), cliques));

    SpanningForest detour; // {1,2} and {2}: path between the last two misses node 3
    for (const CliqueGraphEdge& e : cg.edges)
        if (e.weight == 1 || e.label == NodeSet::of({1, 2})) detour.edges.push_back(e);
    CHECK_FALSE(check_running_intersection(detour, cliques));

    SpanningForest one_edge;
    one_edge.edges.push_back(cg.edges.front());
    CHECK(check_running_intersection(one_edge, cliques));
}

TEST_CASE("network assembly from graphs") {
    ScoreTable t = mask_table(3);
    Graph empty(3);
    ChordalNetwork net = network_from_graph(empty, t);
    CHECK(net.cliques.size() == 3);
    CHECK(net.separators.empty());
    CHECK(net.score == t.score(NodeSet::of({0})) + t.score(NodeSet::of({1})) +
                           t.score(NodeSet::of({2})));

    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    ChordalNetwork pn = network_from_graph(path, t);
    CHECK(pn.score == t.score(NodeSet::of({0, 1})) + t.score(NodeSet::of({1, 2})) -
                          t.score(NodeSet::of({1})));

    CHECK_THROWS_AS(network_from_graph(cycle_graph(4), mask_table(4)), InputError);
}

TEST_CASE("random chordal generation is chordal and deterministic") {
    Graph one = random_chordal(1, 0.5, 42);
    CHECK(one.node_count() == 1);
    CHECK(one.edge_count() == 0);

    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.range(1, 14);
        double density = rng.unit();
        std::uint64_t seed = rng.next_u64();
        Graph g = random_chordal(n, density, seed);
        CHECK(is_chordal(g).chordal);
        Graph again = random_chordal(n, density, seed);
        CHECK(g.edges() == again.edges());
    }

    CHECK(random_chordal(8, 0.5, 1).edges() != random_chordal(8, 0.5, 2).edges());
}

TEST_CASE("balancing characterizes maximum weight spanning forests") {
    Rng rng(35);
    int balanced_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.range(2, 10);
        Graph g = random_chordal(n, 0.2 + 0.6 * rng.unit(), rng.next_u64());
        std::vector<NodeSet> cliques = maximal_cliques(g);
        CliqueGraph cg = clique_graph(cliques);
        SpanningForest kruskal = max_weight_spanning_forest(cg);
        const int max_w = forest_weight(kruskal);

        CHECK(is_balanced(cliques, kruskal));                    // max -> balanced
        CHECK(check_running_intersection(kruskal, cliques));     // junction forest

        for (int f = 0; f < 30; ++f) {
            SpanningForest forest = testoracle::random_spanning_forest(cg, rng);
            bool balanced = is_balanced(cliques, forest);
            CHECK(balanced == (forest_weight(forest) == max_w));
            if (balanced) {
                ++balanced_seen;
                CHECK(separators_of(forest) == separators_of(kruskal));
            }

            // the balanced => maximum-weight direction holds for arbitrary
            // acyclic subsets, not only spanning ones
            SpanningForest subset;
            for (const CliqueGraphEdge& e : cg.edges)
                if (rng.chance(0.5)) subset.edges.push_back(e);
            std::vector<int> parent(cliques.size());
            for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
            auto find = [&](int v) {
                while (parent[static_cast<std::size_t>(v)] != v)
                    v = parent[static_cast<std::size_t>(v)];
                return v;
            };
            bool acyclic = true;
            for (const CliqueGraphEdge& e : subset.edges) {
                int ra = find(e.a), rb = find(e.b);
                if (ra == rb) {
                    acyclic = false;
                    break;
                }
                parent[static_cast<std::size_t>(ra)] = rb;
            }
            if (acyclic && is_balanced(cliques, subset))
                CHECK(forest_weight(subset) == max_w);
        }
    }
    CHECK(balanced_seen > 0);
}

} // TEST_SUITE
