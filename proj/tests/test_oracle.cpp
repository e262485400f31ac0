#include <doctest.h>

#include <sstream>

#include "w123/errors.hpp"
#include "w123/oracle.hpp"
#include "w123/rng.hpp"

using namespace w123;

namespace {

// Plain enumeration of all k^m weightings; the reference for small graphs.
std::optional<int> brute_min_k(const Graph& g, int k_max) {
    const std::size_t m = g.edge_count();
    for (int k = 1; k <= k_max; ++k) {
        EdgeWeighting w(m, 1, k);
        for (;;) {
            if (conflicts(g, w).empty()) return k;
            std::size_t i = 0;
            while (i < m && w[static_cast<EdgeId>(i)] == k) w[static_cast<EdgeId>(i++)] = 1;
            if (i == m) break;
            ++w[static_cast<EdgeId>(i)];
        }
    }
    return std::nullopt;
}

Graph path(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return Graph(n, pairs);
}

}  // namespace

TEST_CASE("minimum k on the standard small graphs") {
    const OracleResult k2 = min_k_weighting(Graph(2, {{0, 1}}), 5);
    CHECK_FALSE(k2.min_k.has_value());
    CHECK(min_k_weighting(path(3), 3).min_k == 1);
    CHECK(min_k_weighting(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), 3).min_k == 3);
    CHECK_FALSE(min_k_weighting(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), 2).min_k.has_value());
    CHECK(min_k_weighting(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 3).min_k == 2);
    CHECK(min_k_weighting(path(4), 3).min_k == 2);
    CHECK_THROWS_AS(min_k_weighting(path(3), 0), InvalidArgument);
}

TEST_CASE("witnesses are proper weightings") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng.below(5);
        const Graph g = graph_from_mask(n, rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1));
        const OracleResult r = min_k_weighting(g, 3);
        if (!r.min_k) continue;
        CHECK(r.witness.valid());
        CHECK(r.witness.max_weight == *r.min_k);
        CHECK(conflicts(g, r.witness).empty());
    }
}

TEST_CASE("backtracking agrees with plain enumeration") {
    // All graphs on four vertices and random ones on five and six.
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        const Graph g = graph_from_mask(4, mask);
        CHECK(min_k_weighting(g, 3).min_k == brute_min_k(g, 3));
    }
    SplitMix64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 5 + rng.below(2);
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < n * (n - 1) / 2; ++i)
            if (rng.uniform() < 0.45) mask |= std::uint64_t{1} << i;
        const Graph g = graph_from_mask(n, mask);
        if (g.edge_count() > 9) continue;
        CHECK(min_k_weighting(g, 3).min_k == brute_min_k(g, 3));
    }
}

TEST_CASE("graph from mask") {
    const Graph g = graph_from_mask(4, 0b100001);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 3));
    CHECK(graph_from_mask(3, 0b111) == Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(graph_from_mask(5, 0).edge_count() == 0);
}

TEST_CASE("min k is monotone in k_max") {
    const Graph g = graph_from_mask(5, 0b1011011101);
    const auto base = min_k_weighting(g, 3).min_k;
    REQUIRE(base.has_value());
    for (int k = *base; k <= 5; ++k) CHECK(min_k_weighting(g, k).min_k == base);
    for (int k = 1; k < *base; ++k) CHECK_FALSE(min_k_weighting(g, k).min_k.has_value());
}

TEST_CASE("small graph sweeps") {
    // Connected labeled graphs: 1, 4, 38, 728 on 2..5 vertices; the single
    // graph on two vertices has one edge and is skipped.
    const SweepReport r3 = sweep_small_graphs(5, 3);
    CHECK(r3.connected_per_n[3] == 4);
    CHECK(r3.connected_per_n[4] == 38);
    CHECK(r3.connected_per_n[5] == 728);
    CHECK(r3.checked() == 4 + 38 + 728);
    CHECK(r3.counterexamples.empty());

    const SweepReport r2 = sweep_small_graphs(4, 2);
    bool has_k3 = false;
    for (const SweepRow& row : r2.counterexamples) {
        CHECK(row.min_k == 3);
        if (row.n == 3 && row.m == 3) has_k3 = true;
    }
    CHECK(has_k3);

    const SweepReport r1 = sweep_small_graphs(3, 1);
    // On three vertices: the paths need one weight, the triangle does not.
    CHECK(r1.counterexamples.size() == 1);
    CHECK(r1.counterexamples[0].m == 3);

    const SweepReport parallel = sweep_small_graphs(5, 2, 4);
    const SweepReport serial = sweep_small_graphs(5, 2, 1);
    REQUIRE(parallel.counterexamples.size() == serial.counterexamples.size());
    for (std::size_t i = 0; i < serial.counterexamples.size(); ++i) {
        CHECK(parallel.counterexamples[i].id == serial.counterexamples[i].id);
        CHECK(parallel.counterexamples[i].min_k == serial.counterexamples[i].min_k);
    }

    std::ostringstream os;
    write_sweep_csv(os, r2);
    CHECK(os.str().rfind("id,n,m,min_k\n", 0) == 0);

    CHECK_THROWS_AS(sweep_small_graphs(9, 3), InvalidArgument);
    CHECK_THROWS_AS(sweep_small_graphs(4, 0), InvalidArgument);
}
