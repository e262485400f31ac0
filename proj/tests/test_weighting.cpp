#include <doctest.h>

#include <sstream>

#include "w123/errors.hpp"
#include "w123/graph.hpp"
#include "w123/rng.hpp"
#include "w123/weighting.hpp"

using namespace w123;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

// Sums straight from the neighbour lists, independent of the edge array walk.
std::vector<Sum> naive_sums(const Graph& g, const EdgeWeighting& w) {
    std::vector<Sum> s(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex u : g.neighbors(v)) s[v] += w[g.find_edge(u, v)];
    return s;
}

}  // namespace

TEST_CASE("weighted degrees and conflicts on a triangle") {
    const Graph g = triangle();
    EdgeWeighting w(3, 0);
    w[g.find_edge(0, 1)] = 1;
    w[g.find_edge(0, 2)] = 2;
    w[g.find_edge(1, 2)] = 3;
    const WeightedDegrees s = weighted_degrees(g, w);
    CHECK(s.sums == std::vector<Sum>{3, 4, 5});
    CHECK(conflicts(g, w).empty());
    CHECK(blow_up_is_locally_irregular(g, w));

    EdgeWeighting flat(3, 2);
    CHECK(conflicts(g, flat).size() == 3);
    CHECK_FALSE(blow_up_is_locally_irregular(g, flat));
}

TEST_CASE("weighting validity") {
    EdgeWeighting w(3, 1);
    CHECK(w.complete());
    CHECK(w.valid());
    w[1] = 4;
    CHECK_FALSE(w.valid());
    w[1] = 0;
    CHECK_FALSE(w.complete());
    CHECK_THROWS_AS(weighted_degrees(triangle(), EdgeWeighting(2, 1)), InvalidArgument);
}

TEST_CASE("weighting text round trip and errors") {
    const Graph g = triangle();
    EdgeWeighting w(3, 0);
    w[0] = 3;
    w[1] = 1;
    w[2] = 2;
    std::ostringstream os;
    write_weighting(os, g, w);
    const EdgeWeighting back = load_weighting(g, os.str());
    CHECK(back.weights == w.weights);
    CHECK(back.max_weight == 3);

    CHECK_THROWS_AS(load_weighting(g, "0 1 1\n0 2\n"), ParseError);
    CHECK_THROWS_AS(load_weighting(g, "0 1 1 7\n"), ParseError);
    CHECK_THROWS_AS(load_weighting(g, "0 1 0\n"), ParseError);
    CHECK_THROWS_AS(load_weighting(Graph(4, {{0, 1}, {2, 3}}), "0 2 1\n"), ParseError);
    CHECK_THROWS_AS(load_weighting(g, "0 1 1\n"), InvalidArgument);
}

TEST_CASE("verifier agrees with the multigraph view on random inputs") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(12);
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                if (rng.uniform() < 0.4) pairs.emplace_back(a, b);
        const Graph g(n, std::move(pairs));
        EdgeWeighting w(g.edge_count(), 0);
        for (auto& x : w.weights) x = 1 + static_cast<int>(rng.below(3));
        CHECK(weighted_degrees(g, w).sums == naive_sums(g, w));
        CHECK(conflicts(g, w).empty() == blow_up_is_locally_irregular(g, w));
    }
}
