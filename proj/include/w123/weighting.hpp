#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "w123/graph.hpp"

namespace w123 {

using Sum = std::int64_t;

// Edge weights indexed by edge id. A weight of 0 marks an edge that has not
// been assigned yet (partial weightings occur between construction stages).
struct EdgeWeighting {
    std::vector<int> weights;
    int max_weight = 3;

    EdgeWeighting() = default;
    EdgeWeighting(std::size_t edge_count, int fill, int k = 3) : weights(edge_count, fill), max_weight(k) {}

    int operator[](EdgeId e) const { return weights[e]; }
    int& operator[](EdgeId e) { return weights[e]; }
    std::size_t size() const noexcept { return weights.size(); }

    bool complete() const;
    // Every weight in [1, max_weight].
    bool valid() const;

    friend bool operator==(const EdgeWeighting&, const EdgeWeighting&) = default;
};

struct WeightedDegrees {
    std::vector<Sum> sums;

    Sum operator[](Vertex v) const { return sums[v]; }
    std::size_t size() const noexcept { return sums.size(); }
};

WeightedDegrees weighted_degrees(const Graph& g, const EdgeWeighting& w);

// Edges uv with s(u) = s(v), ascending edge id.
std::vector<EdgeId> conflicts(const Graph& g, const EdgeWeighting& w);
std::vector<EdgeId> conflicts(const Graph& g, const WeightedDegrees& s);

// Degree check on the multigraph obtained by replacing each edge e with w(e)
// parallel copies. Counts multigraph degrees independently of
// weighted_degrees.
bool blow_up_is_locally_irregular(const Graph& g, const EdgeWeighting& w);

// Weighting text: one "u v w" line per edge, same comment rules as edge lists.
EdgeWeighting load_weighting(const Graph& g, std::string_view text);
EdgeWeighting read_weighting_file(const Graph& g, const std::string& path);
void write_weighting(std::ostream& os, const Graph& g, const EdgeWeighting& w);

}  // namespace w123
