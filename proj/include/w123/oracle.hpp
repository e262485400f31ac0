#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "w123/graph.hpp"
#include "w123/weighting.hpp"

namespace w123 {

struct OracleResult {
    std::optional<int> min_k;  // empty: no vertex-colouring k-weighting for k <= k_max
    EdgeWeighting witness;     // valid when min_k is set
    std::uint64_t nodes_explored = 0;
};

// Exhaustive backtracking for k = 1..k_max. Edges are visited in BFS order
// from a maximum-degree root; a branch is cut as soon as a vertex whose
// edges are all weighted matches a neighbour in the same state.
OracleResult min_k_weighting(const Graph& g, int k_max);

// Graph on n vertices whose edges are the set bits of `mask`, bit i standing
// for the i-th pair (a, b), a < b, in lexicographic order.
Graph graph_from_mask(std::size_t n, std::uint64_t mask);

struct SweepRow {
    std::uint64_t id;  // edge mask
    std::size_t n;
    std::size_t m;
    int min_k;  // -1: none found up to the search cap
};

struct SweepReport {
    int k = 0;
    std::size_t n_max = 0;
    std::vector<std::size_t> connected_per_n;  // index n
    std::vector<SweepRow> counterexamples;     // sorted by (n, id)
    std::size_t checked() const;
};

// Every connected labeled graph on 2..n_max vertices with at least two
// edges; reports those without a vertex-colouring k-weighting. Requires
// n_max <= 8. The enumeration is split across `jobs` threads.
SweepReport sweep_small_graphs(std::size_t n_max, int k, unsigned jobs = 1);

// CSV with header "id,n,m,min_k".
void write_sweep_csv(std::ostream& os, const SweepReport& r);

}  // namespace w123
