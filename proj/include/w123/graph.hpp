#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace w123 {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    Vertex u;  // u < v always
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Edges are stored sorted
// lexicographically and their index in that array is the edge id, so
// weightings and edge subsets are plain arrays. Adjacency is CSR with each
// neighbour list sorted ascending. Immutable after construction.
class Graph {
public:
    Graph() = default;

    // Builds from arbitrary pairs: orientation is normalised and duplicates
    // collapse. Throws InvalidArgument on a self-loop or an out-of-range id.
    Graph(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> pairs);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {nbrs_.data() + offsets_[v], degree(v)};
    }
    // Incident edge ids, aligned with neighbors(v).
    std::span<const EdgeId> incident_edges(Vertex v) const {
        return {inc_.data() + offsets_[v], degree(v)};
    }

    Vertex other_endpoint(EdgeId e, Vertex v) const {
        const Edge& ed = edges_[e];
        return ed.u == v ? ed.v : ed.u;
    }

    // Edge id of {u, v}, or -1 cast to EdgeId when absent.
    EdgeId find_edge(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v) != kNoEdge; }

    std::size_t max_degree() const noexcept;
    std::size_t min_degree() const noexcept;

    static constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
    }

private:
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> nbrs_;
    std::vector<EdgeId> inc_;
};

// Membership bitmap over vertex ids with O(1) lookup and a cached size.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : member_(universe, 0) {}

    bool contains(Vertex v) const { return member_[v] != 0; }
    void insert(Vertex v) {
        if (!member_[v]) {
            member_[v] = 1;
            ++size_;
        }
    }
    void erase(Vertex v) {
        if (member_[v]) {
            member_[v] = 0;
            --size_;
        }
    }
    std::size_t size() const noexcept { return size_; }
    std::size_t universe() const noexcept { return member_.size(); }
    std::vector<Vertex> members() const;

    static VertexSet from(std::size_t universe, std::initializer_list<Vertex> vs);

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.member_ == b.member_; }

private:
    std::vector<std::uint8_t> member_;
    std::size_t size_ = 0;
};

// Same structure over edge ids.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::size_t universe) : member_(universe, 0) {}

    bool contains(EdgeId e) const { return member_[e] != 0; }
    void insert(EdgeId e) {
        if (!member_[e]) {
            member_[e] = 1;
            ++size_;
        }
    }
    void erase(EdgeId e) {
        if (member_[e]) {
            member_[e] = 0;
            --size_;
        }
    }
    std::size_t size() const noexcept { return size_; }
    std::size_t universe() const noexcept { return member_.size(); }
    std::vector<EdgeId> members() const;

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.member_ == b.member_; }

private:
    std::vector<std::uint8_t> member_;
    std::size_t size_ = 0;
};

// |N(v) ∩ A|
std::size_t degree_into(const Graph& g, Vertex v, const VertexSet& a);

// Number of edges at v that belong to the edge set.
std::size_t degree_in_edges(const Graph& g, Vertex v, const EdgeSet& f);

// Edges with one end in A and the other in B (A, B disjoint), ascending ids.
std::vector<EdgeId> edges_between(const Graph& g, const VertexSet& a, const VertexSet& b);

// Induced subgraph on the members of `keep`. `to_host` maps new ids back.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_host;
    std::vector<EdgeId> edge_to_host;
};
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep);

// Edge-list text: whitespace-separated pairs, '#' starts a comment, blank
// lines ignored. The vertex count is one more than the largest id seen.
Graph load_edge_list(std::string_view text);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& os, const Graph& g);

bool is_connected(const Graph& g);

}  // namespace w123
