#include "w123/weighting.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "w123/errors.hpp"

namespace w123 {

bool EdgeWeighting::complete() const {
    return std::none_of(weights.begin(), weights.end(), [](int x) { return x == 0; });
}

bool EdgeWeighting::valid() const {
    return std::all_of(weights.begin(), weights.end(),
                       [this](int x) { return x >= 1 && x <= max_weight; });
}

WeightedDegrees weighted_degrees(const Graph& g, const EdgeWeighting& w) {
    if (w.size() != g.edge_count()) throw InvalidArgument("weighting does not cover the edge set");
    WeightedDegrees s{std::vector<Sum>(g.vertex_count(), 0)};
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        s.sums[e.u] += w[id];
        s.sums[e.v] += w[id];
    }
    return s;
}

std::vector<EdgeId> conflicts(const Graph& g, const WeightedDegrees& s) {
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if (s[e.u] == s[e.v]) out.push_back(id);
    }
    return out;
}

std::vector<EdgeId> conflicts(const Graph& g, const EdgeWeighting& w) {
    return conflicts(g, weighted_degrees(g, w));
}

bool blow_up_is_locally_irregular(const Graph& g, const EdgeWeighting& w) {
    if (w.size() != g.edge_count()) throw InvalidArgument("weighting does not cover the edge set");
    // Materialise the multigraph as an adjacency multiset per vertex.
    std::vector<std::map<Vertex, std::size_t>> multi(g.vertex_count());
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        for (int copy = 0; copy < w[id]; ++copy) {
            ++multi[e.u][e.v];
            ++multi[e.v][e.u];
        }
    }
    std::vector<std::size_t> deg(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (const auto& [nb, copies] : multi[v]) deg[v] += copies;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (const auto& [nb, copies] : multi[v])
            if (copies > 0 && deg[nb] == deg[v]) return false;
    return true;
}

EdgeWeighting load_weighting(const Graph& g, std::string_view text) {
    EdgeWeighting w(g.edge_count(), 0);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    int max_seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::int64_t a, b, weight;
        if (!(fields >> a)) continue;
        if (!(fields >> b >> weight)) throw ParseError(line_no, "expected 'u v w'");
        std::string extra;
        if (fields >> extra) throw ParseError(line_no, "trailing data");
        if (a < 0 || b < 0 || weight < 1) throw ParseError(line_no, "ids must be >= 0 and weight >= 1");
        const EdgeId e = g.find_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
        if (e == Graph::kNoEdge) throw ParseError(line_no, "edge not present in graph");
        w[e] = static_cast<int>(weight);
        max_seen = std::max(max_seen, static_cast<int>(weight));
    }
    if (!w.complete()) throw InvalidArgument("weighting file does not cover every edge");
    w.max_weight = std::max(max_seen, 1);
    return w;
}

EdgeWeighting read_weighting_file(const Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open weighting file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_weighting(g, buf.str());
}

void write_weighting(std::ostream& os, const Graph& g, const EdgeWeighting& w) {
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        os << e.u << ' ' << e.v << ' ' << w[id] << '\n';
    }
}

}  // namespace w123
