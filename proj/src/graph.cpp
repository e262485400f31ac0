#include "w123/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "w123/errors.hpp"

namespace w123 {

Graph::Graph(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> pairs) {
    edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a == b) throw InvalidArgument("self-loop at vertex " + std::to_string(a));
        if (a >= vertex_count || b >= vertex_count) {
            throw InvalidArgument("vertex id out of range");
        }
        edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(vertex_count + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < vertex_count; ++i) offsets_[i + 1] += offsets_[i];

    nbrs_.resize(2 * edges_.size());
    inc_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // With edges sorted by (u, v) each list comes out ascending: first the
    // lower neighbours (as the v side), then the higher ones (as the u side).
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        nbrs_[cursor[e.u]] = e.v;
        inc_[cursor[e.u]++] = id;
        nbrs_[cursor[e.v]] = e.u;
        inc_[cursor[e.v]++] = id;
    }
}

EdgeId Graph::find_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count() || v >= vertex_count()) return kNoEdge;
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return kNoEdge;
    return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::size_t Graph::max_degree() const noexcept {
    std::size_t best = 0;
    for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
    return best;
}

std::size_t Graph::min_degree() const noexcept {
    if (vertex_count() == 0) return 0;
    std::size_t best = degree(0);
    for (Vertex v = 1; v < vertex_count(); ++v) best = std::min(best, degree(v));
    return best;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(size_);
    for (Vertex v = 0; v < member_.size(); ++v)
        if (member_[v]) out.push_back(v);
    return out;
}

VertexSet VertexSet::from(std::size_t universe, std::initializer_list<Vertex> vs) {
    VertexSet s(universe);
    for (Vertex v : vs) s.insert(v);
    return s;
}

std::vector<EdgeId> EdgeSet::members() const {
    std::vector<EdgeId> out;
    out.reserve(size_);
    for (EdgeId e = 0; e < member_.size(); ++e)
        if (member_[e]) out.push_back(e);
    return out;
}

std::size_t degree_into(const Graph& g, Vertex v, const VertexSet& a) {
    std::size_t n = 0;
    for (Vertex w : g.neighbors(v)) n += a.contains(w) ? 1 : 0;
    return n;
}

std::size_t degree_in_edges(const Graph& g, Vertex v, const EdgeSet& f) {
    std::size_t n = 0;
    for (EdgeId e : g.incident_edges(v)) n += f.contains(e) ? 1 : 0;
    return n;
}

std::vector<EdgeId> edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if ((a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u))) {
            out.push_back(id);
        }
    }
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
    InducedSubgraph sub;
    std::vector<Vertex> to_local(g.vertex_count(), static_cast<Vertex>(-1));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (keep.contains(v)) {
            to_local[v] = static_cast<Vertex>(sub.to_host.size());
            sub.to_host.push_back(v);
        }
    }
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<EdgeId> host_ids;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if (keep.contains(e.u) && keep.contains(e.v)) {
            pairs.emplace_back(to_local[e.u], to_local[e.v]);
            host_ids.push_back(id);
        }
    }
    // Local ids are monotone in host ids, so the local sorted edge order
    // matches the host order and host_ids stays aligned.
    sub.graph = Graph(sub.to_host.size(), std::move(pairs));
    sub.edge_to_host = std::move(host_ids);
    return sub;
}

Graph load_edge_list(std::string_view text) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::size_t max_id = 0;
    bool any = false;
    std::size_t declared_n = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            // "# n=<count>" records isolated trailing vertices.
            std::string_view comment = line.substr(hash + 1);
            while (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
            if (comment.starts_with("n=")) {
                std::uint64_t n = 0;
                auto [p, ec] = std::from_chars(comment.data() + 2, comment.data() + comment.size(), n);
                if (ec == std::errc() && n > 0) declared_n = std::max<std::size_t>(declared_n, n);
            }
            line = line.substr(0, hash);
        }

        std::uint64_t ids[2];
        int count = 0;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (count == 2) throw ParseError(line_no, "expected exactly two vertex ids");
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
            if (ec != std::errc() || ptr != line.data() + j || value > 0xfffffffeULL) {
                throw ParseError(line_no, "invalid vertex id '" + std::string(line.substr(i, j - i)) + "'");
            }
            ids[count++] = value;
            i = j;
        }
        if (count == 0) continue;
        if (count != 2) throw ParseError(line_no, "expected exactly two vertex ids");
        if (ids[0] == ids[1]) throw SelfLoopError(line_no, ids[0]);
        pairs.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
        max_id = std::max<std::size_t>(max_id, std::max(ids[0], ids[1]));
        any = true;
        if (end == text.size()) break;
    }
    return Graph(std::max(any ? max_id + 1 : 0, declared_n), std::move(pairs));
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << "# n=" << g.vertex_count() << " m=" << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

bool is_connected(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

}  // namespace w123
