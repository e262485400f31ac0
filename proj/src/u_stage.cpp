#include "w123/u_stage.hpp"

#include <algorithm>
#include <sstream>

#include "w123/errors.hpp"

namespace w123 {

EStar build_estar(const Graph& g, const VertexSet& u_set) {
    const std::size_t n = g.vertex_count();
    const Vertex aux = static_cast<Vertex>(n);

    // Augmented multigraph on U plus aux. Arc slots: real edges keep their
    // host id, aux edges get ids past the host edge range.
    struct Arc {
        Vertex to;
        std::size_t link;  // index into `links`
    };
    struct Link {
        EdgeId host;  // kNoEdge for aux edges
        bool used = false;
    };
    std::vector<std::vector<Arc>> adj(n + 1);
    std::vector<Link> links;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!u_set.contains(ed.u) || !u_set.contains(ed.v)) continue;
        adj[ed.u].push_back({ed.v, links.size()});
        adj[ed.v].push_back({ed.u, links.size()});
        links.push_back({e});
    }
    for (Vertex v = 0; v < n; ++v) {
        if (u_set.contains(v) && adj[v].size() % 2 == 1) {
            adj[v].push_back({aux, links.size()});
            adj[aux].push_back({v, links.size()});
            links.push_back({Graph::kNoEdge});
        }
    }

    EStar es;
    es.owned.assign(n, {});
    std::vector<std::size_t> cursor(n + 1, 0);
    std::vector<Vertex> stack;
    // Every vertex of a component is reached from its lowest-id real vertex,
    // so walking starts in ascending id order cover each component once.
    for (Vertex start = 0; start < n; ++start) {
        if (!u_set.contains(start) || cursor[start] == adj[start].size()) continue;
        stack.assign(1, start);
        while (!stack.empty()) {
            const Vertex x = stack.back();
            auto& c = cursor[x];
            while (c < adj[x].size() && links[adj[x][c].link].used) ++c;
            if (c == adj[x].size()) {
                stack.pop_back();
                continue;
            }
            const Arc arc = adj[x][c];
            links[arc.link].used = true;
            if (x != aux && links[arc.link].host != Graph::kNoEdge) {
                es.owned[x].push_back(links[arc.link].host);
            }
            stack.push_back(arc.to);
        }
    }
    for (auto& list : es.owned) std::sort(list.begin(), list.end());
    return es;
}

EStarAudit audit_estar(const Graph& g, const VertexSet& u_set, const EStar& es) {
    EStarAudit a;
    std::vector<int> owners(g.edge_count(), 0);
    for (Vertex v = 0; v < es.owned.size() && v < g.vertex_count(); ++v) {
        for (EdgeId e : es.owned[v]) {
            const Edge& ed = g.edge(e);
            if (!u_set.contains(ed.u) || !u_set.contains(ed.v) || (ed.u != v && ed.v != v)) {
                a.stray.push_back(e);
                continue;
            }
            ++owners[e];
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (owners[e] > 1) a.shared.push_back(e);
        if (u_set.contains(ed.u) && u_set.contains(ed.v) && owners[e] == 0) a.unowned.push_back(e);
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!u_set.contains(v)) continue;
        const double du = static_cast<double>(degree_into(g, v, u_set));
        const double mine = v < es.owned.size() ? static_cast<double>(es.owned[v].size()) : 0.0;
        if (mine < 0.5 * du - 1) a.too_small.push_back(v);
    }
    std::sort(a.stray.begin(), a.stray.end());
    return a;
}

std::vector<int> pair_residues(const ProfileConstants& p) {
    std::vector<int> out;
    for (int r : p.reserved_residues) {
        if (p.is_reserved(r + 1)) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Vertex> u_order(const Graph& g, const Partition& part) {
    std::vector<Vertex> order = part.u_set.members();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    return order;
}

namespace {

// Smallest pair base b >= from with b mod M in `residues`.
Sum next_base(Sum from, const std::vector<int>& residues, int modulus) {
    Sum best = 0;
    bool any = false;
    const Sum q = from >= 0 ? from / modulus : -((-from + modulus - 1) / modulus);
    for (Sum k = q; k <= q + 1; ++k) {
        for (int r : residues) {
            const Sum b = k * modulus + r;
            if (b >= from && (!any || b < best)) {
                best = b;
                any = true;
            }
        }
    }
    return best;
}

}  // namespace

UStageResult finalize_u(const Graph& g, const Partition& part, const EdgeWeighting& w2,
                        const EStar& es, const ProfileConstants& p, bool keep_trace) {
    const std::size_t n = g.vertex_count();
    const std::vector<int> residues = pair_residues(p);
    if (residues.empty()) throw InvalidArgument("reserved residues contain no pair {r, r+1}");

    UStageResult res;
    res.w3 = w2;
    res.s3 = weighted_degrees(g, w2).sums;
    res.pair_base.assign(n, -1);
    res.order = u_order(g, part);
    std::vector<std::uint8_t> done(n, 0);
    std::vector<std::uint8_t> touched(g.edge_count(), 0);
    auto& s = res.s3;
    auto& w = res.w3;

    std::vector<EdgeId> up, down, free_edges;
    std::vector<Sum> avoid;
    for (Vertex u : res.order) {
        up.clear();
        down.clear();
        free_edges.clear();
        for (EdgeId e : es.owned[u]) {
            if (w[e] != 2 || touched[e]) {
                throw InternalInconsistency("owned edge " + std::to_string(e) + " already altered");
            }
            const Vertex v = g.other_endpoint(e, u);
            if (!done[v]) {
                free_edges.push_back(e);
            } else if (s[v] == res.pair_base[v]) {
                up.push_back(e);
            } else if (s[v] == res.pair_base[v] + 1) {
                down.push_back(e);
            } else {
                throw InternalInconsistency("processed vertex " + std::to_string(v) + " left its pair");
            }
        }
        const Sum lo = s[u] - static_cast<Sum>(down.size() + free_edges.size());
        const Sum hi = s[u] + static_cast<Sum>(up.size() + free_edges.size());

        avoid.clear();
        for (Vertex v : n_u_leq(g, part, u, p).members()) {
            if (done[v]) avoid.push_back(res.pair_base[v]);
        }
        std::sort(avoid.begin(), avoid.end());

        Sum chosen = -1;
        for (Sum b = next_base(lo - 1, residues, p.modulus_M); b <= hi;
             b = next_base(b + 1, residues, p.modulus_M)) {
            if (!std::binary_search(avoid.begin(), avoid.end(), b)) {
                chosen = b;
                break;
            }
        }
        if (chosen < 0) {
            std::ostringstream msg;
            msg << "no admissible pair for vertex " << u << ": reachable [" << lo << ", " << hi
                << "], processed N^U_<= pairs " << avoid.size();
            throw NoValidPair(u, msg.str());
        }
        const Sum target = std::max(chosen, lo);
        const Sum before = s[u];
        Sum need = target - s[u];
        nlohmann::json flipped = nlohmann::json::array();
        auto flip = [&](EdgeId e, int delta) {
            const Vertex v = g.other_endpoint(e, u);
            w[e] += delta;
            touched[e] = 1;
            s[u] += delta;
            s[v] += delta;
            ++res.flips;
            if (keep_trace) flipped.push_back({e, delta});
        };
        const auto& forced = need > 0 ? up : down;
        const int dir = need > 0 ? 1 : -1;
        for (std::size_t i = 0; i < forced.size() && need != 0; ++i) {
            flip(forced[i], dir);
            need -= dir;
        }
        for (std::size_t i = 0; i < free_edges.size() && need != 0; ++i) {
            flip(free_edges[i], dir);
            need -= dir;
        }
        if (need != 0 || s[u] != target) throw InternalInconsistency("reachable range miscounted");
        res.pair_base[u] = chosen;
        done[u] = 1;
        if (keep_trace) {
            res.trace.push_back({{"u", u},
                                 {"sum_before", before},
                                 {"reachable", {lo, hi}},
                                 {"forced_up", up.size()},
                                 {"forced_down", down.size()},
                                 {"free", free_edges.size()},
                                 {"pair", {chosen, chosen + 1}},
                                 {"sum", target},
                                 {"flipped", flipped}});
        }
    }
    return res;
}

VerifyReport final_verify(const Graph& g, const Partition& part, const EdgeWeighting& w3,
                          const std::vector<Sum>& s2, const ProfileConstants& p) {
    VerifyReport r;
    r.range_strict = p.name == "paper";
    for (EdgeId e = 0; e < w3.size(); ++e)
        if (w3[e] < 1 || w3[e] > 3) r.bad_weights.push_back(e);
    const WeightedDegrees s = weighted_degrees(g, w3);
    r.conflicts = conflicts(g, s);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (part.in_u(v)) {
            if (!p.is_reserved(s[v])) r.u_residue.push_back(v);
            const Sum d = static_cast<Sum>(g.degree(v));
            const JInterval j = j_interval(g, part, v, p);
            if (s[v] < d || s[v] > 2 * d || !j.contains(static_cast<double>(s[v]))) r.range.push_back(v);
        } else {
            if (p.is_reserved(s[v])) r.w_residue.push_back(v);
            if (v < s2.size() && s[v] != s2[v]) r.w_moved.push_back(v);
        }
    }
    return r;
}

void to_json(nlohmann::json& j, const VerifyReport& r) {
    j = nlohmann::json{{"ok", r.ok()},
                       {"conflicts", r.conflicts},
                       {"bad_weights", r.bad_weights},
                       {"u_residue", r.u_residue},
                       {"w_residue", r.w_residue},
                       {"w_moved", r.w_moved},
                       {"range", r.range},
                       {"range_strict", r.range_strict}};
}

}  // namespace w123
