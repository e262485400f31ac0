#include "w123/w_stage.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "w123/analytic.hpp"
#include "w123/errors.hpp"
#include "w123/rng.hpp"

namespace w123 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double draw_vertex_x(std::uint64_t seed, Vertex v, std::uint64_t epoch) {
    return analytic::x_from_uniform(stream_uniform(seed, Stream::XVertex, v, epoch));
}

double draw_edge_x(std::uint64_t seed, EdgeId e, std::uint64_t epoch) {
    return stream_uniform(seed, Stream::XEdge, e, epoch);
}

}  // namespace

bool is_inner(const Partition& part, const Edge& e) { return part.in_w(e.u) && part.in_w(e.v); }

XAssignment draw_x(const Graph& g, const Partition& part, std::uint64_t seed,
                   const std::vector<std::uint64_t>& vertex_epoch,
                   const std::vector<std::uint64_t>& edge_epoch) {
    XAssignment x;
    x.x_vertex.assign(g.vertex_count(), kNaN);
    x.x_edge.assign(g.edge_count(), kNaN);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (part.in_w(v)) x.x_vertex[v] = draw_vertex_x(seed, v, vertex_epoch.empty() ? 0 : vertex_epoch[v]);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (is_inner(part, g.edge(e))) x.x_edge[e] = draw_edge_x(seed, e, edge_epoch.empty() ? 0 : edge_epoch[e]);
    }
    return x;
}

void weigh_inner_edges(const Graph& g, const Partition& part, const XAssignment& x, EdgeWeighting& w) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!is_inner(part, ed)) continue;
        w[e] = analytic::inner_edge_weight(x.x_vertex[ed.u], x.x_vertex[ed.v], x.x_edge[e]);
    }
}

std::vector<Sum> initial_sums(const Graph& g, const Partition& part, const EdgeWeighting& w1) {
    if (!w1.complete()) throw InvalidArgument("initial_sums needs a complete weighting");
    std::vector<Sum> s = weighted_degrees(g, w1).sums;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!part.in_w(v)) continue;
        Sum d3 = 0;
        auto inc = g.incident_edges(v);
        for (EdgeId e : inc)
            if (is_inner(part, g.edge(e)) && w1[e] == 3) ++d3;
        const Sum formula = part.d_u[v] + part.d_fu[v] + part.d_w[v] + 2 * d3;
        if (formula != s[v]) {
            std::ostringstream msg;
            msg << "initial sum of vertex " << v << " is " << s[v] << " but the degree formula gives "
                << formula;
            throw InternalInconsistency(msg.str());
        }
    }
    return s;
}

double near_center(const Partition& part, Vertex v, double x_v) {
    return static_cast<double>(part.d_u[v] + part.d_fu[v]) + x_v * static_cast<double>(part.d_w[v]);
}

bool check_near_location(Vertex v, Sum s1, const XAssignment& x, const Partition& part,
                         const ProfileConstants& p) {
    const double c = near_center(part, v, x.x_vertex[v]);
    return std::abs(static_cast<double>(s1) - c) <= p.eps_loc * static_cast<double>(part.d_w[v]);
}

std::int64_t grid_length(Vertex v, std::int64_t d_w, const ProfileConstants& p) {
    const double target = p.eps_len * static_cast<double>(d_w);
    if (target < 1.0) {
        std::ostringstream msg;
        msg << "eps_len * d_W = " << target << " < 1 at vertex " << v;
        throw DegenerateLength(v, msg.str());
    }
    std::int64_t l = 1;
    while (static_cast<double>(2 * l) <= target) l *= 2;
    return l;
}

IntervalEntry compute_interval(Vertex v, const XAssignment& x, const Partition& part,
                               const ProfileConstants& p) {
    IntervalEntry e;
    e.l = grid_length(v, part.d_w[v], p);
    e.s0 = near_center(part, v, x.x_vertex[v]) + 3.0 * static_cast<double>(e.l);
    const auto k = static_cast<std::int64_t>(std::floor(e.s0 / static_cast<double>(e.l)));
    e.i0 = k * e.l;
    e.i1 = e.i0 + e.l;
    return e;
}

bool nested(const IntervalEntry& shorter, const IntervalEntry& longer) {
    if (!shorter.meets(longer)) return true;
    return longer.i0 <= shorter.i0 && shorter.i1 <= longer.i1;
}

std::size_t occupancy(const Graph& g, const Partition& part, const IntervalData& iv, Vertex v) {
    const IntervalEntry& mine = iv.entries[v];
    std::size_t c = 0;
    for (Vertex u : g.neighbors(v)) {
        if (part.in_w(u) && part.d_w[u] <= part.d_w[v] && mine.holds(iv.entries[u].s0)) ++c;
    }
    return c;
}

bool check_occupancy(Vertex v, const IntervalData& iv, const Graph& g, const Partition& part,
                     const ProfileConstants& p) {
    return static_cast<double>(occupancy(g, part, iv, v)) <=
           p.frac_I * static_cast<double>(iv.entries[v].l);
}

WStageState resample_w_stage(const Graph& g, const Partition& part, const EdgeWeighting& outer,
                             const ProfileConstants& p, std::uint64_t seed, std::size_t limit) {
    const std::size_t n = g.vertex_count();
    WStageState st;
    st.x = draw_x(g, part, seed);
    st.w1 = outer;
    weigh_inner_edges(g, part, st.x, st.w1);
    st.s1 = initial_sums(g, part, st.w1);
    st.intervals.entries.assign(n, IntervalEntry{});
    for (Vertex v = 0; v < n; ++v)
        if (part.in_w(v)) st.intervals.entries[v] = compute_interval(v, st.x, part, p);

    auto& iv = st.intervals.entries;
    std::vector<std::size_t> occ(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (part.in_w(v)) occ[v] = occupancy(g, part, st.intervals, v);

    auto ok = [&](Vertex v) {
        return check_near_location(v, st.s1[v], st.x, part, p) &&
               static_cast<double>(occ[v]) <= p.frac_I * static_cast<double>(iv[v].l);
    };

    std::vector<std::uint64_t> vepoch(n, 0);
    std::vector<std::uint64_t> eepoch(g.edge_count(), 0);
    std::vector<std::uint8_t> queued(n, 0);
    std::deque<Vertex> work;
    auto push = [&](Vertex v) {
        if (!queued[v]) {
            queued[v] = 1;
            work.push_back(v);
        }
    };
    for (Vertex v = 0; v < n; ++v)
        if (part.in_w(v)) push(v);

    while (!work.empty()) {
        const Vertex v = work.front();
        work.pop_front();
        queued[v] = 0;
        if (ok(v)) continue;
        if (st.resamples == limit) {
            std::vector<std::pair<double, Vertex>> bad;
            for (Vertex x = 0; x < n; ++x) {
                if (!part.in_w(x) || ok(x)) continue;
                const double dw = static_cast<double>(part.d_w[x]);
                const double near = std::abs(static_cast<double>(st.s1[x]) -
                                             near_center(part, x, st.x.x_vertex[x])) - p.eps_loc * dw;
                const double crowd = static_cast<double>(occ[x]) - p.frac_I * static_cast<double>(iv[x].l);
                bad.emplace_back(std::max(near / std::max(1.0, dw), crowd / static_cast<double>(iv[x].l)), x);
            }
            std::sort(bad.begin(), bad.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            std::vector<std::uint32_t> ids;
            for (std::size_t i = 0; i < bad.size() && i < 32; ++i) ids.push_back(bad[i].second);
            throw RetryExhausted("w-stage", std::move(ids), "near-location or occupancy check not met");
        }
        ++st.resamples;

        const double old_s0 = iv[v].s0;
        st.x.x_vertex[v] = draw_vertex_x(seed, v, ++vepoch[v]);
        iv[v] = compute_interval(v, st.x, part, p);
        occ[v] = occupancy(g, part, st.intervals, v);

        auto nb = g.neighbors(v);
        auto inc = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const Vertex u = nb[i];
            if (!part.in_w(u)) continue;
            if (part.d_w[v] <= part.d_w[u]) {
                const bool before = iv[u].holds(old_s0);
                const bool after = iv[u].holds(iv[v].s0);
                if (before != after) {
                    if (after) ++occ[u];
                    else --occ[u];
                    push(u);
                }
            }
            const EdgeId e = inc[i];
            st.x.x_edge[e] = draw_edge_x(seed, e, ++eepoch[e]);
            const int w = analytic::inner_edge_weight(st.x.x_vertex[v], st.x.x_vertex[u], st.x.x_edge[e]);
            if (w != st.w1[e]) {
                const int delta = w - st.w1[e];
                st.w1[e] = w;
                st.s1[v] += delta;
                st.s1[u] += delta;
                push(u);
            }
        }
        push(v);
    }
    return st;
}

WStageAudit audit_w_stage(const Graph& g, const Partition& part, const WStageState& st,
                          const ProfileConstants& p) {
    WStageAudit a;
    EdgeWeighting w = st.w1;
    weigh_inner_edges(g, part, st.x, w);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (w[e] != st.w1[e]) a.weight_mismatch.push_back(e);
    const WeightedDegrees s = weighted_degrees(g, st.w1);
    IntervalData fresh;
    fresh.entries.assign(g.vertex_count(), IntervalEntry{});
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (s[v] != st.s1[v]) a.sum_mismatch.push_back(v);
        if (!part.in_w(v)) continue;
        fresh.entries[v] = compute_interval(v, st.x, part, p);
        const IntervalEntry& got = st.intervals.entries[v];
        if (fresh.entries[v].l != got.l || fresh.entries[v].i0 != got.i0 || fresh.entries[v].s0 != got.s0)
            a.interval_mismatch.push_back(v);
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!part.in_w(v)) continue;
        if (!check_near_location(v, s[v], st.x, part, p)) a.near_location.push_back(v);
        if (!check_occupancy(v, fresh, g, part, p)) a.occupancy.push_back(v);
    }
    return a;
}

void to_json(nlohmann::json& j, const WStageAudit& a) {
    j = nlohmann::json{{"ok", a.ok()},
                       {"weight_mismatch", a.weight_mismatch},
                       {"sum_mismatch", a.sum_mismatch},
                       {"interval_mismatch", a.interval_mismatch},
                       {"near_location", a.near_location},
                       {"occupancy", a.occupancy}};
}

std::vector<Vertex> w_order(const Partition& part) {
    std::vector<Vertex> order = part.w_set.members();
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return part.d_w[a] < part.d_w[b]; });
    return order;
}

SumAdditions choose_sum_additions(const Graph& g, const Partition& part, const std::vector<Sum>& s1,
                                  const IntervalData& iv, const ProfileConstants& p) {
    const std::size_t n = g.vertex_count();
    SumAdditions add;
    add.a.assign(n, 0);
    std::vector<std::uint8_t> done(n, 0);
    std::vector<std::uint8_t> blocked;
    for (Vertex v : w_order(part)) {
        const IntervalEntry& I = iv.entries[v];
        const Sum lo = std::max<Sum>(s1[v], I.i0);
        const Sum hi = I.i1;  // exclusive
        std::size_t taken = 0;
        bool found = false;
        if (lo < hi) {
            blocked.assign(static_cast<std::size_t>(hi - lo), 0);
            for (Vertex u : g.neighbors(v)) {
                if (!part.in_w(u) || !done[u] || part.d_w[u] > part.d_w[v]) continue;
                const Sum su = s1[u] + add.a[u];
                if (su >= lo && su < hi && !blocked[su - lo]) {
                    blocked[su - lo] = 1;
                    ++taken;
                }
            }
            for (Sum t = lo; t < hi; ++t) {
                if (blocked[t - lo] || p.is_reserved(t)) continue;
                add.a[v] = t - s1[v];
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream msg;
            msg << "no sum addition for vertex " << v << ": s1=" << s1[v] << ", I=[" << I.i0 << ", "
                << I.i1 << "), l=" << I.l << ", s0=" << I.s0 << ", occupancy=" << occupancy(g, part, iv, v)
                << ", blocked by neighbours=" << taken;
            throw NoValidAddition(v, msg.str());
        }
        done[v] = 1;
    }
    return add;
}

EdgeWeighting apply_additions(const Graph& g, const Partition& part, const EdgeWeighting& w1,
                              const SumAdditions& add) {
    EdgeWeighting w2 = w1;
    std::vector<EdgeId> fw;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!part.in_w(v) || add.a[v] == 0) continue;
        fw.clear();
        for (EdgeId e : g.incident_edges(v))
            if (part.f_w.contains(e)) fw.push_back(e);
        if (static_cast<std::int64_t>(fw.size()) < add.a[v]) {
            std::ostringstream msg;
            msg << "vertex " << v << " needs " << add.a[v] << " F_W raises but has only " << fw.size()
                << " F_W edges";
            throw InsufficientFW(v, msg.str());
        }
        std::sort(fw.begin(), fw.end());
        for (std::int64_t i = 0; i < add.a[v]; ++i) {
            const EdgeId e = fw[static_cast<std::size_t>(i)];
            if (w2[e] != 1) throw InternalInconsistency("F_W edge " + std::to_string(e) + " is not weighted 1");
            w2[e] = 2;
        }
    }
    return w2;
}

nlohmann::json w_stage_dump(const Graph& g, const Partition& part, const WStageState& st,
                            const SumAdditions* add) {
    nlohmann::json rows = nlohmann::json::array();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!part.in_w(v)) continue;
        const IntervalEntry& I = st.intervals.entries[v];
        nlohmann::json row{{"v", v},       {"x", st.x.x_vertex[v]}, {"s1", st.s1[v]}, {"s0", I.s0},
                           {"l", I.l},     {"I", {I.i0, I.i1}},     {"d_w", part.d_w[v]},
                           {"d_fw", part.d_fw[v]}};
        if (add) {
            row["a"] = add->a[v];
            row["s2"] = st.s1[v] + add->a[v];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace w123
