#include "w123/partition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <sstream>

#include "w123/errors.hpp"
#include "w123/rng.hpp"

namespace w123 {

namespace {

// FIFO of vertex ids without duplicates. Processing order is a pure function
// of the push sequence, which keeps resampling traces reproducible.
class Worklist {
public:
    explicit Worklist(std::size_t n) : queued_(n, 0) {
        for (Vertex v = 0; v < n; ++v) push(v);
    }
    void push(Vertex v) {
        if (!queued_[v]) {
            queued_[v] = 1;
            q_.push_back(v);
        }
    }
    bool empty() const { return q_.empty(); }
    Vertex pop() {
        Vertex v = q_.front();
        q_.pop_front();
        queued_[v] = 0;
        return v;
    }

private:
    std::vector<std::uint8_t> queued_;
    std::deque<Vertex> q_;
};

// Violators sorted by how far they overshoot, worst first, capped.
std::vector<std::uint32_t> worst(std::vector<std::pair<double, Vertex>> bad) {
    std::sort(bad.begin(), bad.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < bad.size() && i < 32; ++i) out.push_back(bad[i].second);
    return out;
}

double excess(double value, double center, double tol) { return std::abs(value - center) - tol; }

// Seeds of whole-partition redraws, kept apart from pipeline-level restarts.
std::uint64_t attempt_seed(std::uint64_t seed, std::size_t attempt) {
    return attempt == 0 ? seed : stream_word(seed, Stream::Restart, attempt, 1);
}

}  // namespace

void Partition::recount(const Graph& g) {
    const std::size_t n = g.vertex_count();
    d_u.assign(n, 0);
    d_w.assign(n, 0);
    d_fw.assign(n, 0);
    d_fprime.assign(n, 0);
    d_fu.assign(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        for (Vertex x : {ed.u, ed.v}) {
            const Vertex y = x == ed.u ? ed.v : ed.u;
            (u_set.contains(y) ? d_u : d_w)[x] += 1;
        }
        if (f_w.contains(e)) {
            ++d_fw[ed.u];
            ++d_fw[ed.v];
        }
        if (f_prime.contains(e)) {
            ++d_fprime[ed.u];
            ++d_fprime[ed.v];
        }
        if (f_u.contains(e)) {
            ++d_fu[ed.u];
            ++d_fu[ed.v];
        }
    }
}

Partition make_partition(const Graph& g, const VertexSet& u_set, const EdgeSet& f_w,
                         const EdgeSet& f_u, std::vector<int> levels, int m_levels) {
    const std::size_t n = g.vertex_count();
    if (u_set.universe() != n || f_w.universe() != g.edge_count() ||
        f_u.universe() != g.edge_count() || levels.size() != n) {
        throw InvalidArgument("partition parts do not match the graph");
    }
    Partition part;
    part.u_set = u_set;
    part.w_set = VertexSet(n);
    for (Vertex v = 0; v < n; ++v) {
        if (!u_set.contains(v)) {
            part.w_set.insert(v);
            levels[v] = -1;
        } else if (levels[v] < 0 || levels[v] >= m_levels) {
            throw InvalidArgument("level of vertex " + std::to_string(v) + " out of range");
        }
    }
    part.f = EdgeSet(g.edge_count());
    part.f_prime = EdgeSet(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const bool cross = u_set.contains(ed.u) != u_set.contains(ed.v);
        if (cross) {
            part.f.insert(e);
            if (!f_w.contains(e)) part.f_prime.insert(e);
        }
        if (f_w.contains(e) && !cross) throw InvalidArgument("F_W edge outside F");
        if (f_u.contains(e) && !part.f_prime.contains(e)) throw InvalidArgument("F_U edge outside F'");
    }
    part.f_w = f_w;
    part.f_u = f_u;
    part.levels = std::move(levels);
    part.recount(g);
    return part;
}

void to_json(nlohmann::json& j, const PartitionStats& s) {
    j = nlohmann::json{{"resamples_u", s.resamples_u},
                       {"resamples_fw", s.resamples_fw},
                       {"resamples_fu", s.resamples_fu},
                       {"attempts", s.attempts}};
}

namespace constraint {

bool u_degree(double d, double d_u, const ProfileConstants& p) {
    return std::abs(d_u - p.p_U * d) <= p.eps_U * d;
}

bool fw_in_w(double d_u, double d_fw, const ProfileConstants& p) {
    return std::abs(d_fw - p.p_FW * d_u) <= p.eps_FW * d_u;
}

bool fw_in_u(double d_w, double d_fw, const ProfileConstants& p) {
    return std::abs(d_fw - p.p_FW * d_w) <= p.eps_FW * d_w;
}

bool fu_in_u(double d, double d_fprime, double d_fu, int level, const ProfileConstants& p) {
    const double share = static_cast<double>(level) / p.m_levels;
    return std::abs(d_fu - share * d_fprime) <= p.eps_FU * d;
}

bool fu_in_w(double d_fprime, double d_fu, const ProfileConstants& p) {
    return std::abs(d_fu - p.fu_fraction_w() * d_fprime) <= p.eps_FU * d_fprime;
}

bool nu_leq(double n_u_leq, double d_u, const ProfileConstants& p) {
    return n_u_leq <= p.frac_NU * d_u;
}

}  // namespace constraint

void check_feasibility(const Graph& g, const ProfileConstants& p) {
    p.validate();
    if (g.vertex_count() == 0) throw InfeasibleProfile("graph has no vertices");
    const double delta = static_cast<double>(g.min_degree());
    const double big = static_cast<double>(g.max_degree());
    if (delta == 0) throw InfeasibleProfile("graph has an isolated vertex");
    if (big >= 2 && delta < p.min_delta_ratio * std::log(big)) {
        std::ostringstream msg;
        msg << "minimum degree " << delta << " below " << p.min_delta_ratio << " * ln(" << big << ")";
        throw InfeasibleProfile(msg.str());
    }
    struct Floor {
        const char* what;
        double value;
    };
    const Floor floors[] = {
        {"eps_U * delta", p.eps_U * delta},
        {"eps_FW * p_U * delta", p.eps_FW * p.p_U * delta},
        {"eps_FW * (1 - p_U) * delta", p.eps_FW * (1 - p.p_U) * delta},
        {"eps_FU * delta", p.eps_FU * delta},
        {"eps_FU * (1 - p_FW) * p_U * delta", p.eps_FU * (1 - p.p_FW) * p.p_U * delta},
    };
    for (const Floor& f : floors) {
        if (f.value < 1.0) {
            std::ostringstream msg;
            msg << f.what << " = " << f.value << " < 1 for profile '" << p.name << "'";
            throw InfeasibleProfile(msg.str());
        }
    }
}

VertexSet sample_u_set(const Graph& g, const ProfileConstants& p, std::uint64_t seed,
                       std::size_t limit, std::size_t* resamples) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint64_t> epoch(n, 0);
    std::vector<std::uint8_t> member(n, 0);
    for (Vertex v = 0; v < n; ++v) member[v] = stream_uniform(seed, Stream::UMembership, v, 0) < p.p_U;
    std::vector<std::int64_t> du(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex x : g.neighbors(v)) du[v] += member[x];

    auto ok = [&](Vertex v) {
        return constraint::u_degree(static_cast<double>(g.degree(v)), static_cast<double>(du[v]), p);
    };

    std::size_t count = 0;
    Worklist work(n);
    while (!work.empty()) {
        const Vertex v = work.pop();
        if (ok(v)) continue;
        if (count == limit) {
            std::vector<std::pair<double, Vertex>> bad;
            for (Vertex x = 0; x < n; ++x) {
                const double d = static_cast<double>(g.degree(x));
                if (!ok(x)) bad.emplace_back(excess(du[x], p.p_U * d, p.eps_U * d), x);
            }
            if (resamples) *resamples = count;
            throw RetryExhausted("partition/U", worst(std::move(bad)), "U-degree constraint not met");
        }
        ++count;
        for (Vertex x : g.neighbors(v)) {
            const std::uint8_t now =
                stream_uniform(seed, Stream::UMembership, x, ++epoch[x]) < p.p_U;
            if (now == member[x]) continue;
            member[x] = now;
            const int delta = now ? 1 : -1;
            for (Vertex y : g.neighbors(x)) {
                du[y] += delta;
                work.push(y);
            }
        }
        work.push(v);
    }
    if (resamples) *resamples = count;
    VertexSet u(n);
    for (Vertex v = 0; v < n; ++v)
        if (member[v]) u.insert(v);
    return u;
}

EdgeSet sample_fw(const Graph& g, const VertexSet& u_set, const ProfileConstants& p,
                  std::uint64_t seed, std::size_t limit, std::size_t* resamples) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    std::vector<std::uint8_t> cross(m, 0);
    std::vector<std::uint8_t> in_fw(m, 0);
    std::vector<std::uint64_t> epoch(m, 0);
    std::vector<std::int64_t> dfw(n, 0);
    std::vector<std::int64_t> du(n, 0);
    std::vector<std::int64_t> dw(n, 0);
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = g.edge(e);
        const bool a = u_set.contains(ed.u);
        const bool b = u_set.contains(ed.v);
        (b ? du : dw)[ed.u] += 1;
        (a ? du : dw)[ed.v] += 1;
        if (a == b) continue;
        cross[e] = 1;
        in_fw[e] = stream_uniform(seed, Stream::FWCoin, e, 0) < p.p_FW;
        if (in_fw[e]) {
            ++dfw[ed.u];
            ++dfw[ed.v];
        }
    }

    // For w in W the F-edges at w number d_U(w); for u in U they number d_W(u).
    auto base = [&](Vertex v) { return static_cast<double>(u_set.contains(v) ? dw[v] : du[v]); };
    auto ok = [&](Vertex v) {
        const double b = base(v);
        const double x = static_cast<double>(dfw[v]);
        return u_set.contains(v) ? constraint::fw_in_u(b, x, p) : constraint::fw_in_w(b, x, p);
    };

    std::size_t count = 0;
    Worklist work(n);
    while (!work.empty()) {
        const Vertex v = work.pop();
        if (ok(v)) continue;
        if (count == limit) {
            std::vector<std::pair<double, Vertex>> bad;
            for (Vertex x = 0; x < n; ++x) {
                if (!ok(x)) bad.emplace_back(excess(dfw[x], p.p_FW * base(x), p.eps_FW * base(x)), x);
            }
            if (resamples) *resamples = count;
            throw RetryExhausted("partition/F_W", worst(std::move(bad)), "F_W-degree constraint not met");
        }
        ++count;
        auto nb = g.neighbors(v);
        auto inc = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const EdgeId e = inc[i];
            if (!cross[e]) continue;
            const std::uint8_t now = stream_uniform(seed, Stream::FWCoin, e, ++epoch[e]) < p.p_FW;
            if (now == in_fw[e]) continue;
            in_fw[e] = now;
            const int delta = now ? 1 : -1;
            dfw[v] += delta;
            dfw[nb[i]] += delta;
            work.push(nb[i]);
        }
        work.push(v);
    }
    if (resamples) *resamples = count;
    EdgeSet fw(m);
    for (EdgeId e = 0; e < m; ++e)
        if (in_fw[e]) fw.insert(e);
    return fw;
}

JInterval j_interval_from(double d, double d_fprime, double d_fw, double d_u, int level,
                          const ProfileConstants& p) {
    const double lo = d + (static_cast<double>(level) / p.m_levels) * d_fprime - p.eps_FU * d;
    return {lo, lo + 2 * p.eps_FU * d + d_fw + 2 * d_u};
}

JInterval j_interval(const Graph& g, const Partition& part, Vertex u, const ProfileConstants& p) {
    return j_interval_from(static_cast<double>(g.degree(u)), static_cast<double>(part.d_fprime[u]),
                           static_cast<double>(part.d_fw[u]), static_cast<double>(part.d_u[u]),
                           part.levels[u], p);
}

namespace {

bool degree_window(std::size_t d_u, std::size_t d_other) {
    return 2 * d_other >= d_u && d_other <= d_u;
}

template <class Visit>
void for_each_n_u_leq(const Graph& g, const Partition& part, Vertex u, const ProfileConstants& p,
                      Visit visit) {
    const JInterval ju = j_interval(g, part, u, p);
    for (Vertex x : g.neighbors(u)) {
        if (!part.in_u(x) || !degree_window(g.degree(u), g.degree(x))) continue;
        if (j_interval(g, part, x, p).intersects(ju)) visit(x);
    }
}

}  // namespace

VertexSet n_u_leq(const Graph& g, const Partition& part, Vertex u, const ProfileConstants& p) {
    VertexSet out(g.vertex_count());
    for_each_n_u_leq(g, part, u, p, [&](Vertex x) { out.insert(x); });
    return out;
}

std::size_t n_u_leq_count(const Graph& g, const Partition& part, Vertex u,
                          const ProfileConstants& p) {
    std::size_t c = 0;
    for_each_n_u_leq(g, part, u, p, [&](Vertex) { ++c; });
    return c;
}

void sample_levels_fu(const Graph& g, Partition& part, const ProfileConstants& p,
                      std::uint64_t seed, std::size_t limit, std::size_t* resamples) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    std::vector<std::uint64_t> level_epoch(n, 0);
    std::vector<std::uint64_t> coin_epoch(m, 0);
    std::vector<double> coin(m, 1.0);

    auto draw_level = [&](Vertex u) {
        const double t = stream_uniform(seed, Stream::Level, u, level_epoch[u]);
        return std::min(p.m_levels - 1, static_cast<int>(t * p.m_levels));
    };
    // The U end of a cross edge decides its F_U probability.
    auto u_end = [&](EdgeId e) {
        const Edge& ed = g.edge(e);
        return part.in_u(ed.u) ? ed.u : ed.v;
    };
    auto wants_fu = [&](EdgeId e) { return coin[e] * p.m_levels < part.levels[u_end(e)]; };

    part.f_u = EdgeSet(m);
    std::fill(part.d_fu.begin(), part.d_fu.end(), 0);
    for (Vertex v = 0; v < n; ++v) part.levels[v] = part.in_u(v) ? draw_level(v) : -1;
    for (EdgeId e = 0; e < m; ++e) {
        if (!part.f_prime.contains(e)) continue;
        coin[e] = stream_uniform(seed, Stream::FUCoin, e, 0);
        if (wants_fu(e)) {
            part.f_u.insert(e);
            ++part.d_fu[g.edge(e).u];
            ++part.d_fu[g.edge(e).v];
        }
    }

    auto ok_fu = [&](Vertex v) {
        const double dfp = static_cast<double>(part.d_fprime[v]);
        const double dfu = static_cast<double>(part.d_fu[v]);
        if (part.in_u(v)) {
            return constraint::fu_in_u(static_cast<double>(g.degree(v)), dfp, dfu, part.levels[v], p);
        }
        return constraint::fu_in_w(dfp, dfu, p);
    };
    auto ok_nu = [&](Vertex v) {
        if (!part.in_u(v)) return true;
        return constraint::nu_leq(static_cast<double>(n_u_leq_count(g, part, v, p)),
                                  static_cast<double>(part.d_u[v]), p);
    };

    Worklist work(n);
    std::size_t count = 0;
    Worklist* wl = &work;
    // Redraws the coins of the F' edges at v; pushes the far ends that moved.
    auto redraw_coins = [&](Vertex v) {
        auto nb = g.neighbors(v);
        auto inc = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const EdgeId e = inc[i];
            if (!part.f_prime.contains(e)) continue;
            coin[e] = stream_uniform(seed, Stream::FUCoin, e, ++coin_epoch[e]);
            const bool now = wants_fu(e);
            if (now == part.f_u.contains(e)) continue;
            const int delta = now ? 1 : -1;
            if (now) part.f_u.insert(e);
            else part.f_u.erase(e);
            part.d_fu[v] += delta;
            part.d_fu[nb[i]] += delta;
            wl->push(nb[i]);
        }
    };

    while (!work.empty()) {
        const Vertex v = work.pop();
        if (ok_fu(v) && ok_nu(v)) continue;
        if (count == limit) {
            std::vector<std::pair<double, Vertex>> bad;
            for (Vertex x = 0; x < n; ++x) {
                if (ok_fu(x) && ok_nu(x)) continue;
                const double dfp = static_cast<double>(part.d_fprime[x]);
                const double dfu = static_cast<double>(part.d_fu[x]);
                double e = 0;
                if (part.in_u(x)) {
                    const double d = static_cast<double>(g.degree(x));
                    e = excess(dfu, part.levels[x] * dfp / p.m_levels, p.eps_FU * d);
                    e = std::max(e, static_cast<double>(n_u_leq_count(g, part, x, p)) -
                                        p.frac_NU * static_cast<double>(part.d_u[x]));
                } else {
                    e = excess(dfu, p.fu_fraction_w() * dfp, p.eps_FU * dfp);
                }
                bad.emplace_back(e, x);
            }
            if (resamples) *resamples = count;
            throw RetryExhausted("partition/F_U", worst(std::move(bad)),
                                 "F_U-degree or N^U_<= constraint not met");
        }
        ++count;
        if (part.in_u(v)) {
            ++level_epoch[v];
            const int old = part.levels[v];
            part.levels[v] = draw_level(v);
            // Coins are redrawn after the level so wants_fu sees the new level.
            redraw_coins(v);
            if (part.levels[v] != old) {
                for (Vertex x : g.neighbors(v))
                    if (part.in_u(x)) work.push(x);
            }
        } else {
            redraw_coins(v);
        }
        work.push(v);
    }
    if (resamples) *resamples = count;
}

Partition sample_partition(const Graph& g, const ProfileConstants& p, std::uint64_t seed,
                           const Budgets& budgets, PartitionStats* stats) {
    check_feasibility(g, p);
    const std::size_t n = g.vertex_count();
    const std::size_t limit = budgets.local_limit(n);
    PartitionStats local;
    for (std::size_t attempt = 0;; ++attempt) {
        const std::uint64_t s = attempt_seed(seed, attempt);
        local.attempts = attempt + 1;
        std::size_t ru = 0, rfw = 0, rfu = 0;
        try {
            VertexSet u = sample_u_set(g, p, s, limit, &ru);
            EdgeSet fw = sample_fw(g, u, p, s, limit, &rfw);
            Partition part = make_partition(g, u, fw, EdgeSet(g.edge_count()),
                                            std::vector<int>(n, 0), p.m_levels);
            sample_levels_fu(g, part, p, s, limit, &rfu);
            local.resamples_u += ru;
            local.resamples_fw += rfw;
            local.resamples_fu += rfu;
            if (stats) *stats = local;
            return part;
        } catch (const RetryExhausted&) {
            local.resamples_u += ru;
            local.resamples_fw += rfw;
            local.resamples_fu += rfu;
            if (attempt >= budgets.partition_restarts) {
                if (stats) *stats = local;
                throw;
            }
        }
    }
}

PartitionAudit audit_partition(const Graph& g, const Partition& part, const ProfileConstants& p) {
    PartitionAudit a;
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    if (part.u_set.universe() != n || part.w_set.universe() != n || part.levels.size() != n ||
        part.f.universe() != m || part.f_w.universe() != m || part.f_prime.universe() != m ||
        part.f_u.universe() != m) {
        a.structural.push_back("set sizes do not match the graph");
        return a;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (part.u_set.contains(v) == part.w_set.contains(v)) {
            a.structural.push_back("W is not V \\ U at vertex " + std::to_string(v));
        }
        if (part.u_set.contains(v) && (part.levels[v] < 0 || part.levels[v] >= p.m_levels)) {
            a.structural.push_back("level out of range at vertex " + std::to_string(v));
        }
    }
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = g.edge(e);
        const bool cross = part.u_set.contains(ed.u) != part.u_set.contains(ed.v);
        const auto tag = " at edge " + std::to_string(e);
        if (part.f.contains(e) != cross) a.structural.push_back("F is not E(U,W)" + tag);
        if (part.f_w.contains(e) && !part.f.contains(e)) a.structural.push_back("F_W not inside F" + tag);
        if (part.f_prime.contains(e) != (part.f.contains(e) && !part.f_w.contains(e))) {
            a.structural.push_back("F' is not F \\ F_W" + tag);
        }
        if (part.f_u.contains(e) && !part.f_prime.contains(e)) a.structural.push_back("F_U not inside F'" + tag);
    }
    if (!a.structural.empty()) return a;

    // Counts straight from the sets.
    std::vector<std::int64_t> du(n), dw(n), dfw(n), dfp(n), dfu(n);
    for (Vertex v = 0; v < n; ++v) {
        du[v] = static_cast<std::int64_t>(degree_into(g, v, part.u_set));
        dw[v] = static_cast<std::int64_t>(degree_into(g, v, part.w_set));
        dfw[v] = static_cast<std::int64_t>(degree_in_edges(g, v, part.f_w));
        dfp[v] = static_cast<std::int64_t>(degree_in_edges(g, v, part.f_prime));
        dfu[v] = static_cast<std::int64_t>(degree_in_edges(g, v, part.f_u));
    }
    auto J = [&](Vertex u) {
        return j_interval_from(static_cast<double>(g.degree(u)), static_cast<double>(dfp[u]),
                               static_cast<double>(dfw[u]), static_cast<double>(du[u]), part.levels[u], p);
    };
    for (Vertex v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(v));
        if (!constraint::u_degree(d, static_cast<double>(du[v]), p)) a.u_degree.push_back(v);
        if (part.w_set.contains(v)) {
            if (!constraint::fw_in_w(static_cast<double>(du[v]), static_cast<double>(dfw[v]), p))
                a.fw_in_w.push_back(v);
            if (!constraint::fu_in_w(static_cast<double>(dfp[v]), static_cast<double>(dfu[v]), p))
                a.fu_in_w.push_back(v);
            continue;
        }
        if (!constraint::fw_in_u(static_cast<double>(dw[v]), static_cast<double>(dfw[v]), p))
            a.fw_in_u.push_back(v);
        if (!constraint::fu_in_u(d, static_cast<double>(dfp[v]), static_cast<double>(dfu[v]),
                                 part.levels[v], p))
            a.fu_in_u.push_back(v);
        const JInterval jv = J(v);
        std::size_t close = 0;
        for (Vertex x : g.neighbors(v)) {
            if (!part.u_set.contains(x)) continue;
            const double dx = static_cast<double>(g.degree(x));
            if (dx < 0.5 * d || dx > d) continue;
            const JInterval jx = J(x);
            if (jx.lo <= jv.hi && jv.lo <= jx.hi) ++close;
        }
        if (!constraint::nu_leq(static_cast<double>(close), static_cast<double>(du[v]), p))
            a.nu_leq.push_back(v);
    }
    return a;
}

void to_json(nlohmann::json& j, const PartitionAudit& a) {
    j = nlohmann::json{{"ok", a.ok()},
                       {"structural", a.structural},
                       {"u_degree", a.u_degree},
                       {"fw_in_w", a.fw_in_w},
                       {"fw_in_u", a.fw_in_u},
                       {"fu_in_u", a.fu_in_u},
                       {"fu_in_w", a.fu_in_w},
                       {"nu_leq", a.nu_leq}};
}

EdgeWeighting initial_outer_weights(const Graph& g, const Partition& part) {
    EdgeWeighting w(g.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (part.in_u(ed.u) && part.in_u(ed.v)) w[e] = 2;
        else if (part.f_u.contains(e)) w[e] = 2;
        else if (part.f.contains(e)) w[e] = 1;
    }
    return w;
}

void write_partition(std::ostream& os, const Graph& g, const Partition& part) {
    os << "# partition n=" << g.vertex_count() << " m=" << g.edge_count() << '\n';
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (part.in_u(v)) os << "V " << v << " U " << part.levels[v] << '\n';
        else os << "V " << v << " W\n";
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const char* label = "WW";
        if (part.in_u(ed.u) && part.in_u(ed.v)) label = "UU";
        else if (part.f_w.contains(e)) label = "FW";
        else if (part.f_u.contains(e)) label = "FU";
        else if (part.f.contains(e)) label = "F";
        os << "E " << ed.u << ' ' << ed.v << ' ' << label << '\n';
    }
}

}  // namespace w123
