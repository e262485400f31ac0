#include "w123/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <thread>

#include "w123/errors.hpp"

namespace w123 {

namespace {

std::vector<EdgeId> bfs_edge_order(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> roots(n);
    std::iota(roots.begin(), roots.end(), 0);
    std::stable_sort(roots.begin(), roots.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    std::vector<std::uint8_t> seen(n, 0), listed(g.edge_count(), 0);
    std::vector<EdgeId> order;
    std::vector<Vertex> queue;
    for (Vertex r : roots) {
        if (seen[r]) continue;
        seen[r] = 1;
        queue.assign(1, r);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex x = queue[head];
            auto nb = g.neighbors(x);
            auto inc = g.incident_edges(x);
            for (std::size_t i = 0; i < nb.size(); ++i) {
                if (!listed[inc[i]]) {
                    listed[inc[i]] = 1;
                    order.push_back(inc[i]);
                }
                if (!seen[nb[i]]) {
                    seen[nb[i]] = 1;
                    queue.push_back(nb[i]);
                }
            }
        }
    }
    return order;
}

class Search {
public:
    Search(const Graph& g, int k) : g_(g), k_(k), order_(bfs_edge_order(g)) {
        const std::size_t n = g.vertex_count();
        last_.assign(n, 0);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const Edge& e = g.edge(order_[i]);
            last_[e.u] = i;
            last_[e.v] = i;
        }
        sum_.assign(n, 0);
        complete_.assign(n, 0);
        w_ = EdgeWeighting(g.edge_count(), 0, k);
    }

    bool run() { return order_.empty() ? true : step(0); }
    const EdgeWeighting& witness() const { return w_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    // A completed vertex must differ from every completed neighbour.
    bool clashes(Vertex x) const {
        for (Vertex y : g_.neighbors(x))
            if (complete_[y] && sum_[y] == sum_[x]) return true;
        return false;
    }

    bool step(std::size_t i) {
        const EdgeId id = order_[i];
        const Edge& e = g_.edge(id);
        for (int wt = 1; wt <= k_; ++wt) {
            ++nodes_;
            w_[id] = wt;
            sum_[e.u] += wt;
            sum_[e.v] += wt;
            bool ok = true;
            for (Vertex x : {e.u, e.v}) {
                if (last_[x] == i) {
                    complete_[x] = 1;
                    ok = ok && !clashes(x);
                }
            }
            if (ok && (i + 1 == order_.size() || step(i + 1))) return true;
            for (Vertex x : {e.u, e.v})
                if (last_[x] == i) complete_[x] = 0;
            sum_[e.u] -= wt;
            sum_[e.v] -= wt;
        }
        w_[id] = 0;
        return false;
    }

    const Graph& g_;
    int k_;
    std::vector<EdgeId> order_;
    std::vector<std::size_t> last_;
    std::vector<Sum> sum_;
    std::vector<std::uint8_t> complete_;
    EdgeWeighting w_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult min_k_weighting(const Graph& g, int k_max) {
    if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
    OracleResult r;
    for (int k = 1; k <= k_max; ++k) {
        Search s(g, k);
        const bool found = s.run();
        r.nodes_explored += s.nodes();
        if (found) {
            r.min_k = k;
            r.witness = s.witness();
            if (!conflicts(g, r.witness).empty()) {
                throw InternalInconsistency("oracle witness has a sum conflict");
            }
            return r;
        }
    }
    return r;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::size_t bit = 0;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b, ++bit) {
            if (mask >> bit & 1) pairs.emplace_back(a, b);
        }
    }
    return Graph(n, std::move(pairs));
}

std::size_t SweepReport::checked() const {
    return std::accumulate(connected_per_n.begin(), connected_per_n.end(), std::size_t{0});
}

SweepReport sweep_small_graphs(std::size_t n_max, int k, unsigned jobs) {
    if (n_max > 8) throw InvalidArgument("n_max must be at most 8");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    jobs = std::max(1u, jobs);
    SweepReport rep;
    rep.k = k;
    rep.n_max = n_max;
    rep.connected_per_n.assign(n_max + 1, 0);
    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::size_t pairs = n * (n - 1) / 2;
        const std::uint64_t total = std::uint64_t{1} << pairs;
        std::vector<std::vector<SweepRow>> found(jobs);
        std::vector<std::size_t> connected(jobs, 0);
        auto work = [&](unsigned job) {
            for (std::uint64_t mask = job; mask < total; mask += jobs) {
                const auto m = static_cast<std::size_t>(__builtin_popcountll(mask));
                if (m < 2 || m + 1 < n) continue;
                const Graph g = graph_from_mask(n, mask);
                if (!is_connected(g)) continue;
                ++connected[job];
                if (min_k_weighting(g, k).min_k) continue;
                // Report how far off it is, within a small cap.
                const OracleResult more = min_k_weighting(g, k + 2);
                found[job].push_back({mask, n, g.edge_count(), more.min_k ? *more.min_k : -1});
            }
        };
        std::vector<std::thread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work, j);
        work(0);
        for (auto& t : pool) t.join();
        for (unsigned j = 0; j < jobs; ++j) {
            rep.connected_per_n[n] += connected[j];
            rep.counterexamples.insert(rep.counterexamples.end(), found[j].begin(), found[j].end());
        }
    }
    std::sort(rep.counterexamples.begin(), rep.counterexamples.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.n != b.n ? a.n < b.n : a.id < b.id;
    });
    return rep;
}

void write_sweep_csv(std::ostream& os, const SweepReport& r) {
    os << "id,n,m,min_k\n";
    for (const SweepRow& row : r.counterexamples) {
        os << row.id << ',' << row.n << ',' << row.m << ',' << row.min_k << '\n';
    }
}

}  // namespace w123
