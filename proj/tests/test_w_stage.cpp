#include <doctest.h>

#include <cmath>
#include <set>

#include "w123/analytic.hpp"
#include "w123/errors.hpp"
#include "w123/generators.hpp"
#include "w123/partition.hpp"
#include "w123/rng.hpp"
#include "w123/w_stage.hpp"

using namespace w123;

namespace {

// U = {0, 1}: 0-1 inside U, 0-2, 0-3, 1-4, 1-5 across, 2-3 and 4-5 inside W.
struct Small {
    Graph g{6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 3}, {4, 5}}};
    Partition part;

    Small() {
        EdgeSet f_w(g.edge_count()), f_u(g.edge_count());
        f_w.insert(g.find_edge(0, 2));
        f_w.insert(g.find_edge(1, 4));
        f_u.insert(g.find_edge(0, 3));
        part = make_partition(g, VertexSet::from(6, {0, 1}), f_w, f_u, {1, 2, -1, -1, -1, -1}, 8);
    }

    XAssignment x(double x2, double x3, double x4, double x5, double e23, double e45) const {
        XAssignment a;
        const double nan = std::nan("");
        a.x_vertex = {nan, nan, x2, x3, x4, x5};
        a.x_edge.assign(g.edge_count(), nan);
        a.x_edge[g.find_edge(2, 3)] = e23;
        a.x_edge[g.find_edge(4, 5)] = e45;
        return a;
    }
};

// Vertex 0 in W adjacent to 1..k, all in W, so d_W(0) = k.
struct Star {
    Graph g;
    Partition part;

    explicit Star(Vertex k) {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (Vertex i = 1; i <= k; ++i) pairs.emplace_back(0, i);
        g = Graph(k + 1, pairs);
        part = make_partition(g, VertexSet(k + 1), EdgeSet(k), EdgeSet(k), std::vector<int>(k + 1, -1), 8);
    }
};

const Graph& desk_regular() {
    static const Graph g = gen_random_regular(600, 200, 1);
    return g;
}

struct Instance {
    Partition part;
    EdgeWeighting outer;
    WStageState st;
};

const Instance& desk_instance() {
    static const Instance inst = [] {
        const ProfileConstants p;
        Instance i;
        i.part = sample_partition(desk_regular(), p, 7);
        i.outer = initial_outer_weights(desk_regular(), i.part);
        i.st = resample_w_stage(desk_regular(), i.part, i.outer, p, 11, Budgets{}.local_limit(600));
        return i;
    }();
    return inst;
}

}  // namespace

TEST_CASE("X draws live on their domains and are reproducible") {
    const Graph& g = desk_regular();
    const Partition part = sample_partition(g, ProfileConstants{}, 3);
    const XAssignment a = draw_x(g, part, 5);
    const XAssignment b = draw_x(g, part, 5);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (part.in_w(v)) {
            CHECK(a.x_vertex[v] >= 1.1);
            CHECK(a.x_vertex[v] <= 2.9);
            CHECK(a.x_vertex[v] == b.x_vertex[v]);
        } else {
            CHECK(std::isnan(a.x_vertex[v]));
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (is_inner(part, g.edge(e))) {
            CHECK(a.x_edge[e] >= 0.0);
            CHECK(a.x_edge[e] < 1.0);
        } else {
            CHECK(std::isnan(a.x_edge[e]));
        }
    }
    std::vector<std::uint64_t> epochs(g.vertex_count(), 0);
    const Vertex w = part.w_set.members().front();
    epochs[w] = 1;
    const XAssignment c = draw_x(g, part, 5, epochs);
    CHECK(c.x_vertex[w] != a.x_vertex[w]);
    CHECK(c.x_vertex[part.w_set.members().back()] == a.x_vertex[part.w_set.members().back()]);
}

TEST_CASE("inner edges follow the {1, 3} rule") {
    const Small s;
    EdgeWeighting w = initial_outer_weights(s.g, s.part);
    weigh_inner_edges(s.g, s.part, s.x(2.0, 2.0, 2.9, 1.1, 0.5, 0.0), w);
    CHECK(w[s.g.find_edge(2, 3)] == 3);
    CHECK(w[s.g.find_edge(4, 5)] == 1);
    weigh_inner_edges(s.g, s.part, s.x(1.5, 1.5, 1.5, 1.5, 1.0, 0.0), w);
    CHECK(w[s.g.find_edge(2, 3)] == 1);
    CHECK(w[s.g.find_edge(4, 5)] == 3);
    // Outer weights are untouched.
    CHECK(w[s.g.find_edge(0, 1)] == 2);
    CHECK(w[s.g.find_edge(0, 2)] == 1);
}

TEST_CASE("initial sums agree with the degree formula") {
    const Small s;
    EdgeWeighting w = initial_outer_weights(s.g, s.part);
    weigh_inner_edges(s.g, s.part, s.x(1.5, 1.5, 1.5, 1.5, 1.0, 1.0), w);
    std::vector<Sum> s1 = initial_sums(s.g, s.part, w);
    for (Vertex v = 2; v < 6; ++v) CHECK(s1[v] == s.part.d_u[v] + s.part.d_fu[v] + s.part.d_w[v]);
    weigh_inner_edges(s.g, s.part, s.x(2.5, 2.5, 2.5, 2.5, 0.0, 0.0), w);
    s1 = initial_sums(s.g, s.part, w);
    for (Vertex v = 2; v < 6; ++v) CHECK(s1[v] == s.part.d_u[v] + s.part.d_fu[v] + 3 * s.part.d_w[v]);

    // An outer weight that disagrees with the partition breaks the formula.
    w[s.g.find_edge(0, 3)] = 1;
    CHECK_THROWS_AS(initial_sums(s.g, s.part, w), InternalInconsistency);
    w[s.g.find_edge(2, 3)] = 0;
    CHECK_THROWS_AS(initial_sums(s.g, s.part, w), InvalidArgument);

    const Instance& inst = desk_instance();
    CHECK(initial_sums(desk_regular(), inst.part, inst.st.w1) == inst.st.s1);
}

TEST_CASE("near-location check") {
    const Star star(40);
    ProfileConstants p;
    p.eps_loc = 0.1;
    XAssignment x;
    x.x_vertex.assign(star.g.vertex_count(), 2.0);
    CHECK(check_near_location(0, 80, x, star.part, p));
    CHECK(check_near_location(0, 84, x, star.part, p));
    CHECK(check_near_location(0, 76, x, star.part, p));
    CHECK_FALSE(check_near_location(0, 85, x, star.part, p));
    CHECK_FALSE(check_near_location(0, 75, x, star.part, p));

    // Equivalent form: d'_3 within ((X - 1) / 2 +- eps_loc / 2) d_W, where
    // s1 = d_U + d_FU + d_W + 2 d'_3.
    SplitMix64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const double xv = 1.1 + 1.8 * rng.uniform();
        x.x_vertex[0] = xv;
        const std::int64_t d3 = static_cast<std::int64_t>(rng.below(41));
        const Sum s1 = 40 + 2 * d3;
        const double lo = ((xv - 1) / 2 - p.eps_loc / 2) * 40;
        const double hi = ((xv - 1) / 2 + p.eps_loc / 2) * 40;
        const bool inside = lo - 1e-9 <= double(d3) && double(d3) <= hi + 1e-9;
        if (std::abs(double(d3) - lo) > 1e-6 && std::abs(double(d3) - hi) > 1e-6)
            CHECK(check_near_location(0, s1, x, star.part, p) == inside);
    }
}

TEST_CASE("grid length is the dyadic power below eps_len d_W") {
    ProfileConstants p;
    p.eps_len = 0.25;
    CHECK(grid_length(0, 20, p) == 4);
    CHECK(grid_length(0, 4, p) == 1);
    CHECK(grid_length(0, 32, p) == 8);
    CHECK_THROWS_AS(grid_length(0, 3, p), DegenerateLength);
    SplitMix64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        p.eps_len = 0.01 + 0.5 * rng.uniform();
        const auto d_w = static_cast<std::int64_t>(std::ceil(1.0 / p.eps_len)) +
                         static_cast<std::int64_t>(rng.below(100000));
        const std::int64_t l = grid_length(0, d_w, p);
        CHECK((l & (l - 1)) == 0);
        CHECK(double(l) <= p.eps_len * double(d_w));
        CHECK(double(l) > 0.5 * p.eps_len * double(d_w));
    }
}

TEST_CASE("grid interval containing s0") {
    const Star star(20);
    ProfileConstants p;
    p.eps_len = 0.25;  // l = 4
    XAssignment x;
    x.x_vertex.assign(star.g.vertex_count(), 1.5);
    x.x_vertex[0] = 1.415;  // s0 = 1.415 * 20 + 12 = 40.3
    const IntervalEntry e = compute_interval(0, x, star.part, p);
    CHECK(e.l == 4);
    CHECK(e.s0 == doctest::Approx(40.3));
    CHECK(e.i0 == 40);
    CHECK(e.i1 == 44);
    CHECK(e.holds(e.s0));
    CHECK(e.holds(40));
    CHECK_FALSE(e.holds(44));
}

TEST_CASE("aligned dyadic intervals nest") {
    SplitMix64 rng(21);
    int meeting = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        IntervalEntry a, b;
        a.l = std::int64_t{1} << rng.below(6);
        b.l = std::int64_t{1} << rng.below(6);
        if (a.l > b.l) std::swap(a, b);
        a.s0 = 200 * rng.uniform();
        b.s0 = 200 * rng.uniform();
        a.i0 = static_cast<std::int64_t>(std::floor(a.s0 / double(a.l))) * a.l;
        b.i0 = static_cast<std::int64_t>(std::floor(b.s0 / double(b.l))) * b.l;
        a.i1 = a.i0 + a.l;
        b.i1 = b.i0 + b.l;
        if (a.meets(b)) {
            ++meeting;
            CHECK(b.i0 <= a.i0);
            CHECK(a.i1 <= b.i1);
        }
        CHECK(nested(a, b));
    }
    CHECK(meeting > 100);
    IntervalEntry odd{4, 2, 6, 3}, big{8, 0, 8, 1};
    CHECK_FALSE(nested(IntervalEntry{4, 6, 10, 7}, big));
    CHECK(nested(odd, IntervalEntry{8, 16, 24, 20}));
}

TEST_CASE("occupancy check") {
    const Star star(20);
    ProfileConstants p;  // frac_I = 0.95
    IntervalData iv;
    iv.entries.assign(star.g.vertex_count(), IntervalEntry{1, 0, 1, 0.5});
    iv.entries[0] = IntervalEntry{4, 40, 44, 41};  // threshold 3.8
    for (Vertex v = 1; v <= 20; ++v) iv.entries[v].s0 = 100;
    CHECK(occupancy(star.g, star.part, iv, 0) == 0);
    CHECK(check_occupancy(0, iv, star.g, star.part, p));
    for (Vertex v = 1; v <= 3; ++v) iv.entries[v].s0 = 40 + v;
    CHECK(occupancy(star.g, star.part, iv, 0) == 3);
    CHECK(check_occupancy(0, iv, star.g, star.part, p));
    for (Vertex v = 4; v <= 5; ++v) iv.entries[v].s0 = 43.5;
    CHECK(occupancy(star.g, star.part, iv, 0) == 5);
    CHECK_FALSE(check_occupancy(0, iv, star.g, star.part, p));

    // A vertex with no W-neighbours of smaller d_W has nothing to count.
    const Graph lonely(3, {{0, 1}, {1, 2}});
    const Partition part = make_partition(lonely, VertexSet::from(3, {1}), EdgeSet(2), EdgeSet(2), {-1, 0, -1}, 8);
    IntervalData iv2;
    iv2.entries.assign(3, IntervalEntry{1, 0, 1, 0.5});
    CHECK(check_occupancy(0, iv2, lonely, part, p));
}

TEST_CASE("resampled W-stage state passes the full audit") {
    const Graph& g = desk_regular();
    const ProfileConstants p;
    const Instance& inst = desk_instance();
    const WStageAudit audit = audit_w_stage(g, inst.part, inst.st, p);
    CHECK(audit.ok());
    for (Vertex v : inst.part.w_set.members()) {
        CHECK(check_near_location(v, inst.st.s1[v], inst.st.x, inst.part, p));
        CHECK(check_occupancy(v, inst.st.intervals, g, inst.part, p));
        CHECK(inst.st.intervals.entries[v].holds(inst.st.intervals.entries[v].s0));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const int w = inst.st.w1[e];
        if (is_inner(inst.part, g.edge(e))) CHECK((w == 1 || w == 3));
        else CHECK(w == inst.outer[e]);
    }
    const WStageState again = resample_w_stage(g, inst.part, inst.outer, p, 11, Budgets{}.local_limit(600));
    CHECK(again.w1 == inst.st.w1);
    CHECK(again.resamples == inst.st.resamples);

    WStageState broken = inst.st;
    broken.s1[inst.part.w_set.members().front()] += 1;
    CHECK_FALSE(audit_w_stage(g, inst.part, broken, p).ok());
    const nlohmann::json j = audit_w_stage(g, inst.part, broken, p);
    CHECK(j.at("sum_mismatch").size() == 1);
}

TEST_CASE("W-stage nesting holds on sampled intervals") {
    const Graph& g = desk_regular();
    const Instance& inst = desk_instance();
    std::size_t pairs = 0;
    for (const Edge& e : g.edges()) {
        if (!is_inner(inst.part, e)) continue;
        Vertex a = e.u, b = e.v;
        if (inst.part.d_w[a] > inst.part.d_w[b]) std::swap(a, b);
        CHECK(nested(inst.st.intervals.entries[a], inst.st.intervals.entries[b]));
        ++pairs;
    }
    CHECK(pairs > 1000);
}

TEST_CASE("W-stage gives up with RetryExhausted") {
    const Graph& g = desk_regular();
    ProfileConstants p;
    p.eps_loc = 1e-4;
    const Instance& inst = desk_instance();
    try {
        resample_w_stage(g, inst.part, inst.outer, p, 1, 5);
        FAIL("expected RetryExhausted");
    } catch (const RetryExhausted& e) {
        CHECK(e.stage() == "w-stage");
        CHECK_FALSE(e.violators().empty());
    }
}

TEST_CASE("inner-edge weights match the weight 3 probability") {
    // Edge 2-3 of the small instance with X_2 fixed and X_3, X_23 drawn.
    const Small s;
    SplitMix64 rng(123);
    const EdgeId e = s.g.find_edge(2, 3);
    const int n = 100000;
    for (double alpha : {1.2, analytic::breakpoints().a2, 2.5}) {
        EdgeWeighting w = initial_outer_weights(s.g, s.part);
        int threes = 0;
        for (int i = 0; i < n; ++i) {
            weigh_inner_edges(s.g, s.part, s.x(alpha, analytic::sample_x(rng), 1.5, 1.5, rng.uniform(), 0.5), w);
            threes += w[e] == 3;
        }
        const double p = analytic::weight3_probability(alpha);
        CHECK(std::abs(double(threes) / n - p) < 4 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("sum additions on hand-built intervals") {
    const Star star(20);
    ProfileConstants p;
    IntervalData iv;
    iv.entries.resize(star.g.vertex_count());
    std::vector<Sum> s1(star.g.vertex_count(), 0);
    // The leaves come first (smaller d_W) and keep their sums, far from 0's.
    for (Vertex v = 1; v <= 20; ++v) {
        s1[v] = 102 + 10 * v;
        iv.entries[v] = IntervalEntry{1, s1[v], s1[v] + 1, s1[v] + 0.5};
    }
    iv.entries[0] = IntervalEntry{4, 12, 16, 13};

    SUBCASE("no processed neighbour inside I") {
        s1[0] = 13;
        const SumAdditions add = choose_sum_additions(star.g, star.part, s1, iv, p);
        CHECK(add.a[0] == 0);
    }
    SUBCASE("reserved residues are skipped") {
        iv.entries[0] = IntervalEntry{4, 20, 24, 21};
        s1[0] = 18;
        const SumAdditions add = choose_sum_additions(star.g, star.part, s1, iv, p);
        CHECK(add.a[0] == 4);  // 20 and 21 are reserved
    }
    SUBCASE("processed neighbours block their sums") {
        s1[0] = 13;
        for (Vertex v = 1; v <= 2; ++v) {
            iv.entries[v] = IntervalEntry{1, 12 + v, 13 + v, 12.5 + v};
            s1[v] = 12 + v;
        }
        const SumAdditions add = choose_sum_additions(star.g, star.part, s1, iv, p);
        CHECK(add.a[0] == 2);  // 13 and 14 taken
    }
    SUBCASE("everything blocked") {
        s1[0] = 13;
        for (Vertex v = 1; v <= 3; ++v) {
            iv.entries[v] = IntervalEntry{1, 12 + v, 13 + v, 12.5 + v};
            s1[v] = 12 + v;
        }
        CHECK_THROWS_AS(choose_sum_additions(star.g, star.part, s1, iv, p), NoValidAddition);
    }
    SUBCASE("initial sum above I") {
        s1[0] = 16;
        try {
            choose_sum_additions(star.g, star.part, s1, iv, p);
            FAIL("expected NoValidAddition");
        } catch (const NoValidAddition& e) {
            CHECK(e.vertex() == 0);
            CHECK(std::string(e.what()).find("I=[12, 16)") != std::string::npos);
        }
    }
}

TEST_CASE("sum additions on the desk instance satisfy all three requirements") {
    const Graph& g = desk_regular();
    const ProfileConstants p;
    const Instance& inst = desk_instance();
    const SumAdditions add = choose_sum_additions(g, inst.part, inst.st.s1, inst.st.intervals, p);
    const std::vector<Vertex> order = w_order(inst.part);
    std::vector<std::size_t> pos(g.vertex_count(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t i = 1; i < order.size(); ++i) {
        CHECK(inst.part.d_w[order[i - 1]] <= inst.part.d_w[order[i]]);
    }
    std::size_t bounded = 0;
    for (Vertex v : order) {
        const IntervalEntry& I = inst.st.intervals.entries[v];
        const Sum s2 = inst.st.s1[v] + add.a[v];
        CHECK(add.a[v] >= 0);
        CHECK(I.holds(double(s2)));
        CHECK_FALSE(p.is_reserved(s2));
        for (Vertex u : g.neighbors(v)) {
            if (inst.part.in_w(u) && pos[u] < pos[v] && inst.part.d_w[u] <= inst.part.d_w[v])
                CHECK(inst.st.s1[u] + add.a[u] != s2);
        }
        // With eps_loc d_W <= l the initial sum sits between i1 - 6l and i0.
        if (p.eps_loc * double(inst.part.d_w[v]) <= double(I.l)) {
            ++bounded;
            CHECK(inst.st.s1[v] <= I.i0);
            CHECK(inst.st.s1[v] >= I.i1 - 6 * I.l);
            CHECK(add.a[v] <= 6 * I.l);
        }
    }
    CHECK(bounded > 0);
}

TEST_CASE("applying additions") {
    const Small s;
    EdgeWeighting w1 = initial_outer_weights(s.g, s.part);
    weigh_inner_edges(s.g, s.part, s.x(1.5, 1.5, 1.5, 1.5, 1.0, 1.0), w1);
    SumAdditions none{std::vector<std::int64_t>(6, 0)};
    CHECK(apply_additions(s.g, s.part, w1, none) == w1);

    SumAdditions one{std::vector<std::int64_t>(6, 0)};
    one.a[2] = 1;
    const EdgeWeighting w2 = apply_additions(s.g, s.part, w1, one);
    const auto before = weighted_degrees(s.g, w1).sums;
    const auto after = weighted_degrees(s.g, w2).sums;
    CHECK(after[2] == before[2] + 1);
    CHECK(after[0] == before[0] + 1);
    CHECK(after[3] == before[3]);

    one.a[2] = 2;
    CHECK_THROWS_AS(apply_additions(s.g, s.part, w1, one), InsufficientFW);
}

TEST_CASE("applying additions on the desk instance") {
    const Graph& g = desk_regular();
    const ProfileConstants p;
    const Instance& inst = desk_instance();
    const SumAdditions add = choose_sum_additions(g, inst.part, inst.st.s1, inst.st.intervals, p);
    const EdgeWeighting w2 = apply_additions(g, inst.part, inst.st.w1, add);
    const auto s2 = weighted_degrees(g, w2).sums;
    std::vector<std::int64_t> raised_u(g.vertex_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (w2[e] == inst.st.w1[e]) continue;
        CHECK(inst.part.f_w.contains(e));
        CHECK(inst.st.w1[e] == 1);
        CHECK(w2[e] == 2);
        const Edge& ed = g.edge(e);
        ++raised_u[inst.part.in_u(ed.u) ? ed.u : ed.v];
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (inst.part.in_w(v)) CHECK(s2[v] == inst.st.s1[v] + add.a[v]);
        else CHECK(s2[v] == inst.st.s1[v] + raised_u[v]);
    }
    for (const Edge& e : g.edges())
        if (is_inner(inst.part, e)) CHECK(s2[e.u] != s2[e.v]);

    const nlohmann::json dump = w_stage_dump(g, inst.part, inst.st, &add);
    CHECK(dump.size() == inst.part.w_set.size());
    const auto& row = dump.front();
    for (const char* key : {"v", "x", "s1", "s0", "l", "I", "d_w", "d_fw", "a", "s2"}) CHECK(row.contains(key));
}
