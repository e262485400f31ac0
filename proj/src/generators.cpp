#include "w123/generators.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

#include "w123/errors.hpp"
#include "w123/rng.hpp"

namespace w123 {

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("gnp: p must lie in [0, 1]");
    SplitMix64 rng(stream_word(seed, Stream::Generator, 0, 0));
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
            if (rng.uniform() < p) pairs.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(pairs));
}

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

// One pairing plus switch repair. Returns false when the repair budget runs out.
bool try_pairing(std::size_t n, std::size_t d, SplitMix64& rng,
                 std::vector<std::pair<Vertex, Vertex>>& out) {
    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i) {
        std::swap(stubs[i - 1], stubs[rng.below(i)]);
    }
    const std::size_t m = stubs.size() / 2;
    std::vector<std::pair<Vertex, Vertex>> edges(m);
    std::unordered_map<std::uint64_t, std::uint32_t> count;
    count.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
        ++count[pair_key(edges[i].first, edges[i].second)];
    }
    auto is_bad = [&](std::size_t i) {
        auto [a, b] = edges[i];
        return a == b || count[pair_key(a, b)] > 1;
    };

    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < m; ++i)
        if (is_bad(i)) bad.push_back(i);

    const std::size_t budget = 200 * (bad.size() + 1) + 10 * m;
    std::size_t steps = 0;
    while (!bad.empty()) {
        if (++steps > budget) return false;
        const std::size_t i = bad.back();
        if (!is_bad(i)) {
            bad.pop_back();
            continue;
        }
        const std::size_t j = rng.below(m);
        if (j == i) continue;
        auto [a, b] = edges[i];
        auto [c, e] = edges[j];
        if (rng.uniform() < 0.5) std::swap(c, e);
        // {a,b},{c,e} -> {a,c},{b,e}
        if (a == c || b == e) continue;
        if (count[pair_key(a, c)] > 0 || count[pair_key(b, e)] > 0) continue;
        if (pair_key(a, c) == pair_key(b, e)) continue;
        --count[pair_key(a, b)];
        --count[pair_key(edges[j].first, edges[j].second)];
        edges[i] = {a, c};
        edges[j] = {b, e};
        ++count[pair_key(a, c)];
        ++count[pair_key(b, e)];
        // The old partner of a duplicate may have become clean; stale entries
        // are skipped lazily by the is_bad check above.
    }
    for (std::size_t i = 0; i < m; ++i)
        if (is_bad(i)) return false;
    out = std::move(edges);
    return true;
}

}  // namespace

Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_attempts) {
    if ((n * d) % 2 != 0) throw InvalidArgument("random regular: n*d must be even");
    if (d >= n && !(n == 0 && d == 0)) throw InvalidArgument("random regular: need d < n");
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        SplitMix64 rng(stream_word(seed, Stream::Generator, 1, attempt));
        if (try_pairing(n, d, rng, pairs)) {
            Graph g(n, std::move(pairs));
            if (g.edge_count() * 2 == n * d) return g;
        }
    }
    throw RetryExhausted("gen_random_regular", {}, "switch repair failed in every attempt");
}

}  // namespace w123
