#pragma once

#include <cstdint>
#include <limits>

namespace w123 {

// SplitMix64 finalizer. A bijective 64-bit mixer; good enough to turn
// structured keys (seed, stream tag, entity id, epoch) into independent
// looking words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream tags. Every random choice in the construction is drawn from a
// stream keyed by (seed, tag, entity, epoch), so results do not depend on
// the order in which entities are visited.
enum class Stream : std::uint64_t {
    UMembership = 1,
    FWCoin = 2,
    Level = 3,
    FUCoin = 4,
    XVertex = 5,
    XEdge = 6,
    Restart = 7,
    Generator = 8,
};

constexpr std::uint64_t stream_word(std::uint64_t seed, Stream tag, std::uint64_t entity,
                                    std::uint64_t epoch) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc908ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(tag));
    h = mix64(h ^ entity);
    return mix64(h ^ (epoch * 0xd1b54a32d192ed03ULL));
}

// 53-bit uniform on [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double stream_uniform(std::uint64_t seed, Stream tag, std::uint64_t entity,
                                std::uint64_t epoch) noexcept {
    return to_unit(stream_word(seed, tag, entity, epoch));
}

// Seed derivation for restarts ("attempt k of seed s").
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt) noexcept {
    return attempt == 0 ? seed : stream_word(seed, Stream::Restart, attempt, 0);
}

// Small sequential engine satisfying UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() noexcept { return to_unit((*this)()); }

    // Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = (*this)();
            const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace w123
