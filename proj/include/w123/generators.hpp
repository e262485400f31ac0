#pragma once

#include <cstddef>
#include <cstdint>

#include "w123/graph.hpp"

namespace w123 {

// Erdős–Rényi G(n, p). Each pair is an independent Bernoulli(p) draw from
// a SplitMix64 stream seeded by `seed`.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

// Random d-regular graph via the configuration (pairing) model. Loops and
// parallel pairs left by the pairing are removed with random double-edge
// switches; if the switching budget runs out the whole pairing is redrawn,
// up to `max_attempts` times (then RetryExhausted).
Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                         std::size_t max_attempts = 20);

}  // namespace w123
