#pragma once

#include <cstdint>
#include <vector>

#include "hamcert/graph.hpp"

namespace hamcert {

// Counter-based generator: draw(seed, stream, i) = mix(mix(seed ^ stream) + i * phi)
// where mix is the SplitMix64 finalizer and phi = 0x9e3779b97f4a7c15. Pair
// {u, v} (u < v) consumes counter i = its row-major rank among all pairs.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
// Uniform in [0, 1) from the top 53 bits.
double to_unit(std::uint64_t bits);

inline constexpr std::uint64_t kGnpStream = 0x676e70ULL;        // "gnp"
inline constexpr std::uint64_t kHalfMaskStream = 0x6d61736bULL;  // "mask"

struct GenConfig {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

// Throws InputError unless 0 <= p <= 1.
Graph gen_gnp(const GenConfig& cfg);

// Each pair included independently with probability 1/2; row-major order.
std::vector<Edge> gen_half_mask(std::size_t n, std::uint64_t seed);

}  // namespace hamcert
