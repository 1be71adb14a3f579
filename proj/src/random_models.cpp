#include "hamcert/random_models.hpp"

#include "hamcert/errors.hpp"

namespace hamcert {

namespace {
constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kPhi;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ stream) + index * kPhi);
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Graph gen_gnp(const GenConfig& cfg) {
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  Graph g(cfg.n);
  const std::uint64_t key = splitmix64(cfg.seed ^ kGnpStream);
  std::uint64_t index = 0;
  for (Vertex u = 0; u < cfg.n; ++u) {
    for (Vertex v = u + 1; v < cfg.n; ++v, ++index) {
      if (to_unit(splitmix64(key + index * kPhi)) < cfg.p) g.add_edge(u, v);
    }
  }
  return g;
}

std::vector<Edge> gen_half_mask(std::size_t n, std::uint64_t seed) {
  std::vector<Edge> mask;
  const std::uint64_t key = splitmix64(seed ^ kHalfMaskStream);
  std::uint64_t index = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++index) {
      if (splitmix64(key + index * kPhi) >> 63) mask.emplace_back(u, v);
    }
  }
  return mask;
}

}  // namespace hamcert
