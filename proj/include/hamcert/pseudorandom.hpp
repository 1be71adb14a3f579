#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hamcert/graph.hpp"

namespace hamcert {

struct SrgParams {
  std::size_t v = 0;
  std::size_t d = 0;
  std::size_t eta = 0;  // common neighbours of an adjacent pair
  std::size_t mu = 0;   // common neighbours of a non-adjacent pair
  bool operator==(const SrgParams&) const = default;
};

struct PatchedVertex {
  Vertex vertex = 0;
  std::vector<Vertex> added;
};

struct HnRecipe {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::uint64_t k = 0;
  std::vector<PatchedVertex> patched;
};

struct HnGraph {
  Graph graph;
  HnRecipe recipe;
};

inline constexpr std::size_t kMinHnSize = 256;

bool is_prime(std::uint64_t x);
std::optional<std::uint64_t> smallest_prime_in(std::uint64_t lo, std::uint64_t hi);

// Lines through the origin of GF(q)^2 enumerated as slopes 0..q-1, then the
// vertical line. Point (a, b) is vertex a*q + b; x ~ y iff y - x lies on one
// of the first k lines. Throws InputError unless q is prime and 1 <= k <= q.
Graph build_hqk(std::uint64_t q, std::uint64_t k);

// Deterministic mask graph on [0, n): H_{q,k} restricted to its first n
// vertices, then every vertex of degree < 0.1n is joined to all of
// {0, ..., ceil(n/10)}. Throws InputError for n < kMinHnSize.
HnGraph build_hn(std::size_t n);

// nullopt unless g is regular with both adjacent and non-adjacent pairs and
// constant common-neighbour counts on each kind.
std::optional<SrgParams> check_strongly_regular(const Graph& g);

// Number of edges with one end in `a` and the other in `b` (disjoint sets).
std::size_t edges_between(const Graph& g, const VertexSet& a, const VertexSet& b);

}  // namespace hamcert
