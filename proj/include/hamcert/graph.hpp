#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace hamcert {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  // Stored normalized with u < v.
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

template <class F>
void for_each_bit(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      f(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
}

// Dense vertex subset of [0, n) backed by a bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), bits_(words_for(n), 0) {}
  VertexSet(std::size_t n, std::span<const Vertex> members);

  std::size_t universe() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const { return (bits_[v >> 6] >> (v & 63)) & 1u; }
  bool insert(Vertex v);
  bool erase(Vertex v);
  void insert_all(const VertexSet& other);

  std::span<const std::uint64_t> words() const { return bits_; }
  std::vector<Vertex> to_vector() const;

  template <class F>
  void for_each(F&& f) const {
    for_each_bit(words(), std::forward<F>(f));
  }

  bool operator==(const VertexSet& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Simple undirected graph on [0, n) stored as a bit-packed symmetric
// adjacency matrix. Degrees and the edge count are maintained incrementally.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_; }
  std::size_t words_per_row() const { return stride_; }

  bool has_edge(Vertex u, Vertex v) const {
    return (bits_[u * stride_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  // Both return true when the edge set changed.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);

  std::size_t degree(Vertex v) const { return degree_[v]; }
  std::span<const std::uint64_t> row(Vertex v) const {
    return {bits_.data() + v * stride_, stride_};
  }

  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    for_each_bit(row(v), std::forward<F>(f));
  }
  std::vector<Vertex> neighbors(Vertex v) const;
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> degree_;
};

// Rejects out-of-range endpoints and self-loops; duplicates collapse.
Graph from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

// Ordered sequence of distinct vertices; a single vertex is a path of length 0.
using Path = std::vector<Vertex>;

struct HamCycle {
  std::vector<Vertex> order;
  bool operator==(const HamCycle&) const = default;
};

// Vertex-disjoint paths covering [0, n). A packing holding a single Hamilton
// cycle reports size() == 0.
class FullPathPacking {
 public:
  FullPathPacking() = default;

  static FullPathPacking trivial(std::size_t n);
  // Throws InvariantViolation unless `paths` cover [0, n) exactly once.
  static FullPathPacking from_paths(std::size_t n, std::vector<Path> paths);
  static FullPathPacking closed(std::size_t n, HamCycle cycle);

  std::size_t vertex_count() const { return n_; }
  std::size_t size() const { return cycle_ ? 0 : paths_.size(); }
  bool is_cycle() const { return cycle_; }
  const std::vector<Path>& paths() const { return paths_; }
  HamCycle cycle() const;

  // Every consecutive pair on every path (and the wrap-around pair for a
  // cycle) is an edge of g.
  bool edges_within(const Graph& g) const;
  // True iff v is on some path and is not one of its endpoints.
  std::vector<bool> interior_mask() const;

 private:
  std::size_t n_ = 0;
  bool cycle_ = false;
  std::vector<Path> paths_;
};

struct MinDegree {
  std::size_t degree = 0;
  Vertex vertex = 0;
};

MinDegree min_degree(const Graph& g);

// Complement of the k-core: every vertex removed by repeatedly deleting
// vertices of current degree < k.
VertexSet peel_below(const Graph& g, std::size_t k);
inline VertexSet six_core_complement(const Graph& g) { return peel_below(g, 6); }

bool verify_ham_cycle(const Graph& g, const HamCycle& c);

// External neighborhood N(set) = neighbors of set members outside set.
VertexSet neighborhood(const Graph& g, const VertexSet& set);

}  // namespace hamcert
