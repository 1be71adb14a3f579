#include "hamcert/graph.hpp"

#include <algorithm>
#include <deque>

#include "hamcert/errors.hpp"

namespace hamcert {

VertexSet::VertexSet(std::size_t n, std::span<const Vertex> members) : VertexSet(n) {
  for (Vertex v : members) insert(v);
}

bool VertexSet::insert(Vertex v) {
  std::uint64_t& w = bits_[v >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  if (w & mask) return false;
  w |= mask;
  ++count_;
  return true;
}

bool VertexSet::erase(Vertex v) {
  std::uint64_t& w = bits_[v >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  if (!(w & mask)) return false;
  w &= ~mask;
  --count_;
  return true;
}

void VertexSet::insert_all(const VertexSet& other) {
  count_ = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    bits_[i] |= other.bits_[i];
    count_ += static_cast<std::size_t>(std::popcount(bits_[i]));
  }
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

Graph::Graph(std::size_t n)
    : n_(n), stride_(words_for(n)), bits_(n * words_for(n), 0), degree_(n, 0) {}

bool Graph::add_edge(Vertex u, Vertex v) {
  if (has_edge(u, v)) return false;
  bits_[u * stride_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  bits_[v * stride_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  ++degree_[u];
  ++degree_[v];
  ++edges_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  if (!has_edge(u, v)) return false;
  bits_[u * stride_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  bits_[v * stride_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
  --degree_[u];
  --degree_[v];
  --edges_;
  return true;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(degree_[v]);
  for_each_neighbor(v, [&](Vertex w) { out.push_back(w); });
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < n_; ++u) {
    for_each_neighbor(u, [&](Vertex w) {
      if (u < w) out.emplace_back(u, w);
    });
  }
  return out;
}

Graph from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  Graph g(n);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw InputError("edge endpoint out of range");
    if (a == b) throw InputError("self-loop in edge list");
    g.add_edge(a, b);
  }
  return g;
}

FullPathPacking FullPathPacking::trivial(std::size_t n) {
  FullPathPacking p;
  p.n_ = n;
  p.paths_.reserve(n);
  for (Vertex v = 0; v < n; ++v) p.paths_.push_back({v});
  return p;
}

FullPathPacking FullPathPacking::from_paths(std::size_t n, std::vector<Path> paths) {
  std::vector<bool> seen(n, false);
  std::size_t covered = 0;
  for (const Path& path : paths) {
    if (path.empty()) throw InvariantViolation("empty path in packing");
    for (Vertex v : path) {
      if (v >= n || seen[v]) throw InvariantViolation("packing repeats or leaves [n]");
      seen[v] = true;
      ++covered;
    }
  }
  if (covered != n) throw InvariantViolation("packing does not cover every vertex");
  FullPathPacking p;
  p.n_ = n;
  p.paths_ = std::move(paths);
  return p;
}

FullPathPacking FullPathPacking::closed(std::size_t n, HamCycle cycle) {
  FullPathPacking p = from_paths(n, {std::move(cycle.order)});
  p.cycle_ = true;
  return p;
}

HamCycle FullPathPacking::cycle() const {
  if (!cycle_) throw InvariantViolation("packing is not a Hamilton cycle");
  return HamCycle{paths_.front()};
}

bool FullPathPacking::edges_within(const Graph& g) const {
  for (const Path& path : paths_) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (!g.has_edge(path[i - 1], path[i])) return false;
    }
  }
  if (cycle_) {
    const Path& c = paths_.front();
    if (c.size() < 3 || !g.has_edge(c.back(), c.front())) return false;
  }
  return true;
}

std::vector<bool> FullPathPacking::interior_mask() const {
  std::vector<bool> interior(n_, false);
  for (const Path& path : paths_) {
    for (std::size_t i = 1; i + 1 < path.size(); ++i) interior[path[i]] = true;
    if (cycle_) {
      for (Vertex v : path) interior[v] = true;
    }
  }
  return interior;
}

MinDegree min_degree(const Graph& g) {
  MinDegree best{g.size(), 0};
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.degree(v) < best.degree) best = {g.degree(v), v};
  }
  return best;
}

VertexSet peel_below(const Graph& g, std::size_t k) {
  const std::size_t n = g.size();
  VertexSet removed(n);
  std::vector<std::size_t> deg(n);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < k) {
      removed.insert(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    g.for_each_neighbor(v, [&](Vertex w) {
      if (removed.contains(w)) return;
      if (--deg[w] < k) {
        removed.insert(w);
        queue.push_back(w);
      }
    });
  }
  return removed;
}

bool verify_ham_cycle(const Graph& g, const HamCycle& c) {
  const std::size_t n = g.size();
  if (n < 3 || c.order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Vertex v : c.order) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.has_edge(c.order[i], c.order[(i + 1) % n])) return false;
  }
  return true;
}

VertexSet neighborhood(const Graph& g, const VertexSet& set) {
  VertexSet out(g.size());
  set.for_each([&](Vertex v) {
    g.for_each_neighbor(v, [&](Vertex w) {
      if (!set.contains(w)) out.insert(w);
    });
  });
  return out;
}

}  // namespace hamcert
