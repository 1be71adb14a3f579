#include "hamcert/exact_ham.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <vector>

#include "hamcert/errors.hpp"

namespace hamcert {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.size(), 0);
  for (Vertex x = 0; x < g.size(); ++x) {
    g.for_each_neighbor(x, [&](Vertex y) { adj[x] |= Mask{1} << y; });
  }
  return adj;
}

// Alternating sum over subsets of the vertices other than v and u. The result
// is exact in any ring Z/2^b whenever the true count (at most (n-2)!) is
// below 2^b, so fixed-width wrap-around arithmetic is used when that holds.
template <class Int>
Int alternating_walk_sum(const std::vector<Mask>& adj, std::size_t n, Vertex v, Vertex u) {
  std::vector<Vertex> others;
  for (Vertex x = 0; x < n; ++x) {
    if (x != v && x != u) others.push_back(x);
  }
  const std::size_t k = others.size();
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

  std::vector<Int> cur(n);
  std::vector<Int> next(n);
  Int positive = 0;
  Int negative = 0;
  for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
    Mask removed = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((sub >> i) & 1) removed |= Mask{1} << others[i];
    }
    const Mask allowed = all & ~removed;
    for (auto& c : cur) c = 0;
    cur[v] = 1;
    for (std::size_t step = 0; step + 1 < n; ++step) {
      for (Mask ys = allowed; ys != 0; ys &= ys - 1) {
        const auto y = static_cast<Vertex>(std::countr_zero(ys));
        Int acc = 0;
        for (Mask xs = adj[y] & allowed; xs != 0; xs &= xs - 1) {
          acc += cur[static_cast<std::size_t>(std::countr_zero(xs))];
        }
        next[y] = acc;
      }
      std::swap(cur, next);
    }
    if (std::popcount(sub) % 2 == 0) {
      positive += cur[u];
    } else {
      negative += cur[u];
    }
  }
  return positive - negative;
}

// log2((n-2)!) < bits
bool factorial_fits(std::size_t n, unsigned bits) {
  double log2f = 0.0;
  for (std::size_t i = 2; i + 2 <= n; ++i) log2f += std::log2(static_cast<double>(i));
  return log2f + 1.0 < static_cast<double>(bits);
}

}  // namespace

WalkCount count_ham_paths(const Graph& g, Vertex v, Vertex u, std::size_t bound) {
  const std::size_t n = g.size();
  if (v == u || v >= n || u >= n) throw InputError("count_ham_paths needs distinct endpoints");
  if (n > bound || n > 64) throw BudgetExceeded("exact solver bound exceeded");
  const auto adj = adjacency_masks(g);
  if (factorial_fits(n, 64)) {
    return WalkCount(alternating_walk_sum<std::uint64_t>(adj, n, v, u));
  }
  if (factorial_fits(n, 128)) {
    const unsigned __int128 r = alternating_walk_sum<unsigned __int128>(adj, n, v, u);
    WalkCount out = static_cast<std::uint64_t>(r >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(r);
    return out;
  }
  return alternating_walk_sum<WalkCount>(adj, n, v, u);
}

namespace {

// Hamilton paths from w to u in the subgraph induced by rest.
bool has_path_within(const Graph& g, Mask rest, Vertex w, Vertex u, std::size_t bound) {
  std::vector<Vertex> label(g.size(), kNoVertex);
  std::size_t k = 0;
  for (Mask r = rest; r != 0; r &= r - 1) label[static_cast<std::size_t>(std::countr_zero(r))] = static_cast<Vertex>(k++);
  if (k == 2) return g.has_edge(w, u);
  Graph h(k);
  for (Mask r = rest; r != 0; r &= r - 1) {
    const auto x = static_cast<Vertex>(std::countr_zero(r));
    g.for_each_neighbor(x, [&](Vertex y) {
      if (x < y && ((rest >> y) & 1)) h.add_edge(label[x], label[y]);
    });
  }
  return count_ham_paths(h, label[w], label[u], bound) != 0;
}

}  // namespace

ExactResult inclusion_exclusion_ham(const Graph& g, std::size_t bound) {
  const std::size_t n = g.size();
  // a vertex of degree at most one rules out a cycle at any size
  const auto md = min_degree(g);
  if (n < 3 || md.degree <= 1) return {};
  if (n > bound || n > 64) throw BudgetExceeded("exact solver bound exceeded");
  // every Hamilton cycle uses an edge at the minimum-degree vertex
  const Vertex v = md.vertex;
  for (const Vertex u : g.neighbors(v)) {
    Graph f = g;
    f.remove_edge(v, u);
    if (count_ham_paths(f, v, u, bound) == 0) continue;

    // extend a v-u path one vertex at a time, keeping a completion alive
    const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    Mask rest = all & ~(Mask{1} << v);
    HamCycle cycle;
    cycle.order.push_back(v);
    Vertex cur = v;
    while (rest != (Mask{1} << u)) {
      Vertex next = kNoVertex;
      for (const Vertex w : f.neighbors(cur)) {
        if (w == u || !((rest >> w) & 1)) continue;
        if (has_path_within(f, rest, w, u, bound)) {
          next = w;
          break;
        }
      }
      if (next == kNoVertex) throw InvariantViolation("cycle extraction lost every completion");
      cycle.order.push_back(next);
      rest &= ~(Mask{1} << next);
      cur = next;
    }
    cycle.order.push_back(u);
    if (!verify_ham_cycle(g, cycle)) throw InvariantViolation("extracted order is not a Hamilton cycle");
    return {std::move(cycle), Edge(v, u)};
  }
  return {};
}

namespace {

bool extend(const std::vector<Mask>& adj, std::size_t n, std::vector<Vertex>& order, Mask used) {
  const Vertex last = order.back();
  if (order.size() == n) {
    return ((adj[last] >> order.front()) & 1) && order[1] < order.back();
  }
  for (Mask xs = adj[last] & ~used; xs != 0; xs &= xs - 1) {
    const auto x = static_cast<Vertex>(std::countr_zero(xs));
    order.push_back(x);
    if (extend(adj, n, order, used | (Mask{1} << x))) return true;
    order.pop_back();
  }
  return false;
}

}  // namespace

std::optional<HamCycle> brute_force_ham(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kBruteForceBound) throw BudgetExceeded("brute force limited to 12 vertices");
  if (n < 3) return std::nullopt;
  const auto adj = adjacency_masks(g);
  std::vector<Vertex> order{0};
  if (extend(adj, n, order, Mask{1})) return HamCycle{order};
  return std::nullopt;
}

}  // namespace hamcert
