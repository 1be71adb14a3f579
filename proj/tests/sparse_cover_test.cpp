#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>

#include "hamcert/errors.hpp"
#include "hamcert/exact_ham.hpp"
#include "hamcert/sparse_cover.hpp"

using namespace hamcert;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937& rng) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (std::bernoulli_distribution(p)(rng)) g.add_edge(u, v);
  return g;
}

VertexSet all_of(std::size_t n) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v) s.insert(v);
  return s;
}

std::size_t outside_neighbours(const Graph& g, std::uint32_t mask, const VertexSet& s) {
  std::uint32_t nb = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (mask >> v & 1u) g.for_each_neighbor(v, [&](Vertex x) { nb |= 1u << x; });
  nb &= ~mask;
  std::size_t c = 0;
  for (Vertex x = 0; x < g.size(); ++x) c += (nb >> x & 1u) && !s.contains(x);
  return c;
}

std::vector<Vertex> bits(std::uint32_t mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < 32; ++v)
    if (mask >> v & 1u) out.push_back(v);
  return out;
}

// Smallest, then lexicographically first, Q outside s with |N(Q) \ s| < 2|Q|.
std::optional<std::vector<Vertex>> brute_first(const Graph& g, const VertexSet& s, std::size_t cap) {
  const std::size_t n = g.size();
  std::uint32_t smask = 0;
  for (Vertex v : s.to_vector()) smask |= 1u << v;
  std::optional<std::vector<Vertex>> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (mask & smask) continue;
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k > cap || outside_neighbours(g, mask, s) >= 2 * k) continue;
    auto q = bits(mask);
    if (!best || q.size() < best->size() || (q.size() == best->size() && q < *best)) best = q;
  }
  return best;
}

std::vector<Vertex> brute_max_nonexpanding(const Graph& g, const std::vector<Vertex>& cand) {
  std::vector<Vertex> best;
  const VertexSet none(g.size());
  for (std::uint32_t m = 1; m < (1u << cand.size()); ++m) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (m >> i & 1u) mask |= 1u << cand[i];
    auto q = bits(mask);
    if (outside_neighbours(g, mask, none) >= 2 * q.size()) continue;
    if (q.size() > best.size() || (q.size() == best.size() && q < best)) best = q;
  }
  return best;
}

}  // namespace

TEST_CASE("size cap policies") {
  std::vector<Vertex> base{1, 2};
  std::vector<Vertex> three{1, 2, 3};
  VertexSet s(6, three);
  CHECK(SizeCapPolicy{CapMode::paper, 0, VertexSet(6)}.cap(s) == 3);
  CHECK(SizeCapPolicy{CapMode::middle, 0, VertexSet(6, base)}.cap(s) == 1);
  CHECK(SizeCapPolicy{CapMode::sparse_initial, 5, VertexSet(6)}.cap(s) == 5);
  CHECK(SizeCapPolicy{CapMode::sparse_initial, 2, VertexSet(6)}.cap(s) == 3);
}

TEST_CASE("find_sparse examples") {
  Graph hidden(10);
  for (Vertex u = 0; u < 7; ++u)
    for (Vertex v = u + 1; v < 7; ++v) hidden.add_edge(u, v);
  for (Vertex x : {0u, 1u, 2u}) hidden.add_edge(8, x);

  {
    QueryOracle o(hidden);
    KnownGraph g = hidden;
    auto s = find_sparse(o, g, VertexSet(10), {CapMode::paper, 0, VertexSet(10)}, all_of(10));
    CHECK(s.empty());
    CHECK(o.query_count() == 0);
  }
  {
    QueryOracle o(hidden);
    KnownGraph g = hidden;
    std::vector<Vertex> seven{7};
    auto s = find_sparse(o, g, VertexSet(10, seven), {CapMode::paper, 0, VertexSet(10)}, all_of(10));
    CHECK(s.to_vector() == std::vector<Vertex>{7, 9});
    CHECK(o.query_count() == 9);
  }
  {
    // a=0, b=1, c=2: N({a,b}) = {c}; the rest is a dense block.
    Graph h(9);
    h.add_edge(0, 1);
    h.add_edge(0, 2);
    h.add_edge(1, 2);
    for (Vertex v = 3; v < 6; ++v) h.add_edge(2, v);
    for (Vertex u = 3; u < 9; ++u)
      for (Vertex v = u + 1; v < 9; ++v) h.add_edge(u, v);
    QueryOracle o(h);
    KnownGraph g = h;
    FindSparseStats stats;
    auto s = find_sparse(o, g, VertexSet(9), {CapMode::sparse_initial, 2, VertexSet(9)}, all_of(9), &stats);
    CHECK(s.to_vector() == std::vector<Vertex>{0, 1});
    CHECK(stats.added.size() == 1);
    CHECK(o.query_count() == 8 + 7);
    QueryOracle o2(h);
    KnownGraph g2 = h;
    CHECK(find_sparse(o2, g2, VertexSet(9), {CapMode::sparse_initial, 1, VertexSet(9)}, all_of(9)).empty());
  }
}

TEST_CASE("first sparse set agrees with exhaustive search") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 4 + trial % 11;
    auto g = random_graph(n, 0.1 + 0.05 * (trial % 8), rng);
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v)
      if (std::bernoulli_distribution(0.2)(rng)) s.insert(v);
    const std::size_t cap = 1 + trial % 5;
    CHECK(first_sparse_set(g, s, all_of(n), cap) == brute_first(g, s, cap));
  }
}

TEST_CASE("find_sparse leaves no qualifying set behind") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + trial % 10;
    auto hidden = random_graph(n, 0.15 + 0.04 * (trial % 10), rng);
    QueryOracle o(hidden);
    KnownGraph g(n);
    for (const auto& e : hidden.edges())
      if (std::bernoulli_distribution(0.5)(rng)) g.add_edge(e.u, e.v);
    VertexSet s0(n);
    s0.insert(static_cast<Vertex>(trial % n));
    SizeCapPolicy policy{trial % 2 ? CapMode::paper : CapMode::sparse_initial, 2, VertexSet(n)};
    FindSparseStats stats;
    auto s = find_sparse(o, g, s0, policy, all_of(n), &stats);
    CHECK_FALSE(brute_first(g, s, policy.cap(s)).has_value());
    for (const auto& e : g.edges()) CHECK(hidden.has_edge(e.u, e.v));
    for (Vertex v : s.to_vector()) {
      if (s0.contains(v)) continue;
      for (Vertex x = 0; x < n; ++x)
        if (x != v) CHECK(o.is_queried(v, x));
    }
    // Node counts stay within s^3 C(n, s) for the returned size s.
    const std::size_t sz = s.size();
    if (policy.mode == CapMode::paper && sz > 0 && 2 * sz <= n) {
      double binom = 1;
      for (std::size_t i = 0; i < sz; ++i) binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
      CHECK(static_cast<double>(stats.evaluations) <= static_cast<double>(sz * sz * sz) * binom);
    }
  }
}

TEST_CASE("budget exhaustion") {
  Graph circulant(40);
  for (Vertex v = 0; v < 40; ++v) {
    circulant.add_edge(v, (v + 1) % 40);
    circulant.add_edge(v, (v + 2) % 40);
  }
  CHECK_FALSE(first_sparse_set(circulant, VertexSet(40), all_of(40), 2).has_value());
  std::uint64_t evals = 0;
  CHECK_THROWS_AS(first_sparse_set(circulant, VertexSet(40), all_of(40), 2, &evals, 5), BudgetExceeded);
}

TEST_CASE("maximum non-expanding subsets") {
  Graph star(5);
  for (Vertex v = 1; v < 4; ++v) star.add_edge(0, v);
  std::vector<Vertex> v0{0};
  CHECK(max_nonexpanding_subset(star, v0).empty());
  Graph k22(4);
  k22.add_edge(0, 2);
  k22.add_edge(0, 3);
  k22.add_edge(1, 2);
  k22.add_edge(1, 3);
  std::vector<Vertex> uv{0, 1};
  CHECK(max_nonexpanding_subset(k22, uv) == std::vector<Vertex>{0, 1});
  Graph leaf(3);
  leaf.add_edge(0, 1);
  CHECK(max_nonexpanding_subset(leaf, v0) == std::vector<Vertex>{0});

  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 5 + trial % 12;
    auto g = random_graph(n, 0.1 + 0.03 * (trial % 10), rng);
    std::vector<Vertex> cand;
    for (Vertex v = 0; v < n; ++v)
      if (std::bernoulli_distribution(0.5)(rng)) cand.push_back(v);
    CHECK(max_nonexpanding_subset(g, cand) == brute_max_nonexpanding(g, cand));
  }
  std::vector<Vertex> many;
  for (Vertex v = 0; v < 30; ++v) many.push_back(v);
  CHECK_THROWS_AS(max_nonexpanding_subset(Graph(30), many, 26), BudgetExceeded);
}

TEST_CASE("hall matchings") {
  Graph g(6);
  for (Vertex x : {3u, 4u, 5u}) g.add_edge(0, x);
  std::vector<Vertex> left{0};
  std::vector<Vertex> abc{3, 4, 5};
  auto m = hall_matching(left, VertexSet(6, abc), g);
  CHECK(m == std::vector<std::pair<Vertex, Vertex>>{{0, 3}});

  Graph kb(4);
  for (Vertex u : {0u, 1u})
    for (Vertex v : {2u, 3u}) kb.add_edge(u, v);
  std::vector<Vertex> uv{0, 1}, ab{2, 3};
  CHECK(hall_matching(uv, VertexSet(4, ab), kb) == std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {1, 3}});

  Graph aug(4);
  aug.add_edge(0, 2);
  aug.add_edge(1, 2);
  aug.add_edge(1, 3);
  std::vector<Vertex> vu{1, 0};  // v scanned first takes a, then u forces the augmentation
  auto am = hall_matching(vu, VertexSet(4, ab), aug);
  std::sort(am.begin(), am.end());
  CHECK(am == std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {1, 3}});
}

TEST_CASE("cover examples") {
  // v = 0 adjacent to a, b, c = 1, 2, 3.
  Graph g(6);
  for (Vertex x : {1u, 2u, 3u}) g.add_edge(0, x);
  g.add_edge(4, 5);
  std::vector<Vertex> v0{0};
  auto out = cover_and_adjust(g, VertexSet(6, v0), FullPathPacking::trivial(6));
  REQUIRE(out.fpp);
  bool found = false;
  for (const auto& p : out.fpp->paths()) found |= p == Path{1, 0, 2} || p == Path{2, 0, 1};
  CHECK(found);

  // u = 0, v = 1 with N = {a, b} = {2, 3} and two more vertices.
  Graph trap(6);
  for (Vertex u : {0u, 1u})
    for (Vertex x : {2u, 3u}) trap.add_edge(u, x);
  for (Vertex x : {2u, 3u})
    for (Vertex y : {4u, 5u}) trap.add_edge(x, y);
  trap.add_edge(4, 5);
  std::vector<Vertex> uv{0, 1};
  auto fail = cover_and_adjust(trap, VertexSet(6, uv), FullPathPacking::trivial(6));
  REQUIRE(fail.failure);
  CHECK(fail.failure->q.to_vector() == uv);
  CHECK(fail.failure->neighborhood.to_vector() == std::vector<Vertex>{2, 3});
  CHECK_FALSE(brute_force_ham(trap));

  auto same = cover_and_adjust(trap, VertexSet(6), FullPathPacking::trivial(6));
  REQUIRE(same.fpp);
  CHECK(same.fpp->size() == 6);
}

TEST_CASE("gadget construction") {
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(4, 5);
  std::vector<Vertex> q{0}, nb{1, 2};
  auto fc = build_cover_gadget(g, VertexSet(6, q), VertexSet(6, nb));
  CHECK(fc.labels == std::vector<Vertex>{0, 1, 2, 6});
  CHECK(fc.local.edge_count() == 2 + 3);
  std::vector<Vertex> wrong{1};
  CHECK_THROWS(build_cover_gadget(g, VertexSet(6, q), VertexSet(6, wrong)));
}

TEST_CASE("cover fuzz") {
  std::mt19937 rng(4242);
  int packed = 0, failures = 0, escalated = 0, growth_over = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 5 + trial % 6;
    auto g = random_graph(n, 0.2 + 0.05 * (trial % 10), rng);
    // packing from a random linear forest of g
    std::vector<Edge> forest;
    std::vector<std::uint8_t> deg(n, 0);
    std::vector<Vertex> comp(n);
    for (Vertex v = 0; v < n; ++v) comp[v] = v;
    auto find = [&](Vertex v) {
      while (comp[v] != v) v = comp[v];
      return v;
    };
    auto edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges) {
      if (deg[e.u] >= 2 || deg[e.v] >= 2 || find(e.u) == find(e.v)) continue;
      if (!std::bernoulli_distribution(0.6)(rng)) continue;
      ++deg[e.u];
      ++deg[e.v];
      comp[find(e.u)] = find(e.v);
      forest.push_back(e);
    }
    auto fpp = packing_from_edges(n, forest);
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v)
      if (std::bernoulli_distribution(0.25)(rng)) s.insert(v);
    try {
      auto out = cover_and_adjust(g, s, fpp);
      if (out.failure) {
        ++failures;
        Graph fc(n + 1);
        for (auto [a, b] : out.failure->fc_edges) fc.add_edge(a, b);
        CHECK_FALSE(inclusion_exclusion_ham(fc).cycle);
        CHECK(out.failure->neighborhood.size() < 2 * out.failure->q.size());
        CHECK_FALSE(brute_force_ham(g));
        continue;
      }
      ++packed;
      REQUIRE(out.fpp);
      CHECK(out.fpp->edges_within(g));
      auto interior = out.fpp->interior_mask();
      for (Vertex v : s.to_vector()) CHECK(interior[v]);
      if (out.growth > 2 * static_cast<long>(s.size())) ++growth_over;
    } catch (const BudgetExceeded&) {
      ++escalated;
    } catch (const InvariantViolation&) {
      ++escalated;
    }
  }
  MESSAGE("packed " << packed << ", failures " << failures << ", escalated " << escalated
                    << ", growth over 2|S| " << growth_over);
  CHECK(packed > 500);
  CHECK(failures > 20);
  CHECK(growth_over == 0);
}
