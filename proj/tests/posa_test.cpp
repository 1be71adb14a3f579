#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "hamcert/errors.hpp"
#include "hamcert/posa.hpp"

using namespace hamcert;

namespace {

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

// Rotation search that copies every path explicitly.
std::map<Vertex, Path> reference_rpr(const Graph& g, const JoinEdges& join, Path path, Vertex fixed,
                                     const VertexSet& s) {
  if (path.front() != fixed) std::reverse(path.begin(), path.end());
  const std::size_t n = path.size();
  std::map<Vertex, Path> found;
  std::deque<Vertex> queue;
  found[path.back()] = path;
  queue.push_back(path.back());
  while (!queue.empty()) {
    const Vertex w = queue.front();
    queue.pop_front();
    const Path p = found[w];
    std::vector<Vertex> nbrs;
    for (Vertex z = 0; z < n; ++z)
      if (z != w && (g.has_edge(w, z) || join.contains(w, z)) && !s.contains(z)) nbrs.push_back(z);
    for (Vertex z : nbrs) {
      const auto j = static_cast<std::size_t>(std::find(p.begin(), p.end(), z) - p.begin());
      if (j + 2 >= n) continue;
      const Vertex y = p[j + 1];
      if (found.count(y)) continue;
      Path next(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      next.insert(next.end(), p.rbegin(), p.rend() - static_cast<std::ptrdiff_t>(j) - 1);
      found[y] = next;
      queue.push_back(y);
    }
  }
  return found;
}

bool is_ham_path(const Graph& g, const JoinEdges& join, const Path& p) {
  std::vector<bool> seen(g.size(), false);
  if (p.size() != g.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[p[i]]) return false;
    seen[p[i]] = true;
    if (i > 0 && !g.has_edge(p[i - 1], p[i]) && !join.contains(p[i - 1], p[i])) return false;
  }
  return true;
}

struct Instance {
  Graph known;
  FullPathPacking fpp;
};

// Random packing whose path edges are all present, plus random chords.
Instance random_instance(std::mt19937& rng, std::size_t n, double chord_p, std::size_t max_paths) {
  Path order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t pieces = std::uniform_int_distribution<std::size_t>(1, std::min(max_paths, n))(rng);
  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i < n; ++i) cuts.push_back(i);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(pieces - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Path> paths;
  std::size_t at = 0;
  for (std::size_t c : cuts) {
    paths.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at), order.begin() + static_cast<std::ptrdiff_t>(c));
    at = c;
  }
  paths.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at), order.end());
  Graph g(n);
  for (const auto& p : paths)
    for (std::size_t i = 1; i < p.size(); ++i) g.add_edge(p[i - 1], p[i]);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (std::bernoulli_distribution(chord_p)(rng)) g.add_edge(u, v);
  return {std::move(g), FullPathPacking::from_paths(n, std::move(paths))};
}

VertexSet random_subset(std::mt19937& rng, std::size_t n, double p, const std::vector<Vertex>& avoid) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v)
    if (std::bernoulli_distribution(p)(rng) && std::find(avoid.begin(), avoid.end(), v) == avoid.end())
      s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("rotation examples") {
  Graph g = path_graph(5);
  g.add_edge(4, 1);
  JoinEdges none(5);
  Path p{0, 1, 2, 3, 4};
  auto f = rpr(g, none, p, 0, VertexSet(5));
  CHECK(f.reaches(4));
  CHECK(f.reaches(2));
  CHECK(f.path_to(2) == Path{0, 1, 4, 3, 2});
  CHECK(f.records()[1].pivot == 1);
  CHECK(f.records()[1].inserted == Edge{1, 4});
  CHECK(f.records()[1].deleted == Edge{1, 2});

  std::vector<Vertex> one{1};
  auto r = rpr(g, none, p, 0, VertexSet(5, one));
  CHECK(r.end() == std::vector<Vertex>{4});

  auto bare = rpr(path_graph(5), none, p, 0, VertexSet(5));
  CHECK(bare.end() == std::vector<Vertex>{4});

  CHECK_THROWS_AS(rpr(path_graph(5), none, Path{0, 2, 1, 3, 4}, 0, VertexSet(5)), InvariantViolation);
  CHECK_THROWS_AS(rpr(path_graph(5), none, p, 2, VertexSet(5)), InvariantViolation);
}

TEST_CASE("joining edges") {
  JoinEdges j(4);
  j.add(0, 1);
  j.add(1, 2);
  CHECK(j.contains(1, 0));
  CHECK_FALSE(j.contains(0, 2));
  CHECK(j.size() == 2);
  CHECK_THROWS_AS(j.add(1, 3), InvariantViolation);
}

TEST_CASE("catalog examples") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  auto fpp = FullPathPacking::from_paths(5, {{0, 1, 2}, {3, 4}});
  BoosterCatalog cat(g, fpp, VertexSet(5));
  CHECK(cat.joining_edges().contains(2, 3));
  CHECK(cat.end() == std::vector<Vertex>{4});
  CHECK(cat.end_u(4) == std::vector<Vertex>{0});
  auto rec = cat.reconstruct(4, 0);
  CHECK(rec.size() == 2);
  auto joined = apply_booster(rec, 4, 0);
  CHECK(joined.size() == 1);

  Graph c5 = path_graph(5);  // C5 minus {4, 0}
  BoosterCatalog one(c5, FullPathPacking::from_paths(5, {{0, 1, 2, 3, 4}}), VertexSet(5));
  for (Vertex u : one.end()) {
    for (Vertex w : one.end_u(u)) {
      auto closed = apply_booster(one.reconstruct(u, w), u, w);
      CHECK(closed.is_cycle());
    }
  }

  Graph empty(4);
  BoosterCatalog trivial(empty, FullPathPacking::trivial(4), VertexSet(4));
  CHECK(trivial.end() == std::vector<Vertex>{3});
  CHECK(trivial.end_u(3) == std::vector<Vertex>{0});
  CHECK(trivial.reconstruct(3, 0).size() == 4);
}

TEST_CASE("rotation search matches the explicit reference") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 4 + trial % 20;
    auto inst = random_instance(rng, n, 0.15 + 0.01 * (trial % 20), 1);
    const Path p = inst.fpp.paths().front();
    const Vertex fixed = trial % 2 ? p.front() : p.back();
    const Vertex other = trial % 2 ? p.back() : p.front();
    auto s = random_subset(rng, n, 0.2, {fixed, other});
    JoinEdges none(n);
    auto f = rpr(inst.known, none, p, fixed, s);
    auto ref = reference_rpr(inst.known, none, p, fixed, s);
    std::vector<Vertex> got = f.end();
    std::vector<Vertex> want;
    for (const auto& [w, _] : ref) want.push_back(w);
    std::sort(got.begin(), got.end());
    CHECK(got == want);
    for (const auto& [w, path] : ref) {
      REQUIRE(f.reaches(w));
      CHECK(f.path_to(w) == path);
      for (std::uint32_t i = 0; i < path.size(); ++i) CHECK(f.position(w, path[i]) == i);
    }
  }
}

TEST_CASE("end-set expansion bound and disjointness from W") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = 4 + trial % 30;
    auto inst = random_instance(rng, n, 0.05 + 0.02 * (trial % 15), 1 + trial % 4);
    BoosterCatalog base(inst.known, inst.fpp, VertexSet(n));
    const Path ham = base.first_level().path_to(base.first_level().end().front());
    const Vertex a = ham.front();
    const Vertex b = ham.back();
    // W avoids the endpoints; S = W plus its neighbourhood in known + R.
    VertexSet w_set = random_subset(rng, n, 0.1, {a, b});
    VertexSet s = w_set;
    for (Vertex w : w_set.to_vector()) {
      inst.known.for_each_neighbor(w, [&](Vertex x) { s.insert(x); });
      for (Vertex x : base.joining_edges().partners(w)) s.insert(x);
    }
    if (s.contains(a) || s.contains(b)) continue;
    auto f = rpr(inst.known, base.joining_edges(), ham, a, s);
    CHECK(end_neighbourhood_size(inst.known, base.joining_edges(), f, s) < 2 * f.size());
    for (Vertex e : f.end()) {
      CHECK_FALSE(w_set.contains(e));
      CHECK(is_ham_path(inst.known, base.joining_edges(), f.path_to(e)));
      CHECK(f.path_to(e).front() == a);
      CHECK(f.path_to(e).back() == e);
    }
  }
}

TEST_CASE("every catalog pair is a booster") {
  std::mt19937 rng(777);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + trial % 14;
    auto inst = random_instance(rng, n, 0.08 + 0.02 * (trial % 10), 1 + trial % 5);
    BoosterCatalog cat(inst.known, inst.fpp, VertexSet(n));
    for (Vertex u : cat.end()) {
      for (Vertex w : cat.end_u(u)) {
        auto rec = cat.reconstruct(u, w);
        CHECK(rec.size() <= inst.fpp.size());
        CHECK(rec.edges_within(inst.known));
        auto next = apply_booster(rec, u, w);
        Graph plus = inst.known;
        plus.add_edge(u, w);
        CHECK(next.edges_within(plus));
        CHECK((next.is_cycle() || next.size() < inst.fpp.size()));
        if (next.is_cycle()) CHECK(verify_ham_cycle(plus, next.cycle()));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}
