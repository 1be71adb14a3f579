#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hamcert/errors.hpp"
#include "hamcert/exact_ham.hpp"
#include "hamcert/random_models.hpp"

using namespace hamcert;

namespace {

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph random_graph(std::size_t n, double p, std::mt19937& rng) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (std::bernoulli_distribution(p)(rng)) g.add_edge(u, v);
  return g;
}

// Hamilton paths from v to u by enumerating orders of the other vertices.
long long enumerate_paths(const Graph& g, Vertex v, Vertex u) {
  const std::size_t n = g.size();
  if (n == 2) return g.has_edge(v, u) ? 1 : 0;
  std::vector<Vertex> mid;
  for (Vertex x = 0; x < n; ++x)
    if (x != v && x != u) mid.push_back(x);
  long long count = 0;
  do {
    Vertex prev = v;
    bool ok = true;
    for (Vertex x : mid) {
      if (!g.has_edge(prev, x)) {
        ok = false;
        break;
      }
      prev = x;
    }
    count += ok && g.has_edge(prev, u);
  } while (std::next_permutation(mid.begin(), mid.end()));
  return count;
}

void check_cycle_result(const Graph& g, const ExactResult& r) {
  if (r.cycle) CHECK(verify_ham_cycle(g, *r.cycle));
}

}  // namespace

TEST_CASE("path counts on small examples") {
  CHECK(count_ham_paths(complete(3), 0, 1) == 1);
  Graph p(4);
  p.add_edge(0, 1);
  p.add_edge(1, 2);
  p.add_edge(2, 3);
  CHECK(count_ham_paths(p, 0, 3) == 1);
  CHECK(count_ham_paths(complete(4), 0, 1) == 2);
  CHECK_THROWS_AS(count_ham_paths(complete(5), 0, 1, 4), BudgetExceeded);
}

TEST_CASE("path counts agree with enumeration") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 6;
    auto g = random_graph(n, 0.6, rng);
    const Vertex v = 0;
    const auto u = static_cast<Vertex>(1 + trial % (n - 1));
    CHECK(count_ham_paths(g, v, u) == enumerate_paths(g, v, u));
  }
}

TEST_CASE("adding an edge never lowers a path count") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 7;
    auto g = random_graph(n, 0.4, rng);
    const auto before = count_ham_paths(g, 0, 6);
    Vertex a = std::uniform_int_distribution<Vertex>(0, 6)(rng);
    Vertex b = std::uniform_int_distribution<Vertex>(0, 6)(rng);
    if (a == b) continue;
    g.add_edge(a, b);
    CHECK(count_ham_paths(g, 0, 6) >= before);
  }
}

TEST_CASE("decision examples") {
  auto k3 = inclusion_exclusion_ham(complete(3));
  REQUIRE(k3.cycle);
  CHECK(verify_ham_cycle(complete(3), *k3.cycle));
  Graph star(4);
  for (Vertex v = 1; v < 4; ++v) star.add_edge(0, v);
  CHECK_FALSE(inclusion_exclusion_ham(star).cycle);
  CHECK_FALSE(inclusion_exclusion_ham(petersen()).cycle);
  CHECK_FALSE(brute_force_ham(petersen()));

  auto c6 = cycle_graph(6);
  auto bf = brute_force_ham(c6);
  REQUIRE(bf);
  CHECK(verify_ham_cycle(c6, *bf));
  c6.remove_edge(0, 5);
  CHECK_FALSE(brute_force_ham(c6));
  CHECK_FALSE(inclusion_exclusion_ham(c6).cycle);

  auto g = gen_gnp({8, 0.8, 1});
  auto ie = inclusion_exclusion_ham(g);
  CHECK(ie.cycle.has_value() == brute_force_ham(g).has_value());
  check_cycle_result(g, ie);
  CHECK_THROWS_AS(brute_force_ham(complete(13)), BudgetExceeded);
}

TEST_CASE("every graph on at most five vertices") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      Graph g(n);
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) g.add_edge(pairs[i].first, pairs[i].second);
      auto ie = inclusion_exclusion_ham(g);
      CHECK(ie.cycle.has_value() == brute_force_ham(g).has_value());
      check_cycle_result(g, ie);
    }
  }
}

TEST_CASE("random graphs on six to nine vertices") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 6 + trial % 4;
    const double p = 0.25 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
    auto g = random_graph(n, p, rng);
    auto ie = inclusion_exclusion_ham(g);
    CHECK(ie.cycle.has_value() == brute_force_ham(g).has_value());
    check_cycle_result(g, ie);
  }
}
