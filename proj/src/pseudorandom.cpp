#include "hamcert/pseudorandom.hpp"

#include <cmath>

#include "hamcert/errors.hpp"

namespace hamcert {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

std::optional<std::uint64_t> smallest_prime_in(std::uint64_t lo, std::uint64_t hi) {
  for (std::uint64_t x = lo; x <= hi; ++x) {
    if (is_prime(x)) return x;
  }
  return std::nullopt;
}

Graph build_hqk(std::uint64_t q, std::uint64_t k) {
  if (!is_prime(q)) throw InputError("H_{q,k}: q must be prime");
  if (k < 1 || k > q) throw InputError("H_{q,k}: k must lie in [1, q]");
  Graph g(q * q);
  for (std::uint64_t line = 0; line < k; ++line) {
    const std::uint64_t da = line < q ? 1 : 0;
    const std::uint64_t db = line < q ? line : 1;
    for (std::uint64_t a = 0; a < q; ++a) {
      for (std::uint64_t b = 0; b < q; ++b) {
        const auto x = static_cast<Vertex>(a * q + b);
        for (std::uint64_t t = 1; t < q; ++t) {
          const auto y = static_cast<Vertex>(((a + t * da) % q) * q + (b + t * db) % q);
          g.add_edge(x, y);
        }
      }
    }
  }
  return g;
}

HnGraph build_hn(std::size_t n) {
  if (n < kMinHnSize) throw InputError("H_n needs n >= 256");
  // ceil(sqrt n) and floor(2 sqrt n) in exact integer arithmetic.
  auto lo = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (lo * lo < n) ++lo;
  while (lo > 0 && (lo - 1) * (lo - 1) >= n) --lo;
  auto hi = static_cast<std::uint64_t>(std::sqrt(4.0 * static_cast<double>(n)));
  while ((hi + 1) * (hi + 1) <= 4 * n) ++hi;
  while (hi * hi > 4 * n) --hi;

  const auto q = smallest_prime_in(lo, hi);
  if (!q) throw InputError("H_n: no prime in [sqrt n, 2 sqrt n]");
  // Smallest integer strictly greater than 0.1001 q.
  const std::uint64_t k = (1001 * *q) / 10000 + 1;

  const Graph full = build_hqk(*q, k);
  Graph h(n);
  for (Vertex u = 0; u < n; ++u) {
    full.for_each_neighbor(u, [&](Vertex w) {
      if (w < n && u < w) h.add_edge(u, w);
    });
  }

  HnRecipe recipe{n, *q, k, {}};
  const std::size_t low = (n + 9) / 10;  // degree < 0.1n
  const std::size_t hub = (n + 9) / 10;  // join targets are {0, ..., hub}
  std::vector<Vertex> low_degree;
  for (Vertex v = 0; v < n; ++v) {
    if (h.degree(v) < low) low_degree.push_back(v);
  }
  for (Vertex v : low_degree) {
    PatchedVertex patch{v, {}};
    for (Vertex target = 0; target <= hub && target < n; ++target) {
      if (target != v && h.add_edge(v, target)) patch.added.push_back(target);
    }
    recipe.patched.push_back(std::move(patch));
  }
  return {std::move(h), std::move(recipe)};
}

std::optional<SrgParams> check_strongly_regular(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  const std::size_t d = g.degree(0);
  for (Vertex v = 1; v < n; ++v) {
    if (g.degree(v) != d) return std::nullopt;
  }
  if (d == 0 || d == n - 1) return std::nullopt;

  std::optional<std::size_t> eta;
  std::optional<std::size_t> mu;
  for (Vertex x = 0; x < n; ++x) {
    const auto rx = g.row(x);
    for (Vertex y = x + 1; y < n; ++y) {
      const auto ry = g.row(y);
      std::size_t common = 0;
      for (std::size_t w = 0; w < rx.size(); ++w) {
        common += static_cast<std::size_t>(std::popcount(rx[w] & ry[w]));
      }
      auto& slot = g.has_edge(x, y) ? eta : mu;
      if (!slot) {
        slot = common;
      } else if (*slot != common) {
        return std::nullopt;
      }
    }
  }
  return SrgParams{n, d, *eta, *mu};
}

std::size_t edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  const auto bw = b.words();
  a.for_each([&](Vertex u) {
    const auto r = g.row(u);
    for (std::size_t w = 0; w < r.size(); ++w) {
      count += static_cast<std::size_t>(std::popcount(r[w] & bw[w]));
    }
  });
  return count;
}

}  // namespace hamcert
