#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>

#include "hamcert/certify.hpp"
#include "hamcert/errors.hpp"

namespace hamcert {

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::min_degree: return "min_degree";
    case CertificateKind::cover_failure: return "cover_failure";
    case CertificateKind::exhaustive: return "exhaustive";
  }
  return "?";
}

namespace {

VertexSet reachable(const Graph& g, Vertex start, std::optional<Vertex> removed) {
  VertexSet seen(g.size());
  std::deque<Vertex> queue{start};
  seen.insert(start);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    g.for_each_neighbor(v, [&](Vertex x) {
      if (x != removed && seen.insert(x)) queue.push_back(x);
    });
  }
  return seen;
}

// Smallest-id articulation point, by iterative lowpoint DFS from vertex 0.
std::optional<Vertex> articulation_point(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 3) return std::nullopt;
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<bool> cut(n, false);
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  std::vector<std::size_t> next(n, 0);
  std::uint32_t clock = 0;
  std::size_t root_children = 0;
  std::vector<Vertex> stack{0};
  disc[0] = low[0] = ++clock;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    if (next[v] < adj[v].size()) {
      const Vertex x = adj[v][next[v]++];
      if (disc[x] == 0) {
        parent[x] = v;
        disc[x] = low[x] = ++clock;
        if (v == 0) ++root_children;
        stack.push_back(x);
      } else if (x != parent[v]) {
        low[v] = std::min(low[v], disc[x]);
      }
      continue;
    }
    stack.pop_back();
    if (const Vertex p = parent[v]; p != kNoVertex) {
      low[p] = std::min(low[p], low[v]);
      if (p != 0 && low[v] >= disc[p]) cut[p] = true;
    }
  }
  if (root_children > 1) cut[0] = true;
  for (Vertex v = 0; v < n; ++v)
    if (cut[v]) return v;
  return std::nullopt;
}

Certificate cover_certificate(const Graph& g, const VertexSet& q, const VertexSet& nq) {
  Certificate c;
  c.kind = CertificateKind::cover_failure;
  CoverFailure f{q, nq, {}};
  auto fc = build_cover_gadget(g, q, nq);
  for (const auto& e : fc.local.edges()) f.fc_edges.emplace_back(fc.labels[e.u], fc.labels[e.v]);
  c.cover = std::move(f);
  return c;
}

// Subset DP over paths from vertex 0. Only a screen: a negative answer is
// confirmed by the counting solver before a certificate is issued.
bool dp_has_ham_cycle(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 3) return false;
  std::vector<std::uint32_t> adj(n, 0);
  for (Vertex v = 0; v < n; ++v) g.for_each_neighbor(v, [&](Vertex x) { adj[v] |= 1u << x; });
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    for (std::uint32_t e = ends[mask]; e; e &= e - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(e));
      for (std::uint32_t next = adj[v] & ~mask; next; next &= next - 1)
        ends[mask | (next & -next)] |= next & -next;
    }
  }
  return (ends[full] & adj[0]) != 0;
}

inline constexpr std::size_t kScreenBound = 20;

}  // namespace

std::optional<Certificate> find_certificate(const Graph& g, const SolveConfig& cfg) {
  const std::size_t n = g.size();
  if (n == 0) return std::nullopt;
  const auto md = min_degree(g);
  if (md.degree <= 1 || n < 3) {
    Certificate c;
    c.kind = CertificateKind::min_degree;
    c.vertex = md.vertex;
    c.neighbors = g.neighbors(md.vertex);
    return c;
  }

  // A component, or a component of G - x for a cut vertex x, leaves the dummy
  // of its gadget with degree at most one.
  VertexSet comp = reachable(g, 0, std::nullopt);
  if (comp.size() < n) return cover_certificate(g, comp, VertexSet(n));
  if (auto x = articulation_point(g)) {
    const Vertex start = *x == 0 ? 1 : 0;
    VertexSet q = reachable(g, start, *x);
    q.erase(*x);
    return cover_certificate(g, q, neighborhood(g, q));
  }

  std::optional<Certificate> found;
  const VertexSet all = [&] {
    VertexSet a(n);
    for (Vertex v = 0; v < n; ++v) a.insert(v);
    return a;
  }();
  for (std::size_t k = 1; k <= cfg.certificate_search_size && !found; ++k) {
    for_each_sparse_set(g, VertexSet(n), all, k, [&](const std::vector<Vertex>& qv) {
      VertexSet q(n, qv);
      VertexSet nq = neighborhood(g, q);
      if (q.size() + nq.size() >= n || q.size() + nq.size() + 1 > cfg.exact_bound) return false;
      auto fc = build_cover_gadget(g, q, nq);
      if (fc.local.size() <= kScreenBound && dp_has_ham_cycle(fc.local)) return false;
      if (inclusion_exclusion_ham(fc.local, cfg.exact_bound).cycle) return false;
      found = cover_certificate(g, q, nq);
      return true;
    }, nullptr, cfg.sparse_budget);
  }
  return found;
}

bool verify_certificate(const Graph& g, const Certificate& cert, std::size_t exact_bound) {
  const std::size_t n = g.size();
  switch (cert.kind) {
    case CertificateKind::min_degree: {
      if (cert.vertex >= n) return false;
      auto nb = g.neighbors(cert.vertex);
      auto claimed = cert.neighbors;
      std::sort(claimed.begin(), claimed.end());
      return nb.size() <= 1 && nb == claimed;
    }
    case CertificateKind::cover_failure: {
      if (!cert.cover) return false;
      const auto& f = *cert.cover;
      if (f.q.universe() != n || f.neighborhood.universe() != n || f.q.empty()) return false;
      if (!(neighborhood(g, f.q) == f.neighborhood)) return false;
      if (f.neighborhood.size() >= 2 * f.q.size()) return false;
      if (f.q.size() + f.neighborhood.size() >= n) return false;
      auto fc = build_cover_gadget(g, f.q, f.neighborhood);
      if (!f.fc_edges.empty()) {
        std::vector<Edge> rebuilt, claimed;
        for (const auto& e : fc.local.edges()) rebuilt.emplace_back(fc.labels[e.u], fc.labels[e.v]);
        for (auto [a, b] : f.fc_edges) claimed.emplace_back(a, b);
        std::sort(rebuilt.begin(), rebuilt.end());
        std::sort(claimed.begin(), claimed.end());
        if (rebuilt != claimed) return false;
      }
      return !inclusion_exclusion_ham(fc.local, exact_bound).cycle;
    }
    case CertificateKind::exhaustive:
      return !inclusion_exclusion_ham(g, exact_bound).cycle;
  }
  return false;
}

bool verify_outcome(const Graph& g, const Outcome& outcome, std::size_t exact_bound) {
  if (outcome.cycle) return !outcome.certificate && verify_ham_cycle(g, *outcome.cycle);
  return outcome.certificate && verify_certificate(g, *outcome.certificate, exact_bound);
}

namespace {

std::vector<std::size_t> deficiency_degrees(const Graph& g, std::span<const Edge> f0) {
  std::vector<std::size_t> deg(g.size(), 0);
  for (const auto& e : f0)
    if (!g.has_edge(e.u, e.v)) {
      ++deg[e.u];
      ++deg[e.v];
    }
  return deg;
}

}  // namespace

bool check_property_R(const Graph& g, std::span<const Edge> f0) {
  auto deg = deficiency_degrees(g, f0);
  std::sort(deg.begin(), deg.end(), std::greater<>());
  const double n = static_cast<double>(g.size());
  const double slack = std::pow(n, 1.75);
  double prefix = 0;
  for (std::size_t s = 1; s <= deg.size(); ++s) {
    prefix += static_cast<double>(deg[s - 1]);
    if (prefix > 0.11 * n * static_cast<double>(s) + slack) return false;
  }
  return true;
}

bool property_R_degree_proxy(const Graph& g, std::span<const Edge> f0) {
  auto deg = deficiency_degrees(g, f0);
  const double n = static_cast<double>(g.size());
  const auto heavy = std::count_if(deg.begin(), deg.end(),
                                   [&](std::size_t d) { return static_cast<double>(d) > 0.101 * n; });
  return static_cast<double>(heavy) <= std::pow(n, 2.0 / 3.0);
}

}  // namespace hamcert
