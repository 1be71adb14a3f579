#include "hamcert/sparse_cover.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <bit>
#include <functional>
#include <numeric>

#include "hamcert/errors.hpp"

namespace hamcert {

std::size_t SizeCapPolicy::cap(const VertexSet& s) const {
  switch (mode) {
    case CapMode::paper:
      return s.size();
    case CapMode::middle: {
      std::size_t extra = 0;
      s.for_each([&](Vertex v) { extra += s0.universe() == 0 || !s0.contains(v); });
      return extra;
    }
    case CapMode::sparse_initial:
      return std::max(w, s.size());
  }
  return 0;
}

namespace {

template <class F>
void for_each_common(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, F&& f) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t bits = a[w] & b[w];
    while (bits != 0) {
      f(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
}

std::size_t count_common(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

// Connected-set search for one size k. Candidates are linked when adjacent or
// when they share a free neighbour; a minimum-size qualifying set is always
// connected under that relation, so enumerating linked sets is exhaustive.
class SparseSearch {
 public:
  SparseSearch(const KnownGraph& g, const VertexSet& free, std::uint64_t* evaluations,
               std::uint64_t budget)
      : g_(g), free_(free), evaluations_(evaluations), budget_(budget),
        cnt_(g.size(), 0), in_q_(g.size(), 0), mark_(g.size(), 0) {
    dprime_.assign(g.size(), 0);
    free_.for_each([&](Vertex v) { dprime_[v] = count_common(g_.row(v), free_.words()); });
  }

  using Visitor = std::function<bool(const std::vector<Vertex>&)>;

  // Lexicographically smallest qualifying set of size k, or with a visitor,
  // every qualifying set until the visitor asks to stop.
  std::optional<std::vector<Vertex>> run(std::size_t k, const Visitor* visit = nullptr) {
    k_ = k;
    visit_ = visit;
    stop_ = false;
    std::vector<Vertex> cands;
    free_.for_each([&](Vertex v) {
      if (dprime_[v] + 2 <= 3 * k) cands.push_back(v);
    });
    if (cands.size() < k) return std::nullopt;
    is_cand_.assign(g_.size(), 0);
    for (auto v : cands) is_cand_[v] = 1;
    links_.assign(g_.size(), {});
    if (k >= 2) build_links(cands);

    best_.reset();
    for (auto root : cands) {
      root_ = root;
      std::vector<Vertex> ext;
      for (auto u : links_[root])
        if (u > root) ext.push_back(u);
      add(root);
      extend(ext);
      remove(root);
      if (best_ || stop_) return best_;
    }
    return std::nullopt;
  }

 private:
  void build_links(const std::vector<Vertex>& cands) {
    VertexSet seen(g_.size());
    for (auto v : cands) {
      std::vector<Vertex> out;
      auto note = [&](Vertex y) {
        if (y != v && is_cand_[y] && seen.insert(y)) out.push_back(y);
      };
      g_.for_each_neighbor(v, [&](Vertex x) {
        note(x);
        if (free_.contains(x)) for_each_common(g_.row(x), free_.words(), note);
      });
      for (auto y : out) seen.erase(y);
      std::sort(out.begin(), out.end());
      links_[v] = std::move(out);
    }
  }

  void add(Vertex w) {
    in_q_[w] = 1;
    sub_.push_back(w);
    if (cnt_[w] > 0) --nsize_;
    for_each_common(g_.row(w), free_.words(), [&](Vertex x) {
      if (cnt_[x]++ == 0 && !in_q_[x]) ++nsize_;
    });
    for (auto u : links_[w]) ++mark_[u];
  }

  void remove(Vertex w) {
    for (auto u : links_[w]) --mark_[u];
    for_each_common(g_.row(w), free_.words(), [&](Vertex x) {
      if (--cnt_[x] == 0 && !in_q_[x]) --nsize_;
    });
    if (cnt_[w] > 0) ++nsize_;
    sub_.pop_back();
    in_q_[w] = 0;
  }

  void extend(std::vector<Vertex> ext) {
    if (evaluations_ && ++*evaluations_ > budget_)
      throw BudgetExceeded("FindSparse enumeration budget exhausted");
    const std::size_t j = sub_.size();
    // each further vertex can drop |N(Q)| by at most one
    if (nsize_ + j >= 3 * k_ && j < k_) return;
    if (j == k_) {
      if (nsize_ < 2 * k_) {
        std::vector<Vertex> q = sub_;
        std::sort(q.begin(), q.end());
        if (visit_) {
          stop_ = (*visit_)(q);
        } else if (!best_ || q < *best_) {
          best_ = std::move(q);
        }
      }
      return;
    }
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (auto u : links_[w])
        if (u > root_ && !in_q_[u] && mark_[u] == 0) next.push_back(u);
      add(w);
      extend(std::move(next));
      remove(w);
      if (stop_) return;
    }
  }

  const KnownGraph& g_;
  const VertexSet& free_;
  std::uint64_t* evaluations_;
  std::uint64_t budget_;
  std::vector<std::size_t> dprime_;
  std::vector<std::uint32_t> cnt_;
  std::vector<std::uint8_t> in_q_;
  std::vector<std::uint32_t> mark_;
  std::vector<std::uint8_t> is_cand_;
  std::vector<std::vector<Vertex>> links_;
  std::vector<Vertex> sub_;
  std::size_t nsize_ = 0;
  std::size_t k_ = 0;
  Vertex root_ = 0;
  std::optional<std::vector<Vertex>> best_;
  const Visitor* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace

std::optional<std::vector<Vertex>> first_sparse_set(const KnownGraph& g_r, const VertexSet& s,
                                                    const VertexSet& domain, std::size_t cap,
                                                    std::uint64_t* evaluations,
                                                    std::uint64_t budget) {
  VertexSet free(g_r.size());
  domain.for_each([&](Vertex v) {
    if (!s.contains(v)) free.insert(v);
  });
  cap = std::min(cap, free.size());
  if (cap == 0) return std::nullopt;
  std::uint64_t local = 0;
  SparseSearch search(g_r, free, evaluations ? evaluations : &local, budget);
  for (std::size_t k = 1; k <= cap; ++k)
    if (auto q = search.run(k)) return q;
  return std::nullopt;
}

bool for_each_sparse_set(const KnownGraph& g, const VertexSet& s, const VertexSet& domain,
                         std::size_t k,
                         const std::function<bool(const std::vector<Vertex>&)>& visit,
                         std::uint64_t* evaluations, std::uint64_t budget) {
  VertexSet free(g.size());
  domain.for_each([&](Vertex v) {
    if (!s.contains(v)) free.insert(v);
  });
  if (k == 0 || k > free.size()) return false;
  std::uint64_t local = 0;
  SparseSearch search(g, free, evaluations ? evaluations : &local, budget);
  bool stopped = false;
  SparseSearch::Visitor wrapped = [&](const std::vector<Vertex>& q) {
    return stopped = visit(q);
  };
  search.run(k, &wrapped);
  return stopped;
}

VertexSet find_sparse(QueryOracle& oracle, KnownGraph& g_r, VertexSet s,
                      const SizeCapPolicy& policy, const VertexSet& domain,
                      FindSparseStats* stats, std::uint64_t budget) {
  std::uint64_t evaluations = stats ? stats->evaluations : 0;
  while (true) {
    auto q = first_sparse_set(g_r, s, domain, policy.cap(s), &evaluations, budget);
    if (!q) break;
    for (auto v : *q) s.insert(v);
    for (auto v : *q) oracle.query_incident(v, g_r);
    if (stats) {
      ++stats->additions;
      stats->added.push_back(*q);
    }
  }
  if (stats) stats->evaluations = evaluations;
  return s;
}

std::vector<Vertex> max_nonexpanding_subset(const Graph& gs, std::span<const Vertex> candidates,
                                            std::size_t cap) {
  std::vector<Vertex> cand(candidates.begin(), candidates.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const std::size_t words = gs.words_per_row();

  for (std::size_t k = cand.size(); k >= 1; --k) {
    std::vector<Vertex> f;
    for (auto v : cand)
      if (gs.degree(v) + 2 <= 3 * k) f.push_back(v);
    if (f.size() < k) continue;
    if (f.size() > cap)
      throw BudgetExceeded("non-expanding subset search over " + std::to_string(f.size()) +
                           " vertices exceeds the component cap");

    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::uint64_t> acc(words), qmask(words);
    while (true) {
      std::fill(acc.begin(), acc.end(), 0);
      std::fill(qmask.begin(), qmask.end(), 0);
      for (auto i : idx) {
        const Vertex v = f[i];
        auto row = gs.row(v);
        for (std::size_t w = 0; w < words; ++w) acc[w] |= row[w];
        qmask[v >> 6] |= std::uint64_t{1} << (v & 63);
      }
      std::size_t nb = 0;
      for (std::size_t w = 0; w < words; ++w) nb += std::popcount(acc[w] & ~qmask[w]);
      if (nb < 2 * k) {
        std::vector<Vertex> q;
        for (auto i : idx) q.push_back(f[i]);
        return q;
      }
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == f.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};
}

std::vector<std::pair<Vertex, Vertex>> hall_matching(std::span<const Vertex> left,
                                                     const VertexSet& right, const Graph& g) {
  std::vector<Vertex> lv(left.begin(), left.end());
  std::sort(lv.begin(), lv.end());
  const std::size_t n = g.size();
  std::vector<Vertex> match_right(n, kNoVertex);
  std::vector<std::vector<Vertex>> adj(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i)
    for_each_common(g.row(lv[i]), right.words(), [&](Vertex x) { adj[i].push_back(x); });

  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t round = 0;
  std::vector<std::size_t> match_left(lv.size(), SIZE_MAX);
  // left indices stored in match_right as Vertex
  auto try_kuhn = [&](auto&& self, std::size_t i) -> bool {
    // a free partner first, so augmenting never displaces a smaller choice needlessly
    for (auto x : adj[i]) {
      if (stamp[x] != round && match_right[x] == kNoVertex) {
        stamp[x] = round;
        match_right[x] = static_cast<Vertex>(i);
        match_left[i] = x;
        return true;
      }
    }
    for (auto x : adj[i]) {
      if (stamp[x] == round) continue;
      stamp[x] = round;
      if (match_right[x] == kNoVertex || self(self, match_right[x])) {
        match_right[x] = static_cast<Vertex>(i);
        match_left[i] = x;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < lv.size(); ++i) {
    ++round;
    try_kuhn(try_kuhn, i);
  }
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < lv.size(); ++i)
    if (match_left[i] != SIZE_MAX) out.emplace_back(lv[i], static_cast<Vertex>(match_left[i]));
  return out;
}

CoverGadget build_cover_gadget(const Graph& host, const VertexSet& q, const VertexSet& nbhd) {
  CoverGadget fc;
  const std::size_t n = host.size();
  std::vector<std::uint32_t> local(n, UINT32_MAX);
  q.for_each([&](Vertex v) { local[v] = static_cast<std::uint32_t>(fc.labels.size()); fc.labels.push_back(v); });
  nbhd.for_each([&](Vertex v) { local[v] = static_cast<std::uint32_t>(fc.labels.size()); fc.labels.push_back(v); });
  const auto dummy = static_cast<Vertex>(fc.labels.size());
  fc.labels.push_back(static_cast<Vertex>(n));
  fc.local = Graph(fc.labels.size());
  q.for_each([&](Vertex v) {
    host.for_each_neighbor(v, [&](Vertex x) {
      if (local[x] == UINT32_MAX)
        throw InvariantViolation("cover gadget: neighbour of Q outside the given neighbourhood");
      fc.local.add_edge(local[v], local[x]);
    });
  });
  for (Vertex a = static_cast<Vertex>(q.size()); a <= dummy; ++a)
    for (Vertex b = a + 1; b <= dummy; ++b) fc.local.add_edge(a, b);
  return fc;
}

FullPathPacking packing_from_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::array<Vertex, 2>> adj(n, {kNoVertex, kNoVertex});
  for (const auto& e : edges) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      auto& slot = adj[a][0] == kNoVertex ? adj[a][0] : adj[a][1];
      if (slot != kNoVertex) throw InvariantViolation("edge set has a vertex of degree 3");
      slot = b;
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<Path> paths;
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v] || adj[v][1] != kNoVertex) continue;
    Path p;
    Vertex prev = kNoVertex, cur = v;
    while (cur != kNoVertex) {
      seen[cur] = true;
      p.push_back(cur);
      const Vertex next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
    }
    paths.push_back(std::move(p));
  }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v]) throw InvariantViolation("edge set contains a cycle");
  return FullPathPacking::from_paths(n, std::move(paths));
}

namespace {

struct UnionFind {
  std::vector<Vertex> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Vertex find(Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

struct ComponentPlan {
  std::vector<Vertex> s_vertices;
  VertexSet q;
  VertexSet nq;
  std::vector<Edge> h_edges;  // cycle edges incident to Q, host labels
};

}  // namespace

CoverOutcome cover_and_adjust(const KnownGraph& g, const VertexSet& s, const FullPathPacking& fpp,
                              const CoverLimits& limits) {
  const std::size_t n = g.size();
  if (fpp.is_cycle()) throw InvariantViolation("cover_and_adjust on a closed packing");
  CoverOutcome out;
  if (s.empty()) {
    out.fpp = fpp;
    return out;
  }

  UnionFind uf(n);
  s.for_each([&](Vertex v) { g.for_each_neighbor(v, [&](Vertex x) { uf.unite(v, x); }); });
  std::map<Vertex, std::vector<Vertex>> groups;
  s.for_each([&](Vertex v) { groups[uf.find(v)].push_back(v); });
  std::vector<ComponentPlan> plans;
  for (auto& [root, members] : groups) {
    ComponentPlan plan{std::move(members), VertexSet(n), VertexSet(n), {}};
    out.largest_component = std::max(out.largest_component, plan.s_vertices.size());
    plans.push_back(std::move(plan));
  }
  std::sort(plans.begin(), plans.end(),
            [](const auto& a, const auto& b) { return a.s_vertices.front() < b.s_vertices.front(); });

  // Gadgets first, so a failure anywhere wins over assembly problems elsewhere.
  for (auto& plan : plans) {
    auto qv = max_nonexpanding_subset(g, plan.s_vertices, limits.component_cap);
    if (qv.empty()) continue;
    plan.q = VertexSet(n, qv);
    plan.nq = neighborhood(g, plan.q);
    if (plan.q.size() + plan.nq.size() + 1 > limits.exact_bound)
      throw BudgetExceeded("cover gadget exceeds the exact-solver bound");
    auto fc = build_cover_gadget(g, plan.q, plan.nq);
    auto res = inclusion_exclusion_ham(fc.local, limits.exact_bound);
    if (!res.cycle) {
      // With Q and N(Q) spanning the graph the gadget argument does not apply.
      if (plan.q.size() + plan.nq.size() == n)
        throw BudgetExceeded("cover gadget spans the whole graph");
      CoverFailure f{plan.q, plan.nq, {}};
      for (const auto& e : fc.local.edges()) f.fc_edges.emplace_back(fc.labels[e.u], fc.labels[e.v]);
      out.failure = std::move(f);
      return out;
    }
    const auto& order = res.cycle->order;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Vertex a = fc.labels[order[i]], b = fc.labels[order[(i + 1) % order.size()]];
      if ((a < n && plan.q.contains(a)) || (b < n && plan.q.contains(b))) plan.h_edges.emplace_back(a, b);
    }
  }

  std::vector<Edge> cover_edges;
  for (auto& plan : plans) {
    cover_edges.insert(cover_edges.end(), plan.h_edges.begin(), plan.h_edges.end());
    std::vector<Vertex> r;
    for (auto v : plan.s_vertices)
      if (!plan.q.contains(v)) r.push_back(v);
    if (r.empty()) continue;
    VertexSet rset(n, r);
    VertexSet rp = neighborhood(g, rset);
    plan.q.for_each([&](Vertex v) { rp.erase(v); });
    plan.nq.for_each([&](Vertex v) { rp.erase(v); });
    auto m1 = hall_matching(r, rp, g);
    if (m1.size() != r.size()) throw InvariantViolation("first matching does not saturate R");
    for (auto& [a, b] : m1) rp.erase(b);
    auto m2 = hall_matching(r, rp, g);
    if (m2.size() != r.size()) throw InvariantViolation("second matching does not saturate R");
    for (auto& [a, b] : m1) cover_edges.emplace_back(a, b);
    for (auto& [a, b] : m2) cover_edges.emplace_back(a, b);
  }

  std::vector<std::uint8_t> deg(n, 0);
  UnionFind forest(n);
  for (const auto& e : cover_edges) {
    if (++deg[e.u] > 2 || ++deg[e.v] > 2 || !forest.unite(e.u, e.v))
      throw InvariantViolation("covering paths of different components collide");
  }
  std::vector<bool> covered(n, false);
  for (const auto& e : cover_edges) covered[e.u] = covered[e.v] = true;

  // Keep every packing edge that still fits: first those away from the
  // covering paths, then the rest where degree and acyclicity allow.
  std::vector<Edge> result = cover_edges;
  std::vector<Edge> touching;
  for (const auto& p : fpp.paths())
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      Edge e(p[i], p[i + 1]);
      if (covered[e.u] || covered[e.v]) {
        touching.push_back(e);
        continue;
      }
      ++deg[e.u];
      ++deg[e.v];
      forest.unite(e.u, e.v);
      result.push_back(e);
    }
  for (const auto& e : touching) {
    if (deg[e.u] >= 2 || deg[e.v] >= 2 || forest.find(e.u) == forest.find(e.v)) continue;
    ++deg[e.u];
    ++deg[e.v];
    forest.unite(e.u, e.v);
    result.push_back(e);
  }

  FullPathPacking adjusted = packing_from_edges(n, result);
  auto interior = adjusted.interior_mask();
  s.for_each([&](Vertex v) {
    if (!interior[v]) throw InvariantViolation("cover_and_adjust left a vertex of S uncovered");
  });
  out.growth = static_cast<long>(adjusted.size()) - static_cast<long>(fpp.size());
  out.fpp = std::move(adjusted);
  return out;
}

}  // namespace hamcert
