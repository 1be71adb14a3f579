#include "hamcert/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "hamcert/errors.hpp"
#include "hamcert/posa.hpp"
#include "hamcert/pseudorandom.hpp"
#include "hamcert/random_models.hpp"

namespace hamcert {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::dense: return "dense";
    case Regime::middle: return "middle";
    case Regime::sparse: return "sparse";
    case Regime::exact: return "exact";
  }
  return "?";
}

Regime select_regime(double p_hat, std::size_t n, const RegimeThresholds& t) {
  const double ln = std::log(static_cast<double>(n));
  const double d = p_hat * static_cast<double>(n);
  if (d >= t.dense_factor * ln) return Regime::dense;
  if (d >= t.middle_factor * std::log(std::max(ln, 1.0))) return Regime::middle;
  return Regime::sparse;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t since(Clock::time_point t0) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
}

VertexSet full_set(std::size_t n) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v) s.insert(v);
  return s;
}

// Decides a fully revealed graph. Fills cycle or certificate.
void decide_known(const Graph& g, const SolveConfig& cfg, Outcome& out) {
  const std::size_t n = g.size();
  if (n <= cfg.exact_bound) {
    // certificates are sound, so a structural one spares the whole-graph count
    auto cert = find_certificate(g, cfg);
    if (cert) {
      out.certificate = std::move(cert);
      return;
    }
    auto res = inclusion_exclusion_ham(g, cfg.exact_bound);
    if (res.cycle) {
      out.cycle = std::move(res.cycle);
      return;
    }
    cert.emplace();
    cert->kind = CertificateKind::exhaustive;
    out.certificate = std::move(cert);
    return;
  }
  auto cert = find_certificate(g, cfg);
  if (!cert)
    throw BudgetExceeded("graph on " + std::to_string(n) +
                         " vertices exceeds the exact-solver bound and no certificate was found");
  out.certificate = std::move(cert);
}

class Solver {
 public:
  Solver(QueryOracle& oracle, const SolveConfig& cfg)
      : oracle_(oracle), cfg_(cfg), n_(oracle.size()), g_(n_), revealed_(n_),
        start_(Clock::now()) {
    if (n_ == 0) throw InputError("graph has no vertices");
  }

  void query_mask(std::span<const Edge> f0) {
    for (const auto& e : f0)
      if (oracle_.query(e.u, e.v)) g_.add_edge(e.u, e.v);
  }

  void reveal(const VertexSet& s) {
    s.for_each([&](Vertex v) {
      if (revealed_.insert(v)) oracle_.query_incident(v, g_);
    });
  }

  // FindSparse with the queried vertices marked revealed; time goes to T_B.
  VertexSet sparse(VertexSet s, const SizeCapPolicy& policy, const VertexSet& domain) {
    const auto t0 = Clock::now();
    FindSparseStats st;
    st.evaluations = sparse_evaluations_;
    auto result = find_sparse(oracle_, g_, std::move(s), policy, domain, &st, cfg_.sparse_budget);
    sparse_evaluations_ = st.evaluations;
    for (const auto& q : st.added)
      for (auto v : q) revealed_.insert(v);
    t_b_ += since(t0);
    return result;
  }

  // Returns false when a certificate was emitted.
  bool cover(const VertexSet& s, FullPathPacking& p) {
    const auto t0 = Clock::now();
    CoverLimits limits{cfg_.component_cap, cfg_.exact_bound};
    auto res = cover_and_adjust(g_, s, p, limits);
    const auto dt = since(t0);
    if (static_cast<double>(res.largest_component) >= std::log(static_cast<double>(n_)) / 10)
      t_b_ += dt;
    if (res.failure) {
      Certificate c;
      c.kind = CertificateKind::cover_failure;
      c.cover = std::move(res.failure);
      out_.certificate = std::move(c);
      return false;
    }
    out_.trace.y_trace.push_back(res.growth);
    if (res.growth > 2 * static_cast<long>(s.size())) ++out_.stats.observation3_violations;
    p = std::move(*res.fpp);
    return true;
  }

  void check_forest(const BoosterCatalog& cat, const RotationForest& f, const VertexSet& s) {
    const auto nb = end_neighbourhood_size(g_, cat.joining_edges(), f, cat.restricted());
    if (nb >= 2 * f.size()) ++out_.stats.lemma1_violations;
    for (const auto& r : f.records())
      if (s.contains(r.endpoint)) {
        ++out_.stats.observation1_violations;
        break;
      }
  }

  // The main loop. Returns when a verdict is set or the loop exits.
  void loop(VertexSet s, FullPathPacking p, const SizeCapPolicy& policy) {
    auto& st = out_.stats;
    out_.trace.s_history.push_back(s);
    st.s_sizes.push_back(s.size());
    if (n_ < 3) return fallback("fewer than three vertices");

    std::unique_ptr<BoosterCatalog> cat;
    std::vector<Vertex> ends;
    std::vector<bool> checked;
    bool scanned = false;
    std::size_t qu = 0, qw = 0;
    std::vector<Vertex> cur_end_u;
    auto drop = [&] {
      if (cat) st.rpr_calls += cat->rpr_calls();
      cat.reset();
    };
    auto forest = [&](std::size_t idx) -> const RotationForest& {
      const auto& f = cat->forest_for(ends[idx]);
      if (!checked[idx]) {
        checked[idx] = true;
        check_forest(*cat, f, s);
      }
      return f;
    };

    while (4 * s.size() < n_ && 100 * st.count < n_ * n_) {
      if (!cat) {
        VertexSet restricted = s;
        restricted.insert_all(neighborhood(g_, s));
        cat = std::make_unique<BoosterCatalog>(g_, p, std::move(restricted));
        check_forest(*cat, cat->first_level(), s);
        ends = cat->end();
        std::sort(ends.begin(), ends.end());
        checked.assign(ends.size(), false);
        scanned = false;
        qu = qw = 0;
        cur_end_u.clear();
      }

      std::optional<std::vector<Vertex>> small;
      std::optional<std::pair<Vertex, Vertex>> booster;
      if (4 * ends.size() < n_) {
        small = cat->end();
      } else if (!scanned) {
        for (std::size_t i = 0; i < ends.size() && !small && !booster; ++i) {
          const Vertex u = ends[i];
          const auto& f = forest(i);
          if (4 * f.size() < n_) {
            small = f.end();
            break;
          }
          Vertex best = kNoVertex;
          g_.for_each_neighbor(u, [&](Vertex w) {
            if (best == kNoVertex && f.reaches(w)) best = w;
          });
          if (best != kNoVertex) booster.emplace(u, best);
        }
        scanned = !small && !booster;
      }

      if (small) {
        VertexSet s1 = s;
        for (auto v : *small) s1.insert(v);
        reveal(s1);
        s = sparse(std::move(s1), policy, full_set(n_));
        drop();
        if (!cover(s, p)) return;
        out_.trace.s_history.push_back(s);
        st.s_sizes.push_back(s.size());
        ++st.t;
        continue;
      }

      if (!booster) {
        // count stays within floor(0.01 n^2) even where the guard is fractional
        if (st.count >= n_ * n_ / 100) break;
        std::optional<std::pair<Vertex, Vertex>> pair;
        while (!pair && qu < ends.size()) {
          if (cur_end_u.empty()) {
            cur_end_u = forest(qu).end();
            std::sort(cur_end_u.begin(), cur_end_u.end());
          }
          const Vertex u = ends[qu];
          for (; qw < cur_end_u.size(); ++qw) {
            const Vertex w = cur_end_u[qw];
            if (w != u && !oracle_.is_queried(u, w)) {
              pair.emplace(u, w);
              ++qw;
              break;
            }
          }
          if (!pair) {
            ++qu;
            qw = 0;
            cur_end_u.clear();
          }
        }
        if (!pair) {
          out_.trace.line16 = true;
          drop();
          return fallback("no unqueried booster left");
        }
        const bool hit = oracle_.query(pair->first, pair->second);
        ++st.count;
        out_.trace.x_trace.push_back(hit);
        if (!hit) continue;
        g_.add_edge(pair->first, pair->second);
        booster = pair;
      }

      auto [u, w] = *booster;
      auto next = apply_booster(cat->reconstruct(u, w), u, w);
      drop();
      ++st.joins;
      if (next.is_cycle()) {
        auto cycle = next.cycle();
        if (!verify_ham_cycle(g_, cycle))
          throw InvariantViolation("joined cycle is not a cycle of the revealed graph");
        out_.cycle = std::move(cycle);
        return;
      }
      p = std::move(next);
    }
    drop();
    fallback(4 * s.size() >= n_ ? "S reached a quarter of the vertices"
                                : "booster query budget exhausted");
  }

  // Line 22: read everything and decide exactly.
  void fallback(std::string reason) {
    if (out_.stats.fallback_used)
      throw BudgetExceeded("exact fallback already failed: " + out_.stats.fallback_reason);
    out_.stats.fallback_used = true;
    out_.stats.fallback_reason = std::move(reason);
    const auto t0 = Clock::now();
    reveal(full_set(n_));
    try {
      decide_known(g_, cfg_, out_);
    } catch (const BudgetExceeded& e) {
      t_b_ += since(t0);
      throw BudgetExceeded(std::string(e.what()) + " (exact fallback after: " +
                           out_.stats.fallback_reason + ")");
    }
    t_b_ += since(t0);
  }

  // Runs body; budget and assembly failures escalate to the exact solver.
  template <class F>
  void guarded(F&& body) {
    try {
      body();
    } catch (const BudgetExceeded& e) {
      out_.trace.budget_hit = true;
      fallback(std::string("budget: ") + e.what());
    } catch (const InvariantViolation& e) {
      if (out_.cycle || out_.certificate) throw;
      fallback(std::string("invariant: ") + e.what());
    }
  }

  Outcome finish() {
    out_.stats.queries = oracle_.query_count();
    out_.stats.scan_reads = oracle_.scan_reads();
    const auto total = since(start_);
    out_.stats.t_b_nanos = std::min(t_b_, total);
    out_.stats.t_a_nanos = total - out_.stats.t_b_nanos;
    return std::move(out_);
  }

  QueryOracle& oracle_;
  const SolveConfig& cfg_;
  std::size_t n_;
  KnownGraph g_;
  VertexSet revealed_;
  Outcome out_;
  std::uint64_t t_b_ = 0;
  std::uint64_t sparse_evaluations_ = 0;
  Clock::time_point start_;
};

SizeCapPolicy paper_policy() { return {}; }

SizeCapPolicy middle_policy(const VertexSet& s0) {
  SizeCapPolicy p;
  p.mode = CapMode::middle;
  p.s0 = s0;
  return p;
}

}  // namespace

Outcome cer_ham(QueryOracle& oracle, std::span<const Edge> f0, const VertexSet& s0,
                const FullPathPacking& p0, const SizeCapPolicy& policy, const SolveConfig& cfg) {
  Solver solver(oracle, cfg);
  solver.query_mask(f0);
  solver.reveal(s0);
  solver.guarded([&] { solver.loop(s0, p0, policy); });
  return solver.finish();
}

Outcome exact_route(QueryOracle& oracle, const SolveConfig& cfg) {
  Solver solver(oracle, cfg);
  solver.out_.stats.regime = Regime::exact;
  const auto t0 = Clock::now();
  solver.reveal(full_set(oracle.size()));
  decide_known(solver.g_, cfg, solver.out_);
  solver.t_b_ += since(t0);
  return solver.finish();
}

Outcome rcer_ham(QueryOracle& oracle, std::uint64_t seed, const SolveConfig& cfg) {
  Solver solver(oracle, cfg);
  const std::size_t n = oracle.size();
  solver.out_.stats.regime = Regime::dense;
  solver.query_mask(gen_half_mask(n, seed));
  solver.guarded([&] { solver.loop(VertexSet(n), FullPathPacking::trivial(n), paper_policy()); });
  return solver.finish();
}

Outcome dcer_ham(QueryOracle& oracle, const SolveConfig& cfg) {
  const std::size_t n = oracle.size();
  if (n < kMinHnSize) {
    if (n <= cfg.exact_bound) return exact_route(oracle, cfg);
    throw InputError("the deterministic solver needs at least " + std::to_string(kMinHnSize) +
                     " vertices or at most " + std::to_string(cfg.exact_bound));
  }
  Solver solver(oracle, cfg);
  auto& out = solver.out_;
  const auto hn = build_hn(n);
  const auto f0 = hn.graph.edges();
  solver.query_mask(f0);
  const Graph g1 = solver.g_;
  out.trace.p_hat = f0.empty() ? 0.0
                               : static_cast<double>(g1.edge_count()) / static_cast<double>(f0.size());
  const Regime regime = cfg.force_regime.value_or(select_regime(out.trace.p_hat, n, cfg.thresholds));
  out.stats.regime = regime;

  solver.guarded([&] {
    if (regime == Regime::dense || regime == Regime::exact) {
      solver.loop(VertexSet(n), FullPathPacking::trivial(n), paper_policy());
      return;
    }
    VertexSet s0(n);
    if (regime == Regime::middle) {
      const VertexSet k = six_core_complement(g1);
      out.trace.k_set = k;
      const double limit = static_cast<double>(n) / (10 * std::log2(static_cast<double>(n)));
      s0 = static_cast<double>(k.size()) < limit ? k : solver.sparse(k, paper_policy(), full_set(n));
    } else {
      const auto deg = oracle.scan_degrees();
      const auto it = std::min_element(deg.begin(), deg.end());
      if (*it <= 1) {
        const auto v = static_cast<Vertex>(it - deg.begin());
        VertexSet one(n);
        one.insert(v);
        solver.reveal(one);
        Certificate c;
        c.kind = CertificateKind::min_degree;
        c.vertex = v;
        c.neighbors = solver.g_.neighbors(v);
        out.certificate = std::move(c);
        return;
      }
      std::size_t degree_sum = 0;
      for (auto d : deg) degree_sum += d;
      const VertexSet k = six_core_complement(g1);
      const auto budget = sparse_initial_budget(n, degree_sum, k.size());
      out.trace.c = budget.c;
      out.trace.w = budget.w;
      out.trace.k_set = k;
      VertexSet domain(n);
      for (Vertex v = 0; v < n; ++v)
        if (!k.contains(v)) domain.insert(v);
      SizeCapPolicy initial;
      initial.mode = CapMode::sparse_initial;
      initial.w = out.trace.w;
      s0 = solver.sparse(VertexSet(n), initial, domain);
      s0.insert_all(k);
    }
    solver.reveal(s0);
    auto p0 = FullPathPacking::trivial(n);
    if (!solver.cover(s0, p0)) return;
    solver.loop(s0, std::move(p0), middle_policy(s0));
  });
  return solver.finish();
}

SparseInitialBudget sparse_initial_budget(std::size_t n, std::size_t degree_sum,
                                          std::size_t k_size) {
  const double nd = static_cast<double>(n);
  const double c = std::max(static_cast<double>(degree_sum) / nd, 400.0);
  // e^{-2c} n in log space; anything below one floors to zero
  const double w = static_cast<double>(k_size) <= 10 * nd / (c * c) ? std::exp(std::log(nd) - 2 * c)
                                                                    : nd / (c * c);
  return {c, static_cast<std::size_t>(std::floor(w))};
}

Outcome solve_auto(QueryOracle& oracle, std::uint64_t seed, const SolveConfig& cfg) {
  const std::size_t n = oracle.size();
  if (n <= cfg.exact_bound) return exact_route(oracle, cfg);
  if (n < kMinHnSize) return rcer_ham(oracle, seed, cfg);
  return dcer_ham(oracle, cfg);
}

}  // namespace hamcert
