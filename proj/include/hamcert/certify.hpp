#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamcert/exact_ham.hpp"
#include "hamcert/graph.hpp"
#include "hamcert/oracle.hpp"
#include "hamcert/sparse_cover.hpp"

namespace hamcert {

enum class Regime { dense, middle, sparse, exact };
std::string_view to_string(Regime r);

enum class CertificateKind { min_degree, cover_failure, exhaustive };
std::string_view to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::min_degree;
  Vertex vertex = 0;               // min_degree
  std::vector<Vertex> neighbors;   // min_degree
  std::optional<CoverFailure> cover;
};

struct SolveStats {
  std::size_t queries = 0;
  std::size_t count = 0;
  std::size_t t = 0;  // completed cover iterations
  Regime regime = Regime::dense;
  bool fallback_used = false;
  std::string fallback_reason;
  std::uint64_t t_a_nanos = 0;
  std::uint64_t t_b_nanos = 0;
  std::vector<std::size_t> s_sizes;
  std::size_t scan_reads = 0;
  std::size_t joins = 0;
  std::size_t rpr_calls = 0;
  std::size_t lemma1_violations = 0;
  std::size_t observation1_violations = 0;
  std::size_t observation3_violations = 0;
};

struct SolveTrace {
  std::vector<VertexSet> s_history;
  std::vector<std::uint8_t> x_trace;  // one bit per booster query: edge present
  // Packing growth of each successful cover, aligned with the tail of
  // s_history (an S_0 handed in already covered has no entry).
  std::vector<long> y_trace;
  VertexSet k_set;
  double p_hat = 0;
  double c = 0;
  std::size_t w = 0;
  bool line16 = false;
  bool budget_hit = false;
};

struct Outcome {
  std::optional<HamCycle> cycle;
  std::optional<Certificate> certificate;
  SolveStats stats;
  SolveTrace trace;

  bool hamiltonian() const { return cycle.has_value(); }
};

// Regime cut-offs: dense when p_hat*n >= dense_factor*ln n, middle when
// p_hat*n >= middle_factor*ln ln n, sparse otherwise.
struct RegimeThresholds {
  double dense_factor = 4.0;
  double middle_factor = 2.0;
};

struct SolveConfig {
  std::size_t exact_bound = kDefaultExactBound;
  std::uint64_t sparse_budget = kDefaultSparseBudget;
  std::size_t component_cap = kDefaultComponentCap;
  // Largest Q tried when searching a cover-failure certificate on a fully
  // revealed graph.
  std::size_t certificate_search_size = 6;
  RegimeThresholds thresholds;
  std::optional<Regime> force_regime;
};

Regime select_regime(double p_hat, std::size_t n, const RegimeThresholds& t);

// Main loop. f0 pairs are queried (free when already in the ledger) to form
// the revealed graph; p0 must cover s0 and every s0 vertex must have all its
// incident pairs queried.
Outcome cer_ham(QueryOracle& oracle, std::span<const Edge> f0, const VertexSet& s0,
                const FullPathPacking& p0, const SizeCapPolicy& policy,
                const SolveConfig& cfg = {});

// Deterministic variant over the H_n mask. Sizes below kMinHnSize route to the
// exact solver up to cfg.exact_bound and are rejected above it.
Outcome dcer_ham(QueryOracle& oracle, const SolveConfig& cfg = {});

// Randomised variant over a G(n, 1/2) mask drawn from seed.
Outcome rcer_ham(QueryOracle& oracle, std::uint64_t seed, const SolveConfig& cfg = {});

// Reads the whole graph and decides it exactly, attaching a certificate to
// negative answers. Above cfg.exact_bound only certificate search is
// available; BudgetExceeded when it finds nothing.
Outcome exact_route(QueryOracle& oracle, const SolveConfig& cfg = {});

struct SparseInitialBudget {
  double c = 0;
  std::size_t w = 0;
};

// c = max(degree_sum / n, 400); w = floor(e^{-2c} n) when k_size <= 10n/c^2,
// else floor(n/c^2).
SparseInitialBudget sparse_initial_budget(std::size_t n, std::size_t degree_sum,
                                          std::size_t k_size);

// n <= exact_bound: exact; n < kMinHnSize: rcer_ham; otherwise dcer_ham.
Outcome solve_auto(QueryOracle& oracle, std::uint64_t seed, const SolveConfig& cfg = {});

// Certificate for a fully known non-Hamiltonian candidate, trying min degree,
// then cover gadgets on small non-expanding sets. nullopt when none is found.
std::optional<Certificate> find_certificate(const Graph& g, const SolveConfig& cfg = {});

bool verify_certificate(const Graph& g, const Certificate& cert,
                        std::size_t exact_bound = kDefaultExactBound);
bool verify_outcome(const Graph& g, const Outcome& outcome,
                    std::size_t exact_bound = kDefaultExactBound);

// Every S is incident to at most 0.11*n*|S| + n^{7/4} pairs of f0 missing from
// g, checked through the sorted deficiency degrees.
bool check_property_R(const Graph& g, std::span<const Edge> f0);
// Weaker proxy: at most n^{2/3} vertices of deficiency degree above 0.101n.
bool property_R_degree_proxy(const Graph& g, std::span<const Edge> f0);

}  // namespace hamcert
