#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hamcert/exact_ham.hpp"
#include "hamcert/graph.hpp"
#include "hamcert/oracle.hpp"

namespace hamcert {

enum class CapMode { paper, middle, sparse_initial };

// Upper bound on |Q| during a FindSparse scan, as a function of the current S.
struct SizeCapPolicy {
  CapMode mode = CapMode::paper;
  std::size_t w = 0;
  VertexSet s0;

  std::size_t cap(const VertexSet& s) const;
};

inline constexpr std::uint64_t kDefaultSparseBudget = 10'000'000;
inline constexpr std::size_t kDefaultComponentCap = 26;

struct FindSparseStats {
  std::uint64_t evaluations = 0;
  std::size_t additions = 0;
  std::vector<std::vector<Vertex>> added;  // each Q in the order it was added
};

// Grows s by non-expanding sets Q of domain \ s (|N(Q) \ s| < 2|Q|, neighbours
// counted inside domain) until none within policy.cap(s) remains. Every pair
// incident to an added Q is queried and merged into g_r. Throws
// BudgetExceeded once `budget` enumeration nodes have been spent.
VertexSet find_sparse(QueryOracle& oracle, KnownGraph& g_r, VertexSet s,
                      const SizeCapPolicy& policy, const VertexSet& domain,
                      FindSparseStats* stats = nullptr,
                      std::uint64_t budget = kDefaultSparseBudget);

// Smallest size, then lexicographically first, qualifying set for the scan
// above, or nullopt. Exposed for tests.
std::optional<std::vector<Vertex>> first_sparse_set(const KnownGraph& g_r, const VertexSet& s,
                                                    const VertexSet& domain, std::size_t cap,
                                                    std::uint64_t* evaluations = nullptr,
                                                    std::uint64_t budget = kDefaultSparseBudget);

// Calls visit on every qualifying set of size exactly k (sorted), in no
// particular order, until visit returns true. Returns whether it stopped.
bool for_each_sparse_set(const KnownGraph& g, const VertexSet& s, const VertexSet& domain,
                         std::size_t k,
                         const std::function<bool(const std::vector<Vertex>&)>& visit,
                         std::uint64_t* evaluations = nullptr,
                         std::uint64_t budget = kDefaultSparseBudget);

// Largest Q of `candidates` with |N_gs(Q)| < 2|Q|, lexicographically first
// among ties; empty when none. Throws BudgetExceeded if more than `cap`
// candidates survive degree pruning.
std::vector<Vertex> max_nonexpanding_subset(const Graph& gs, std::span<const Vertex> candidates,
                                            std::size_t cap = kDefaultComponentCap);

// Maximum bipartite matching of left into right over g's edges by augmenting
// paths, preferring smaller ids. Pairs are (left, right).
std::vector<std::pair<Vertex, Vertex>> hall_matching(std::span<const Vertex> left,
                                                     const VertexSet& right, const Graph& g);

// The gadget F_C: Q, N(Q) and one dummy vertex. labels[i] is the host vertex of
// local vertex i; the dummy is the last local vertex and is labelled host n.
struct CoverGadget {
  Graph local;
  std::vector<Vertex> labels;
};

// Builds F_C from the host graph: every host edge incident to q, plus every
// pair inside nbhd and the dummy.
CoverGadget build_cover_gadget(const Graph& host, const VertexSet& q, const VertexSet& nbhd);

struct CoverFailure {
  VertexSet q;
  VertexSet neighborhood;
  std::vector<std::pair<Vertex, Vertex>> fc_edges;  // host labels, dummy = n
};

struct CoverOutcome {
  std::optional<FullPathPacking> fpp;
  std::optional<CoverFailure> failure;
  std::size_t largest_component = 0;  // S-vertices in the largest component
  long growth = 0;                    // |output| - |input|
};

struct CoverLimits {
  std::size_t component_cap = kDefaultComponentCap;
  std::size_t exact_bound = kDefaultExactBound;
};

// Adjusts fpp so every vertex of s is interior to a path, or returns a
// failure whose gadget has no Hamilton cycle. Requires every edge incident to
// s to be present in g_prime. Throws BudgetExceeded on oversized components
// and InvariantViolation when the covering paths cannot be assembled.
CoverOutcome cover_and_adjust(const KnownGraph& g_prime, const VertexSet& s,
                              const FullPathPacking& fpp, const CoverLimits& limits = {});

// Rebuilds a packing from a set of edges with maximum degree 2 and no cycle.
FullPathPacking packing_from_edges(std::size_t n, const std::vector<Edge>& edges);

}  // namespace hamcert
