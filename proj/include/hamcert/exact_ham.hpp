#pragma once

#include <cstddef>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "hamcert/graph.hpp"

namespace hamcert {

using WalkCount = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultExactBound = 24;
inline constexpr std::size_t kBruteForceBound = 12;

// Number of Hamilton paths from v to u, as the alternating sum over removed
// sets S of closed-form walk counts of length n-1 in g - S. Throws
// BudgetExceeded when g.size() > bound.
WalkCount count_ham_paths(const Graph& g, Vertex v, Vertex u,
                          std::size_t bound = kDefaultExactBound);

struct ExactResult {
  std::optional<HamCycle> cycle;
  // The edge e = {v, u} whose count on g - e was first found nonzero.
  std::optional<Edge> witness;
};

// Decides Hamiltonicity over the edges at a minimum-degree vertex; from the
// witness edge a cycle is extended vertex by vertex under the same count.
ExactResult inclusion_exclusion_ham(const Graph& g, std::size_t bound = kDefaultExactBound);

// Exhaustive permutation search (first vertex fixed, reflections skipped).
// Test oracle; throws BudgetExceeded above kBruteForceBound vertices.
std::optional<HamCycle> brute_force_ham(const Graph& g);

}  // namespace hamcert
