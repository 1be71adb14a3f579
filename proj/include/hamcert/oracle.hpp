#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hamcert/graph.hpp"

namespace hamcert {

// The revealed subgraph: pairs known to be edges of the hidden graph.
using KnownGraph = Graph;

// Sole access path to the input graph. Every distinct pair read is recorded in
// the ledger and counted once; repeat reads are free.
class QueryOracle {
 public:
  explicit QueryOracle(Graph hidden);

  std::size_t size() const { return hidden_.size(); }
  std::size_t query_count() const { return count_; }

  // Throws InputError when u == v or either endpoint is out of range.
  bool query(Vertex u, Vertex v);
  bool is_queried(Vertex u, Vertex v) const { return ledger_.has_edge(u, v); }

  // Queries every pair {v, x}, adding discovered edges to `known`.
  void query_incident(Vertex v, KnownGraph& known);

  // Reads every entry once to report degrees, without adding the pairs to
  // the ledger. Each call is charged n(n-1)/2 reads in scan_reads().
  std::vector<std::size_t> scan_degrees();
  std::size_t scan_reads() const { return scan_reads_; }

  // Pairs queried so far, as a graph.
  const Graph& ledger() const { return ledger_; }

  // Direct access for certificate checkers and tests; solvers never call it.
  const Graph& hidden_for_verification() const { return hidden_; }

 private:
  Graph hidden_;
  Graph ledger_;
  std::size_t count_ = 0;
  std::size_t scan_reads_ = 0;
};

}  // namespace hamcert
