#include "hamcert/oracle.hpp"

#include "hamcert/errors.hpp"

namespace hamcert {

QueryOracle::QueryOracle(Graph hidden) : hidden_(std::move(hidden)), ledger_(hidden_.size()) {}

bool QueryOracle::query(Vertex u, Vertex v) {
  if (u >= size() || v >= size()) throw InputError("query endpoint out of range");
  if (u == v) throw InputError("query on a diagonal entry");
  if (ledger_.add_edge(u, v)) ++count_;
  return hidden_.has_edge(u, v);
}

void QueryOracle::query_incident(Vertex v, KnownGraph& known) {
  for (Vertex x = 0; x < size(); ++x) {
    if (x != v && query(v, x)) known.add_edge(v, x);
  }
}

std::vector<std::size_t> QueryOracle::scan_degrees() {
  const std::size_t n = size();
  scan_reads_ += n * (n - (n > 0)) / 2;
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = hidden_.degree(v);
  return deg;
}

}  // namespace hamcert
