#include "hamcert/edge_list.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "hamcert/errors.hpp"

namespace hamcert {

Graph read_edge_list(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header");
  if (m > n * (n - 1) / 2) throw InputError("edge list: too many edges");
  Graph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v)) throw InputError("edge list: truncated at edge " + std::to_string(i));
    if (u < 0 || v >= n || u >= v) {
      throw InputError("edge list: pair must satisfy 0 <= u < v < n at edge " + std::to_string(i));
    }
    if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      throw InputError("edge list: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
  }
  std::string rest;
  if (in >> rest) throw InputError("edge list: trailing data");
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace hamcert
