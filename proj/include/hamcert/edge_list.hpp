#pragma once

#include <iosfwd>

#include "hamcert/graph.hpp"

namespace hamcert {

// Text format: a header line `n m`, then m lines `u v` with 0 <= u < v < n.
// Duplicates, self-loops, reversed pairs and count mismatches are rejected.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace hamcert
