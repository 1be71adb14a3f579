#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "hamcert/graph.hpp"
#include "hamcert/oracle.hpp"

namespace hamcert {

// The joining edges R: a labelled overlay on top of the known graph. Each
// vertex carries at most two joining partners.
class JoinEdges {
 public:
  JoinEdges() = default;
  explicit JoinEdges(std::size_t n) : partners_(n, {kNoVertex, kNoVertex}) {}

  void add(Vertex a, Vertex b);
  bool contains(Vertex a, Vertex b) const;
  std::span<const Vertex> partners(Vertex v) const;
  std::size_t size() const { return size_; }

 private:
  std::vector<std::array<Vertex, 2>> partners_;
  std::size_t size_ = 0;
};

struct RotationRecord {
  Vertex endpoint = kNoVertex;
  std::int32_t parent = -1;  // index of the record rotated from; -1 at the root
  Vertex pivot = kNoVertex;
  std::uint32_t pivot_position = 0;  // pivot's index on the parent path
  Edge inserted;
  Edge deleted;
};

// Output of one restricted-rotation search: the endpoints reached with a
// fixed start vertex, and enough history to rebuild every path on demand.
class RotationForest {
 public:
  Vertex fixed() const { return base_.front(); }
  std::size_t size() const { return records_.size(); }
  const std::vector<RotationRecord>& records() const { return records_; }

  // Endpoints in discovery order.
  std::vector<Vertex> end() const;
  bool reaches(Vertex w) const { return index_of_[w] >= 0; }

  // The Hamilton path fixed() ... w.
  Path path_to(Vertex w) const;
  // Index of x on path_to(w), without building the path.
  std::uint32_t position(Vertex w, Vertex x) const;

 private:
  friend RotationForest rpr(const KnownGraph&, const JoinEdges&, Path, Vertex, const VertexSet&);

  std::vector<std::uint32_t> chain(std::int32_t record) const;
  std::uint32_t map_position(std::span<const std::uint32_t> chain, std::uint32_t base_pos) const;
  Vertex vertex_at(std::span<const std::uint32_t> chain, std::uint32_t pos) const;

  Path base_;  // oriented fixed() ... root endpoint
  std::vector<std::uint32_t> base_pos_;
  std::vector<RotationRecord> records_;
  std::vector<std::int32_t> index_of_;
};

// Breadth-first restricted Posa rotations over known + join, keeping `fixed`
// as the start of every path and never pivoting on a vertex of `restricted`.
// Throws InvariantViolation unless `path` is a Hamilton path of known + join
// with `fixed` as an endpoint.
RotationForest rpr(const KnownGraph& known, const JoinEdges& join, Path path, Vertex fixed,
                   const VertexSet& restricted);

// |N(End) \ restricted| over known + join, with N the external neighbourhood.
std::size_t end_neighbourhood_size(const KnownGraph& known, const JoinEdges& join,
                                   const RotationForest& forest, const VertexSet& restricted);

// Concatenates a packing into one Hamilton path of known + R and exposes the
// two-level rotation catalog. Second-level searches run on first use; the
// known graph must outlive the catalog and keep the edges it had at build time.
class BoosterCatalog {
 public:
  BoosterCatalog(const KnownGraph& known, const FullPathPacking& fpp, VertexSet restricted);

  const JoinEdges& joining_edges() const { return join_; }
  const RotationForest& first_level() const { return first_; }
  std::vector<Vertex> end() const { return first_.end(); }
  std::vector<Vertex> end_u(Vertex u) { return forest_for(u).end(); }
  const RotationForest& forest_for(Vertex u);

  // P_{u,w} with every edge absent from the known graph removed.
  FullPathPacking reconstruct(Vertex u, Vertex w);

  // Runs every second-level search.
  void materialize();
  std::size_t rpr_calls() const { return 1 + second_.size(); }
  const VertexSet& restricted() const { return restricted_; }

 private:
  const KnownGraph* known_;
  VertexSet restricted_;
  JoinEdges join_;
  RotationForest first_;
  std::map<Vertex, RotationForest> second_;
};

inline BoosterCatalog reduce_paths(const KnownGraph& known, const FullPathPacking& fpp,
                                   VertexSet restricted) {
  return BoosterCatalog(known, fpp, std::move(restricted));
}

// Adds the booster {u, w} to reconstruct(u, w): joins the two fragments or,
// when the reconstruction is a single path, closes it into a cycle.
FullPathPacking apply_booster(const FullPathPacking& reconstruction, Vertex u, Vertex w);

}  // namespace hamcert
