#include "hamcert/posa.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "hamcert/errors.hpp"

namespace hamcert {

void JoinEdges::add(Vertex a, Vertex b) {
  if (a == b || a >= partners_.size() || b >= partners_.size())
    throw InvariantViolation("joining edge out of range");
  if (contains(a, b)) return;
  auto slot = [&](Vertex v) -> Vertex& {
    auto& p = partners_[v];
    if (p[0] == kNoVertex) return p[0];
    if (p[1] == kNoVertex) return p[1];
    throw InvariantViolation("vertex " + std::to_string(v) + " has two joining edges already");
  };
  slot(a) = b;
  slot(b) = a;
  ++size_;
}

bool JoinEdges::contains(Vertex a, Vertex b) const {
  if (a >= partners_.size()) return false;
  const auto& p = partners_[a];
  return p[0] == b || p[1] == b;
}

std::span<const Vertex> JoinEdges::partners(Vertex v) const {
  const auto& p = partners_[v];
  std::size_t k = p[0] == kNoVertex ? 0 : (p[1] == kNoVertex ? 1 : 2);
  return {p.data(), k};
}

std::vector<Vertex> RotationForest::end() const {
  std::vector<Vertex> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.endpoint);
  return out;
}

std::vector<std::uint32_t> RotationForest::chain(std::int32_t record) const {
  std::vector<std::uint32_t> c;
  for (std::int32_t i = record; i >= 0 && records_[i].parent >= 0; i = records_[i].parent)
    c.push_back(records_[i].pivot_position);
  std::reverse(c.begin(), c.end());
  return c;
}

// Each rotation with pivot index j reverses the suffix after j:
// p -> p for p <= j, p -> n-1+j+1-p otherwise. The map is an involution.
std::uint32_t RotationForest::map_position(std::span<const std::uint32_t> c,
                                           std::uint32_t p) const {
  const auto n = static_cast<std::uint32_t>(base_.size());
  for (auto j : c)
    if (p > j) p = n + j - p;
  return p;
}

Vertex RotationForest::vertex_at(std::span<const std::uint32_t> c, std::uint32_t p) const {
  const auto n = static_cast<std::uint32_t>(base_.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    if (p > *it) p = n + *it - p;
  return base_[p];
}

std::uint32_t RotationForest::position(Vertex w, Vertex x) const {
  if (!reaches(w)) throw InvariantViolation("vertex is not a catalogued endpoint");
  auto c = chain(index_of_[w]);
  return map_position(c, base_pos_[x]);
}

Path RotationForest::path_to(Vertex w) const {
  if (!reaches(w)) throw InvariantViolation("vertex is not a catalogued endpoint");
  Path p = base_;
  for (auto j : chain(index_of_[w])) std::reverse(p.begin() + j + 1, p.end());
  return p;
}

namespace {

bool adjacent(const KnownGraph& g, const JoinEdges& join, Vertex a, Vertex b) {
  return g.has_edge(a, b) || join.contains(a, b);
}

void validate_path(const KnownGraph& g, const JoinEdges& join, const Path& path) {
  const std::size_t n = g.size();
  if (path.size() != n) throw InvariantViolation("rpr: path does not cover every vertex");
  std::vector<bool> seen(n, false);
  for (auto v : path) {
    if (v >= n || seen[v]) throw InvariantViolation("rpr: path repeats or leaves the vertex set");
    seen[v] = true;
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!adjacent(g, join, path[i], path[i + 1]))
      throw InvariantViolation("rpr: path uses a non-edge");
}

}  // namespace

RotationForest rpr(const KnownGraph& known, const JoinEdges& join, Path path, Vertex fixed,
                   const VertexSet& restricted) {
  validate_path(known, join, path);
  const std::size_t n = path.size();
  if (n == 0) throw InvariantViolation("rpr: empty path");
  if (path.front() != fixed) {
    if (path.back() != fixed) throw InvariantViolation("rpr: fixed vertex is not an endpoint");
    std::reverse(path.begin(), path.end());
  }

  RotationForest f;
  f.base_ = std::move(path);
  f.base_pos_.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) f.base_pos_[f.base_[i]] = i;
  f.index_of_.assign(n, -1);

  RotationRecord root;
  root.endpoint = f.base_.back();
  f.records_.push_back(root);
  f.index_of_[root.endpoint] = 0;
  if (n == 1) return f;

  std::deque<std::int32_t> queue{0};
  std::vector<Vertex> nbrs;
  while (!queue.empty()) {
    const std::int32_t idx = queue.front();
    queue.pop_front();
    const Vertex w = f.records_[idx].endpoint;
    const auto c = f.chain(idx);

    nbrs.clear();
    known.for_each_neighbor(w, [&](Vertex z) { nbrs.push_back(z); });
    auto extra = join.partners(w);
    if (!extra.empty()) {
      for (auto z : extra)
        if (!known.has_edge(w, z)) nbrs.push_back(z);
      std::sort(nbrs.begin(), nbrs.end());
    }

    for (auto z : nbrs) {
      if (restricted.contains(z)) continue;
      const std::uint32_t j = f.map_position(c, f.base_pos_[z]);
      // z adjacent to w on the path yields w itself
      if (j + 2 >= n) continue;
      const Vertex y = f.vertex_at(c, j + 1);
      if (f.index_of_[y] >= 0) continue;
      RotationRecord r;
      r.endpoint = y;
      r.parent = idx;
      r.pivot = z;
      r.pivot_position = j;
      r.inserted = Edge(w, z);
      r.deleted = Edge(z, y);
      f.index_of_[y] = static_cast<std::int32_t>(f.records_.size());
      queue.push_back(f.index_of_[y]);
      f.records_.push_back(r);
    }
  }
  return f;
}

std::size_t end_neighbourhood_size(const KnownGraph& known, const JoinEdges& join,
                                   const RotationForest& forest, const VertexSet& restricted) {
  const std::size_t n = known.size();
  VertexSet ends(n);
  for (const auto& r : forest.records()) ends.insert(r.endpoint);
  VertexSet out(n);
  auto consider = [&](Vertex z) {
    if (!ends.contains(z) && !restricted.contains(z)) out.insert(z);
  };
  for (const auto& r : forest.records()) {
    known.for_each_neighbor(r.endpoint, consider);
    for (auto z : join.partners(r.endpoint)) consider(z);
  }
  return out.size();
}

BoosterCatalog::BoosterCatalog(const KnownGraph& known, const FullPathPacking& fpp,
                               VertexSet restricted)
    : known_(&known), restricted_(std::move(restricted)), join_(known.size()) {
  const std::size_t n = known.size();
  if (fpp.vertex_count() != n) throw InvariantViolation("packing and graph sizes differ");
  if (fpp.is_cycle()) throw InvariantViolation("reduce_paths needs an open packing");
  Path whole;
  whole.reserve(n);
  for (const auto& p : fpp.paths()) {
    if (!whole.empty()) join_.add(whole.back(), p.front());
    whole.insert(whole.end(), p.begin(), p.end());
  }
  const Vertex v1 = whole.front();
  first_ = rpr(known, join_, std::move(whole), v1, restricted_);
}

const RotationForest& BoosterCatalog::forest_for(Vertex u) {
  auto it = second_.find(u);
  if (it != second_.end()) return it->second;
  if (!first_.reaches(u)) throw InvariantViolation("vertex is not in End");
  auto forest = rpr(*known_, join_, first_.path_to(u), u, restricted_);
  return second_.emplace(u, std::move(forest)).first->second;
}

void BoosterCatalog::materialize() {
  for (auto u : first_.end()) forest_for(u);
}

FullPathPacking BoosterCatalog::reconstruct(Vertex u, Vertex w) {
  const auto& f = forest_for(u);
  Path p = f.path_to(w);
  std::vector<Path> pieces;
  Path cur;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0 && !known_->has_edge(p[i - 1], p[i])) {
      pieces.push_back(std::move(cur));
      cur.clear();
    }
    cur.push_back(p[i]);
  }
  pieces.push_back(std::move(cur));
  return FullPathPacking::from_paths(known_->size(), std::move(pieces));
}

FullPathPacking apply_booster(const FullPathPacking& rec, Vertex u, Vertex w) {
  const auto& paths = rec.paths();
  const std::size_t n = rec.vertex_count();
  if (paths.size() == 1) {
    const auto& p = paths.front();
    if (n < 3 || !((p.front() == u && p.back() == w) || (p.front() == w && p.back() == u)))
      throw InvariantViolation("booster does not close the path");
    return FullPathPacking::closed(n, HamCycle{p});
  }
  // u starts the first piece and w ends the last one.
  if (paths.front().front() != u || paths.back().back() != w)
    throw InvariantViolation("booster endpoints are not at the ends of the reconstruction");
  std::vector<Path> out;
  out.reserve(paths.size() - 1);
  Path joined = paths.back();
  joined.insert(joined.end(), paths.front().begin(), paths.front().end());
  out.push_back(std::move(joined));
  for (std::size_t i = 1; i + 1 < paths.size(); ++i) out.push_back(paths[i]);
  return FullPathPacking::from_paths(n, std::move(out));
}

}  // namespace hamcert
