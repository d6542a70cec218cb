#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "malsim/devices.hpp"
#include "malsim/geometry.hpp"

namespace malsim {

/// Fixed-radius connectivity graph: edge (i,j) iff i != j and |p_i - p_j| <= r.
/// Built with a uniform grid of cell side r, so construction only inspects the
/// 3x3 cell neighborhood of each device. Immutable; concurrent reads are safe.
class GilbertGraph {
 public:
  GilbertGraph(std::span<const Vec2> positions, double radius);

  double radius() const { return radius_; }
  int size() const { return static_cast<int>(positions_.size()); }
  const std::vector<Vec2>& positions() const { return positions_; }
  Vec2 position(int id) const { return positions_[static_cast<std::size_t>(id)]; }

  /// Sorted neighbor ids. Throws on unknown id.
  std::span<const int> neighbors(int id) const;
  int degree(int id) const { return static_cast<int>(neighbors(id).size()); }
  std::size_t edge_count() const { return edge_count_; }

 private:
  double radius_;
  std::vector<Vec2> positions_;
  std::vector<std::vector<int>> adjacency_;
  std::size_t edge_count_ = 0;
};

GilbertGraph build_graph(const DeviceSet& devices, double radius);

/// True iff BFS from `source` reaches any device at Euclidean distance >= u
/// from the origin.
bool reaches_radius(const GilbertGraph& graph, int source, double u);

/// Largest distance-from-origin over the component of `source` (multi-source
/// overload takes the union of components).
double max_reachable_distance(const GilbertGraph& graph, int source);
double max_reachable_distance(const GilbertGraph& graph, std::span<const int> sources);

/// CSV: header i,j; one row per undirected edge with i < j.
void write_edges_csv(const GilbertGraph& graph, std::ostream& out);

}  // namespace malsim
