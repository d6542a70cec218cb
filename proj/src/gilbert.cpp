#include "malsim/gilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace malsim {

GilbertGraph::GilbertGraph(std::span<const Vec2> positions, double radius)
    : radius_(radius), positions_(positions.begin(), positions.end()),
      adjacency_(positions.size()) {
  if (!(radius > 0.0)) throw std::invalid_argument("GilbertGraph: radius must be positive");
  const auto n = positions_.size();
  if (n == 0) return;

  double xmin = positions_[0].x, xmax = positions_[0].x;
  double ymin = positions_[0].y, ymax = positions_[0].y;
  for (const Vec2& p : positions_) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const auto nx = static_cast<int>(std::floor((xmax - xmin) / radius_)) + 1;
  const auto ny = static_cast<int>(std::floor((ymax - ymin) / radius_)) + 1;

  auto cell_of = [&](Vec2 p) {
    int cx = static_cast<int>(std::floor((p.x - xmin) / radius_));
    int cy = static_cast<int>(std::floor((p.y - ymin) / radius_));
    cx = std::clamp(cx, 0, nx - 1);
    cy = std::clamp(cy, 0, ny - 1);
    return std::pair{cx, cy};
  };

  std::vector<std::vector<int>> cells(static_cast<std::size_t>(nx) * ny);
  for (std::size_t i = 0; i < n; ++i) {
    auto [cx, cy] = cell_of(positions_[i]);
    cells[static_cast<std::size_t>(cy) * nx + cx].push_back(static_cast<int>(i));
  }

  const double r2 = radius_ * radius_;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 pi = positions_[i];
    auto [cx, cy] = cell_of(pi);
    for (int dy = -1; dy <= 1; ++dy) {
      const int yy = cy + dy;
      if (yy < 0 || yy >= ny) continue;
      for (int dx = -1; dx <= 1; ++dx) {
        const int xx = cx + dx;
        if (xx < 0 || xx >= nx) continue;
        for (int j : cells[static_cast<std::size_t>(yy) * nx + xx]) {
          if (j <= static_cast<int>(i)) continue;
          const Vec2 d = positions_[static_cast<std::size_t>(j)] - pi;
          if (dot(d, d) <= r2) {  // inclusive edge rule
            adjacency_[i].push_back(j);
            adjacency_[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
            ++edge_count_;
          }
        }
      }
    }
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::span<const int> GilbertGraph::neighbors(int id) const {
  if (id < 0 || id >= size()) throw std::invalid_argument("GilbertGraph: unknown device id");
  return adjacency_[static_cast<std::size_t>(id)];
}

GilbertGraph build_graph(const DeviceSet& devices, double radius) {
  const auto positions = devices.positions();
  return GilbertGraph(positions, radius);
}

namespace {

double bfs_max_distance(const GilbertGraph& graph, std::span<const int> sources,
                        double stop_at) {
  std::vector<char> seen(static_cast<std::size_t>(graph.size()), 0);
  std::vector<int> queue;
  double best = 0.0;
  for (int s : sources) {
    if (s < 0 || s >= graph.size()) throw std::invalid_argument("bfs: unknown source id");
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = 1;
    queue.push_back(s);
    best = std::max(best, norm(graph.position(s)));
    if (best >= stop_at) return best;
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int j : graph.neighbors(queue[head])) {
      if (seen[static_cast<std::size_t>(j)]) continue;
      seen[static_cast<std::size_t>(j)] = 1;
      best = std::max(best, norm(graph.position(j)));
      if (best >= stop_at) return best;
      queue.push_back(j);
    }
  }
  return best;
}

}  // namespace

bool reaches_radius(const GilbertGraph& graph, int source, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("reaches_radius: u must be positive");
  const int sources[] = {source};
  return bfs_max_distance(graph, sources, u) >= u;
}

double max_reachable_distance(const GilbertGraph& graph, int source) {
  const int sources[] = {source};
  return bfs_max_distance(graph, sources, std::numeric_limits<double>::infinity());
}

double max_reachable_distance(const GilbertGraph& graph, std::span<const int> sources) {
  return bfs_max_distance(graph, sources, std::numeric_limits<double>::infinity());
}

void write_edges_csv(const GilbertGraph& graph, std::ostream& out) {
  out << "i,j\n";
  char buf[64];
  for (int i = 0; i < graph.size(); ++i) {
    for (int j : graph.neighbors(i)) {
      if (j <= i) continue;
      std::snprintf(buf, sizeof(buf), "%d,%d\n", i, j);
      out << buf;
    }
  }
}

}  // namespace malsim
