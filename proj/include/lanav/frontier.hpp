#pragma once

#include "lanav/voxel_grid.hpp"

#include <vector>

namespace lanav {

struct FrontierCluster {
  int id = -1;
  std::vector<int> cells;  // linear voxel indices, sorted
  Vec3 centroid = Vec3::Zero();
};

inline bool is_frontier_cell(const VoxelGrid& grid, const Vec3i& v) {
  if (grid.state(v) != VoxelState::Free) return false;
  static const Vec3i kFaces[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                  {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (const auto& d : kFaces) {
    const Vec3i n = v + d;
    if (grid.in_bounds(n) && grid.state(n) == VoxelState::Unknown) return true;
  }
  return false;
}

// Region growing over 26-connectivity, seeded in linear-index order. A cell is
// only added while the growing cluster's bounding-box diagonal stays within
// max_extent; cells left behind seed later clusters, so the output is a
// disjoint cover of the frontier set.
inline std::vector<FrontierCluster> detect_frontiers(const VoxelGrid& grid, double max_extent) {
  const Vec3i dims = grid.dims();
  std::vector<uint8_t> is_frontier(grid.size(), 0);
  for (int z = 0; z < dims.z(); ++z)
    for (int y = 0; y < dims.y(); ++y)
      for (int x = 0; x < dims.x(); ++x) {
        const Vec3i v(x, y, z);
        if (is_frontier_cell(grid, v)) is_frontier[grid.linear(v)] = 1;
      }

  std::vector<uint8_t> assigned(grid.size(), 0);
  std::vector<FrontierCluster> clusters;
  const double max_ext2 = max_extent * max_extent;

  for (int seed = 0; seed < static_cast<int>(grid.size()); ++seed) {
    if (!is_frontier[seed] || assigned[seed]) continue;
    FrontierCluster fc;
    Vec3i lo = grid.delinear(seed), hi = lo;
    std::vector<int> queue{seed};
    assigned[seed] = 1;
    Vec3 sum = Vec3::Zero();
    size_t head = 0;
    while (head < queue.size()) {
      const int idx = queue[head++];
      const Vec3i v = grid.delinear(idx);
      fc.cells.push_back(idx);
      sum += grid.voxel_center(v);
      for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0 && dz == 0) continue;
            const Vec3i n = v + Vec3i(dx, dy, dz);
            if (!grid.in_bounds(n)) continue;
            const int nidx = grid.linear(n);
            if (!is_frontier[nidx] || assigned[nidx]) continue;
            const Vec3i nlo = lo.cwiseMin(n), nhi = hi.cwiseMax(n);
            if ((nhi - nlo).cast<double>().squaredNorm() * sq(grid.resolution()) > max_ext2)
              continue;  // would exceed the cluster extent; leave for a new seed
            lo = nlo;
            hi = nhi;
            assigned[nidx] = 1;
            queue.push_back(nidx);
          }
    }
    std::sort(fc.cells.begin(), fc.cells.end());
    fc.centroid = sum / double(fc.cells.size());
    fc.id = static_cast<int>(clusters.size());
    clusters.push_back(std::move(fc));
  }
  return clusters;
}

}  // namespace lanav
