#pragma once

#include "lanav/common.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace lanav {

enum class VoxelState : uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

// Dense 3D occupancy grid with an explicit unknown state. Voxel (i,j,k)
// spans [origin + res*(i,j,k), origin + res*(i+1,j+1,k+1)); its center is
// origin + res*(i+0.5, j+0.5, k+0.5).
class VoxelGrid {
public:
  VoxelGrid() = default;

  VoxelGrid(const Vec3& origin, double resolution, const Vec3i& dims,
            VoxelState fill = VoxelState::Unknown)
      : origin_(origin), res_(resolution), dims_(dims) {
    if (!(res_ > 0.0)) throw Error(ErrorCode::ConfigError, "voxel resolution must be > 0");
    if (dims_.minCoeff() < 1) throw Error(ErrorCode::ConfigError, "voxel dims must be >= 1");
    states_.assign(static_cast<size_t>(dims_.x()) * dims_.y() * dims_.z(), fill);
  }

  const Vec3& origin() const { return origin_; }
  double resolution() const { return res_; }
  const Vec3i& dims() const { return dims_; }
  size_t size() const { return states_.size(); }

  bool in_bounds(const Vec3i& v) const {
    return v.x() >= 0 && v.y() >= 0 && v.z() >= 0 && v.x() < dims_.x() && v.y() < dims_.y() &&
           v.z() < dims_.z();
  }

  bool in_bounds(const Vec3& p) const { return in_bounds(world_to_voxel(p)); }

  int linear(const Vec3i& v) const { return v.x() + dims_.x() * (v.y() + dims_.y() * v.z()); }

  Vec3i delinear(int idx) const {
    const int xy = dims_.x() * dims_.y();
    const int z = idx / xy;
    const int r = idx - z * xy;
    return Vec3i(r % dims_.x(), r / dims_.x(), z);
  }

  Vec3i world_to_voxel(const Vec3& p) const {
    const Vec3 q = (p - origin_) / res_;
    return Vec3i(static_cast<int>(std::floor(q.x())), static_cast<int>(std::floor(q.y())),
                 static_cast<int>(std::floor(q.z())));
  }

  Vec3 voxel_center(const Vec3i& v) const {
    return origin_ + res_ * (v.cast<double>() + Vec3(0.5, 0.5, 0.5));
  }

  VoxelState state(const Vec3i& v) const {
    return in_bounds(v) ? states_[linear(v)] : VoxelState::Unknown;
  }

  VoxelState state(const Vec3& p) const { return state(world_to_voxel(p)); }

  void set_state(const Vec3i& v, VoxelState s) {
    if (in_bounds(v)) states_[linear(v)] = s;
  }

  // Knowledge only grows: Unknown may become Free or Occupied, Free may be
  // upgraded to Occupied, nothing ever reverts to Unknown.
  void observe(const Vec3i& v, VoxelState s) {
    if (!in_bounds(v) || s == VoxelState::Unknown) return;
    VoxelState& cur = states_[linear(v)];
    if (cur == VoxelState::Unknown || s == VoxelState::Occupied) cur = s;
  }

  size_t count(VoxelState s) const {
    return static_cast<size_t>(std::count(states_.begin(), states_.end(), s));
  }

  const std::vector<VoxelState>& raw() const { return states_; }

  // True iff some voxel strictly between a and b (excluding the voxels that
  // contain a and b themselves) is Occupied. Unknown voxels never block;
  // callers that must avoid unknown space enforce that themselves. Endpoints
  // are ordered canonically so the traversal is exactly symmetric in (a, b).
  bool raycast_blocked(const Vec3& a, const Vec3& b) const {
    const Vec3* lo = &a;
    const Vec3* hi = &b;
    for (int k = 0; k < 3; ++k) {
      if ((*lo)[k] < (*hi)[k]) break;
      if ((*lo)[k] > (*hi)[k]) {
        std::swap(lo, hi);
        break;
      }
    }
    bool blocked = false;
    traverse(*lo, *hi, [&](const Vec3i& v) {
      if (state(v) == VoxelState::Occupied) {
        blocked = true;
        return false;
      }
      return true;
    });
    return blocked;
  }

  // Amanatides & Woo traversal over the voxels strictly between a and b.
  // The visitor returns false to stop early.
  template <typename Visitor>
  void traverse(const Vec3& a, const Vec3& b, Visitor&& visit) const {
    const Vec3i va = world_to_voxel(a);
    const Vec3i vb = world_to_voxel(b);
    if (va == vb) return;

    const Vec3 d = b - a;
    const double len = d.norm();
    if (len < 1e-12) return;
    const Vec3 dir = d / len;

    Vec3i cur = va;
    Vec3i step;
    Vec3 t_max, t_delta;
    for (int k = 0; k < 3; ++k) {
      if (dir[k] > 1e-15) {
        step[k] = 1;
        const double next = origin_[k] + (cur[k] + 1) * res_;
        t_max[k] = (next - a[k]) / dir[k];
        t_delta[k] = res_ / dir[k];
      } else if (dir[k] < -1e-15) {
        step[k] = -1;
        const double next = origin_[k] + cur[k] * res_;
        t_max[k] = (next - a[k]) / dir[k];
        t_delta[k] = -res_ / dir[k];
      } else {
        step[k] = 0;
        t_max[k] = kInf;
        t_delta[k] = kInf;
      }
    }

    for (int guard = 0; guard < 4 * (dims_.x() + dims_.y() + dims_.z() + 4); ++guard) {
      int axis = 0;
      if (t_max[1] < t_max[axis]) axis = 1;
      if (t_max[2] < t_max[axis]) axis = 2;
      if (t_max[axis] > len) return;  // next crossing is past b
      cur[axis] += step[axis];
      t_max[axis] += t_delta[axis];
      if (cur == vb) return;  // b's own voxel is excluded
      if (!visit(cur)) return;
    }
  }

private:
  Vec3 origin_ = Vec3::Zero();
  double res_ = 0.1;
  Vec3i dims_ = Vec3i::Ones();
  std::vector<VoxelState> states_;
};

// Euclidean distance field over occupied voxel centers, refreshed from a grid
// snapshot. Internally stores the exact nearest occupied voxel per cell
// (Felzenszwalb-Huttenlocher feature transform, separable in each axis), so
// point queries return the distance to a concrete voxel center and the
// matching analytic gradient direction.
class DistanceField {
public:
  DistanceField() = default;

  explicit DistanceField(const VoxelGrid& grid) { rebuild(grid); }

  void rebuild(const VoxelGrid& grid) {
    origin_ = grid.origin();
    res_ = grid.resolution();
    dims_ = grid.dims();
    const int n = dims_.x() * dims_.y() * dims_.z();
    feature_.assign(n, -1);
    has_occupied_ = false;

    // squared distance in voxel units, feature = linear index of nearest occupied
    std::vector<double> dist2(n, kInf);
    for (int i = 0; i < n; ++i) {
      if (grid.raw()[i] == VoxelState::Occupied) {
        dist2[i] = 0.0;
        feature_[i] = i;
        has_occupied_ = true;
      }
    }
    if (!has_occupied_) return;

    // 1D lower-envelope transform along each axis in turn.
    const int nx = dims_.x(), ny = dims_.y(), nz = dims_.z();
    auto pass = [&](int len, int count, auto index_of) {
      std::vector<double> f(len);
      std::vector<int> feat(len);
      std::vector<int> v(len);
      std::vector<double> z(len + 1);
      std::vector<double> out_d(len);
      std::vector<int> out_f(len);
      for (int c = 0; c < count; ++c) {
        for (int i = 0; i < len; ++i) {
          const int idx = index_of(c, i);
          f[i] = dist2[idx];
          feat[i] = feature_[idx];
        }
        int k = -1;  // top of the lower envelope; infinite parabolas are skipped
        for (int q = 0; q < len; ++q) {
          if (f[q] == kInf) continue;
          double s = 0.0;
          while (k >= 0) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k])
              --k;
            else
              break;
          }
          if (k < 0) {
            k = 0;
            v[0] = q;
            z[0] = -kInf;
          } else {
            ++k;
            v[k] = q;
            z[k] = s;
          }
          z[k + 1] = kInf;
        }
        if (k < 0) {
          for (int i = 0; i < len; ++i) {
            out_d[i] = kInf;
            out_f[i] = -1;
          }
        } else {
          int kk = 0;
          for (int q = 0; q < len; ++q) {
            while (z[kk + 1] < q) ++kk;
            out_d[q] = sq(double(q - v[kk])) + f[v[kk]];
            out_f[q] = feat[v[kk]];
          }
        }
        for (int i = 0; i < len; ++i) {
          const int idx = index_of(c, i);
          dist2[idx] = out_d[i];
          feature_[idx] = out_f[i];
        }
      }
    };

    // x pass: lines vary in x, fixed (y,z)
    pass(nx, ny * nz, [&](int c, int i) {
      const int y = c % ny, z = c / ny;
      return i + nx * (y + ny * z);
    });
    // y pass
    pass(ny, nx * nz, [&](int c, int i) {
      const int x = c % nx, z = c / nx;
      return x + nx * (i + ny * z);
    });
    // z pass
    pass(nz, nx * ny, [&](int c, int i) {
      const int x = c % nx, y = c / nx;
      return x + nx * (y + ny * i);
    });
  }

  bool has_occupied() const { return has_occupied_; }

  // Distance from p to the nearest occupied voxel center; +inf when the grid
  // has no occupied voxel. Candidates are the stored nearest features of the
  // 3x3x3 neighborhood around p's voxel, which resolves the continuous-query
  // cases where the containing voxel's feature is not the closest one.
  double distance(const Vec3& p) const {
    Vec3 grad;
    return distance(p, grad);
  }

  double distance(const Vec3& p, Vec3& grad) const {
    grad = Vec3::Zero();
    if (!has_occupied_) return kInf;
    const Vec3i v0 = clamp_voxel(p);
    double best = kInf;
    Vec3 best_center = Vec3::Zero();
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const Vec3i v(v0.x() + dx, v0.y() + dy, v0.z() + dz);
          if (v.x() < 0 || v.y() < 0 || v.z() < 0 || v.x() >= dims_.x() || v.y() >= dims_.y() ||
              v.z() >= dims_.z())
            continue;
          const int f = feature_[v.x() + dims_.x() * (v.y() + dims_.y() * v.z())];
          if (f < 0) continue;
          const Vec3 c = center_of(f);
          const double d = (p - c).norm();
          if (d < best) {
            best = d;
            best_center = c;
          }
        }
    if (best == kInf) return kInf;
    if (best > 1e-12) grad = (p - best_center) / best;
    return best;
  }

private:
  Vec3i clamp_voxel(const Vec3& p) const {
    Vec3 q = (p - origin_) / res_;
    Vec3i v(static_cast<int>(std::floor(q.x())), static_cast<int>(std::floor(q.y())),
            static_cast<int>(std::floor(q.z())));
    for (int k = 0; k < 3; ++k) v[k] = std::clamp(v[k], 0, dims_[k] - 1);
    return v;
  }

  Vec3 center_of(int idx) const {
    const int nx = dims_.x(), ny = dims_.y();
    const int z = idx / (nx * ny);
    const int r = idx - z * nx * ny;
    const Vec3i v(r % nx, r / nx, z);
    return origin_ + res_ * (v.cast<double>() + Vec3(0.5, 0.5, 0.5));
  }

  Vec3 origin_ = Vec3::Zero();
  double res_ = 0.1;
  Vec3i dims_ = Vec3i::Ones();
  std::vector<int> feature_;
  bool has_occupied_ = false;
};

}  // namespace lanav
