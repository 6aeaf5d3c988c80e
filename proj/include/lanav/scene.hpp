#pragma once

#include "lanav/common.hpp"
#include "lanav/voxel_grid.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace lanav {

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }

  // Signed distance: negative inside, positive outside.
  double signed_distance(const Vec3& p) const {
    const Vec3 c = 0.5 * (min + max);
    const Vec3 h = 0.5 * (max - min);
    const Vec3 q = (p - c).cwiseAbs() - h;
    const Vec3 outside = q.cwiseMax(0.0);
    const double inside = std::min(q.maxCoeff(), 0.0);
    return outside.norm() + inside;
  }
};

// Ground-truth world description. All lengths in meters.
struct Scene {
  std::string name;
  Vec3 bounds_min = Vec3::Zero();
  Vec3 bounds_max = Vec3::Ones();
  double resolution = 0.25;
  std::vector<Aabb> obstacles;
  std::vector<Vec3> features;
  Vec3 start_position = Vec3::Zero();
  double start_yaw = 0.0;
  Vec3 goal = Vec3::Zero();

  Vec3i grid_dims() const {
    const Vec3 span = bounds_max - bounds_min;
    return Vec3i(std::max(1, int(std::ceil(span.x() / resolution - 1e-9))),
                 std::max(1, int(std::ceil(span.y() / resolution - 1e-9))),
                 std::max(1, int(std::ceil(span.z() / resolution - 1e-9))));
  }

  // Fully known occupancy: a voxel is Occupied iff its center lies inside an
  // obstacle box.
  VoxelGrid build_truth_grid() const {
    VoxelGrid g(bounds_min, resolution, grid_dims(), VoxelState::Free);
    const Vec3i dims = g.dims();
    for (const auto& box : obstacles) {
      const Vec3i lo = g.world_to_voxel(box.min);
      const Vec3i hi = g.world_to_voxel(box.max);
      for (int z = std::max(0, lo.z()); z <= std::min(dims.z() - 1, hi.z()); ++z)
        for (int y = std::max(0, lo.y()); y <= std::min(dims.y() - 1, hi.y()); ++y)
          for (int x = std::max(0, lo.x()); x <= std::min(dims.x() - 1, hi.x()); ++x) {
            const Vec3i v(x, y, z);
            if (box.contains(g.voxel_center(v))) g.set_state(v, VoxelState::Occupied);
          }
    }
    return g;
  }

  // Exact clearance against the obstacle boxes (not the voxelization);
  // <= 0 means touching or inside.
  double clearance(const Vec3& p) const {
    double d = kInf;
    for (const auto& box : obstacles) d = std::min(d, box.signed_distance(p));
    return d;
  }
};

inline nlohmann::ordered_json vec3_json(const Vec3& v) {
  return nlohmann::ordered_json::array({v.x(), v.y(), v.z()});
}

inline Vec3 vec3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::ConfigError, "expected [x,y,z]");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline nlohmann::ordered_json scene_to_json(const Scene& s) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["name"] = s.name;
  j["bounds_min"] = vec3_json(s.bounds_min);
  j["bounds_max"] = vec3_json(s.bounds_max);
  j["resolution"] = s.resolution;
  j["start_position"] = vec3_json(s.start_position);
  j["start_yaw"] = s.start_yaw;
  j["goal"] = vec3_json(s.goal);
  j["obstacles"] = nlohmann::ordered_json::array();
  for (const auto& b : s.obstacles)
    j["obstacles"].push_back({{"min", vec3_json(b.min)}, {"max", vec3_json(b.max)}});
  j["features"] = nlohmann::ordered_json::array();
  for (const auto& f : s.features) j["features"].push_back(vec3_json(f));
  return j;
}

inline Scene scene_from_json(const nlohmann::json& j) {
  Scene s;
  try {
    s.name = j.value("name", "");
    s.bounds_min = vec3_from_json(j.at("bounds_min"));
    s.bounds_max = vec3_from_json(j.at("bounds_max"));
    s.resolution = j.at("resolution").get<double>();
    s.start_position = vec3_from_json(j.at("start_position"));
    s.start_yaw = j.at("start_yaw").get<double>();
    s.goal = vec3_from_json(j.at("goal"));
    for (const auto& b : j.at("obstacles"))
      s.obstacles.push_back({vec3_from_json(b.at("min")), vec3_from_json(b.at("max"))});
    for (const auto& f : j.at("features")) s.features.push_back(vec3_from_json(f));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad scene file: ") + e.what());
  }
  if (!(s.resolution > 0.0)) throw Error(ErrorCode::ConfigError, "scene resolution must be > 0");
  if (!((s.bounds_max - s.bounds_min).minCoeff() > 0))
    throw Error(ErrorCode::ConfigError, "scene bounds empty");
  return s;
}

inline void save_scene(const Scene& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write scene file: " + path);
  out << scene_to_json(s).dump(2) << "\n";
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read scene file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad scene JSON: ") + e.what());
  }
  return scene_from_json(j);
}

}  // namespace lanav
