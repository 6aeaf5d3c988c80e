#pragma once

#include "lanav/common.hpp"
#include "lanav/feature_map.hpp"
#include "lanav/voxel_grid.hpp"

#include <vector>

namespace lanav {

// Forward-looking pinhole frustum. The optical axis is the body x-axis;
// azimuth is measured in the body xy-plane, elevation against it.
struct CameraModel {
  double horiz_half_angle = 0.7;  // rad
  double vert_half_angle = 0.5;   // rad
  double max_range = 4.5;         // m
  double min_range = 0.3;         // m

  void validate() const {
    if (!(horiz_half_angle > 0.0 && horiz_half_angle < M_PI_2) ||
        !(vert_half_angle > 0.0 && vert_half_angle < M_PI_2))
      throw Error(ErrorCode::ConfigError, "camera half-angles must lie in (0, pi/2)");
    if (!(min_range >= 0.0 && min_range < max_range))
      throw Error(ErrorCode::ConfigError, "camera ranges must satisfy 0 <= min < max");
  }
};

struct FlatPose {
  Vec3 position = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();  // body-to-world, columns = x_b, y_b, z_b
  double yaw = 0.0;
};

// 6-DOF pose from flat outputs (position, acceleration, yaw): the body z-axis
// carries thrust a + g, the body x-axis is the yaw heading projected onto the
// plane normal to it.
inline FlatPose flat_pose(const Vec3& p, const Vec3& a, double yaw) {
  const Vec3 thrust = a + Vec3(0, 0, kGravity);
  const double tn = thrust.norm();
  if (tn < 1e-6) throw Error(ErrorCode::DegenerateThrust, "free-fall: |a + g| ~ 0");
  const Vec3 zb = thrust / tn;
  const Vec3 heading(std::cos(yaw), std::sin(yaw), 0.0);
  const Vec3 w = zb.cross(heading);
  const double wn = w.norm();
  if (wn < 1e-9) throw Error(ErrorCode::DegenerateThrust, "heading parallel to thrust axis");
  const Vec3 yb = w / wn;
  const Vec3 xb = yb.cross(zb);
  FlatPose out;
  out.position = p;
  out.rotation.col(0) = xb;
  out.rotation.col(1) = yb;
  out.rotation.col(2) = zb;
  out.yaw = wrap_pi(yaw);
  return out;
}

struct CameraCoords {
  double depth = 0.0;      // body x
  double azimuth = 0.0;    // atan2(y, x)
  double elevation = 0.0;  // atan2(z, hypot(x, y))
};

inline CameraCoords camera_coords(const FlatPose& pose, const Vec3& q) {
  const Vec3 qb = pose.rotation.transpose() * (q - pose.position);
  CameraCoords c;
  c.depth = qb.x();
  c.azimuth = std::atan2(qb.y(), qb.x());
  c.elevation = std::atan2(qb.z(), std::hypot(qb.x(), qb.y()));
  return c;
}

inline bool in_fov(const FlatPose& pose, const CameraModel& cam, const Vec3& q) {
  const CameraCoords c = camera_coords(pose, q);
  return c.depth >= cam.min_range && c.depth <= cam.max_range &&
         std::abs(c.azimuth) <= cam.horiz_half_angle &&
         std::abs(c.elevation) <= cam.vert_half_angle;
}

struct VisMetricParams {
  double k_angle = 20.0;  // rad^-1
  double k_range = 5.0;   // m^-1
};

// Smooth frustum membership: near 1 deep inside the FOV, near 0 outside,
// monotone toward the FOV center on every axis.
inline double vis_metric(const Vec3& q, const FlatPose& pose, const CameraModel& cam,
                         const VisMetricParams& vp = {}) {
  const CameraCoords c = camera_coords(pose, q);
  return sigmoid(vp.k_angle * (cam.horiz_half_angle - std::abs(c.azimuth))) *
         sigmoid(vp.k_angle * (cam.vert_half_angle - std::abs(c.elevation))) *
         sigmoid(vp.k_range * (cam.max_range - c.depth)) *
         sigmoid(vp.k_range * (c.depth - cam.min_range));
}

// vis_metric plus its analytic partial derivative with respect to the yaw that
// generated `pose` (holding position and acceleration fixed). The body z-axis
// does not depend on yaw; x_b and y_b rotate inside the plane normal to it.
inline double vis_metric_dyaw(const Vec3& q, const FlatPose& pose, const CameraModel& cam,
                              double& dv_dyaw, const VisMetricParams& vp = {}) {
  const Vec3 d = q - pose.position;
  const Vec3 xb = pose.rotation.col(0);
  const Vec3 yb = pose.rotation.col(1);
  const Vec3 zb = pose.rotation.col(2);

  const double x = xb.dot(d);
  const double y = yb.dot(d);
  const double z = zb.dot(d);

  // derivative of the basis wrt yaw
  const Vec3 heading(std::cos(pose.yaw), std::sin(pose.yaw), 0.0);
  const Vec3 dheading(-std::sin(pose.yaw), std::cos(pose.yaw), 0.0);
  const Vec3 w = zb.cross(heading);
  const double wn = w.norm();
  const Vec3 dw = zb.cross(dheading);
  const Vec3 dyb = (dw - yb * yb.dot(dw)) / wn;
  const Vec3 dxb = dyb.cross(zb);

  const double dx = dxb.dot(d);
  const double dy = dyb.dot(d);

  const double rho2 = x * x + y * y;
  const double rho = std::sqrt(rho2);
  const double az = std::atan2(y, x);
  const double el = std::atan2(z, rho);
  const double daz = rho2 > 1e-18 ? (x * dy - y * dx) / rho2 : 0.0;
  const double drho = rho > 1e-9 ? (x * dx + y * dy) / rho : 0.0;
  const double del = (rho2 + z * z) > 1e-18 ? (-z * drho) / (rho2 + z * z) : 0.0;
  const double ddepth = dx;

  const double sgn_az = az > 0.0 ? 1.0 : (az < 0.0 ? -1.0 : 0.0);
  const double sgn_el = el > 0.0 ? 1.0 : (el < 0.0 ? -1.0 : 0.0);

  const double a1 = vp.k_angle * (cam.horiz_half_angle - std::abs(az));
  const double a2 = vp.k_angle * (cam.vert_half_angle - std::abs(el));
  const double a3 = vp.k_range * (cam.max_range - x);
  const double a4 = vp.k_range * (x - cam.min_range);

  const double s1 = sigmoid(a1), s2 = sigmoid(a2), s3 = sigmoid(a3), s4 = sigmoid(a4);
  const double v = s1 * s2 * s3 * s4;

  // d/dpsi log v = sum (1 - s_i) * da_i/dpsi
  const double dlog = (1.0 - s1) * (-vp.k_angle * sgn_az * daz) +
                      (1.0 - s2) * (-vp.k_angle * sgn_el * del) +
                      (1.0 - s3) * (-vp.k_range * ddepth) + (1.0 - s4) * (vp.k_range * ddepth);
  dv_dyaw = v * dlog;
  return v;
}

// Co-visibility of a feature from two poses.
inline double covis_measure(const Vec3& f, const FlatPose& pose_a, const FlatPose& pose_b,
                            const CameraModel& cam, const VisMetricParams& vp = {}) {
  return vis_metric(f, pose_a, cam, vp) * vis_metric(f, pose_b, cam, vp);
}

// Ids of features inside the frustum with a clear line of sight. Unknown
// voxels do not occlude: a mapped feature was co-observed with the space in
// front of it.
inline std::vector<int> visible_features(const FlatPose& pose, const CameraModel& cam,
                                         const FeatureMap& fmap, const VoxelGrid& grid) {
  std::vector<int> ids;
  for (const auto& f : fmap.features()) {
    if (!in_fov(pose, cam, f.position)) continue;
    if (grid.raycast_blocked(pose.position, f.position)) continue;
    ids.push_back(f.id);
  }
  return ids;
}

inline size_t count_visible_features(const FlatPose& pose, const CameraModel& cam,
                                     const FeatureMap& fmap, const VoxelGrid& grid) {
  size_t n = 0;
  for (const auto& f : fmap.features())
    if (in_fov(pose, cam, f.position) && !grid.raycast_blocked(pose.position, f.position)) ++n;
  return n;
}

}  // namespace lanav
