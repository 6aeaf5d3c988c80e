#pragma once

#include "lanav/common.hpp"

#include <unordered_set>
#include <vector>

namespace lanav {

struct Feature {
  int id = -1;
  Vec3 position = Vec3::Zero();
};

// All currently identified landmark points, ordered by id.
class FeatureMap {
public:
  bool contains(int id) const { return ids_.count(id) > 0; }

  void insert(int id, const Vec3& position) {
    if (!position.allFinite()) throw Error(ErrorCode::ConfigError, "feature position not finite");
    if (!ids_.insert(id).second) return;
    features_.push_back({id, position});
  }

  const std::vector<Feature>& features() const { return features_; }
  size_t size() const { return features_.size(); }

private:
  std::vector<Feature> features_;
  std::unordered_set<int> ids_;
};

struct FeatureCluster {
  int id = -1;
  std::vector<int> member_ids;  // sorted
  Vec3 centroid = Vec3::Zero();
};

// Single-linkage agglomerative clustering: features closer than d_cluster are
// merged transitively. Clusters smaller than min_members are dropped; they
// cannot sustain localization on their own. Cluster ids are assigned by the
// smallest member feature id, so the result is independent of insertion order.
inline std::vector<FeatureCluster> cluster_features(const FeatureMap& fmap, double d_cluster,
                                                    int min_members) {
  const auto& feats = fmap.features();
  const int n = static_cast<int>(feats.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double d2 = d_cluster * d_cluster;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((feats[i].position - feats[j].position).squaredNorm() <= d2) {
        const int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<FeatureCluster> out;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(groups[r].size()) < min_members || groups[r].empty()) continue;
    FeatureCluster c;
    Vec3 sum = Vec3::Zero();
    for (int i : groups[r]) {
      c.member_ids.push_back(feats[i].id);
      sum += feats[i].position;
    }
    std::sort(c.member_ids.begin(), c.member_ids.end());
    c.centroid = sum / double(groups[r].size());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const FeatureCluster& a, const FeatureCluster& b) {
    return a.member_ids.front() < b.member_ids.front();
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

}  // namespace lanav
