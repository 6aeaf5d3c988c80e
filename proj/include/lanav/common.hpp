#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace lanav {

using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kGravity = 9.81;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
  ConfigError,
  DegenerateThrust,
  DegenerateFit,
  NoPathFound,
  NoReachableTarget,
  EmptyLayer,
  NoLocalizablePath,
  InfeasibleResult,
  OptimizerDiverged,
  OutOfDomain,
  DomainError,
  TrajectoryExhausted,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DegenerateThrust: return "DegenerateThrust";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NoPathFound: return "NoPathFound";
    case ErrorCode::NoReachableTarget: return "NoReachableTarget";
    case ErrorCode::EmptyLayer: return "EmptyLayer";
    case ErrorCode::NoLocalizablePath: return "NoLocalizablePath";
    case ErrorCode::InfeasibleResult: return "InfeasibleResult";
    case ErrorCode::OptimizerDiverged: return "OptimizerDiverged";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TrajectoryExhausted: return "TrajectoryExhausted";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// Wrap an angle to (-pi, pi].
inline double wrap_pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  if (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

// Absolute angular difference in [0, pi].
inline double ang_dist(double a, double b) { return std::abs(wrap_pi(a - b)); }

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double sq(double x) { return x * x; }

// Deterministic RNG used for every sampling decision in the planner and
// simulator. std::mt19937_64 has a fixed bit stream; the helpers below avoid
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(splitmix(seed)) {}

  uint64_t next_u64() {
    // xorshift128+ style step on splitmix-expanded state
    uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  uint64_t uniform_int(uint64_t n) { return next_u64() % n; }

  // Derive an independent stream, e.g. one per batch run.
  static uint64_t derive(uint64_t base, uint64_t index) {
    return splitmix(base + 0x9E3779B97F4A7C15ULL * (index + 1));
  }

private:
  static uint64_t splitmix(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  uint64_t state_;
};

}  // namespace lanav
