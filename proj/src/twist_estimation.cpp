#include "screwseg/twist_estimation.hpp"

#include <stdexcept>

namespace screwseg {

namespace {

Twist twist_at(std::span<const Pose> poses, std::span<const double> param,
               std::ptrdiff_t i) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(poses.size());
  const std::ptrdiff_t lo = (i == 0) ? 0 : i - 1;
  const std::ptrdiff_t hi = (i == n - 1) ? n - 1 : i + 1;
  const double h = param[hi] - param[lo];
  const Vec3 rot_body =
      so3_log(poses[lo].R.transpose() * poses[hi].R) / h;
  Twist tw;
  tw.omega = poses[i].R * rot_body;
  tw.v = (poses[hi].p - poses[lo].p) / h;
  return tw;
}

}  // namespace

std::vector<Twist> estimate_twists(std::span<const Pose> poses,
                                   std::span<const double> param) {
  if (poses.size() != param.size()) {
    throw std::invalid_argument("estimate_twists: size mismatch");
  }
  if (poses.size() < 2) {
    throw std::invalid_argument("estimate_twists: need at least 2 samples");
  }
  for (std::size_t i = 1; i < param.size(); ++i) {
    if (!(param[i] > param[i - 1])) {
      throw std::invalid_argument(
          "estimate_twists: parameter must be strictly increasing");
    }
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(poses.size());
  std::vector<Twist> out(poses.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = twist_at(poses, param, i);
  }
  return out;
}

std::vector<Twist> estimate_twists(const TimedTrajectory& traj) {
  traj.validate();
  return estimate_twists(traj.poses, traj.t);
}

std::vector<Twist> estimate_twists(const GeometricTrajectory& traj) {
  traj.validate();
  std::vector<double> s(traj.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = traj.s(i);
  return estimate_twists(traj.poses, s);
}

namespace serial {

std::vector<Twist> estimate_twists(std::span<const Pose> poses,
                                   std::span<const double> param) {
  if (poses.size() != param.size() || poses.size() < 2) {
    throw std::invalid_argument("estimate_twists: bad input");
  }
  std::vector<Twist> out(poses.size());
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(poses.size());
       ++i) {
    out[i] = twist_at(poses, param, i);
  }
  return out;
}

}  // namespace serial

}  // namespace screwseg
