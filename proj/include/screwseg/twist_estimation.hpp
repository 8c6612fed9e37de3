// Pose-twist estimation by numerical differentiation with the matrix
// logarithm. The pose twist expresses omega and the velocity of the body
// origin in world-frame coordinates. The parameter may be time or progress;
// the twist units follow the parameter.

#ifndef SCREWSEG_TWIST_ESTIMATION_HPP
#define SCREWSEG_TWIST_ESTIMATION_HPP

#include <span>
#include <vector>

#include "screwseg/se3.hpp"

namespace screwseg {

struct Twist {
  Vec3 omega = Vec3::Zero();
  Vec3 v = Vec3::Zero();
};

/// One twist per sample. Interior samples use the central relative
/// displacement; endpoints use one-sided two-point differences.
/// omega_i = R_i * so3_log(R_{i-1}^T R_{i+1}) / (h_{i+1} - h_{i-1}),
/// v_i     = (p_{i+1} - p_{i-1}) / (h_{i+1} - h_{i-1}).
std::vector<Twist> estimate_twists(std::span<const Pose> poses,
                                   std::span<const double> param);

std::vector<Twist> estimate_twists(const TimedTrajectory& traj);
std::vector<Twist> estimate_twists(const GeometricTrajectory& traj);

namespace serial {
/// Plain single-threaded reference of the parallel kernel above.
std::vector<Twist> estimate_twists(std::span<const Pose> poses,
                                   std::span<const double> param);
}  // namespace serial

}  // namespace screwseg

#endif  // SCREWSEG_TWIST_ESTIMATION_HPP
