// SO(3)/SE(3) primitives: exponential and logarithm maps, screw linear
// interpolation, and frame changes. Everything here is a pure function;
// rotations are plain 3x3 matrices (quaternions appear only at file I/O).

#ifndef SCREWSEG_SE3_HPP
#define SCREWSEG_SE3_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>
#include <stdexcept>
#include <vector>

namespace screwseg {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;

/// A pose in SE(3): rotation of the body frame plus position of its origin,
/// both relative to the world frame.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 p = Vec3::Zero();

  Pose() = default;
  Pose(const Mat3& rotation, const Vec3& position) : R(rotation), p(position) {}

  Pose operator*(const Pose& other) const {
    return Pose(R * other.R, R * other.p + p);
  }

  Pose inverse() const { return Pose(R.transpose(), -(R.transpose() * p)); }

  static Pose Identity() { return Pose(); }
};

/// Trajectory sampled in time. Timestamps must be strictly increasing.
struct TimedTrajectory {
  std::vector<double> t;
  std::vector<Pose> poses;

  std::size_t size() const { return t.size(); }
  void validate() const;
};

/// Trajectory sampled on a uniform progress grid s = 0, ds, 2*ds, ...
struct GeometricTrajectory {
  double ds = 0.0;
  std::vector<Pose> poses;

  std::size_t size() const { return poses.size(); }
  double s(std::size_t i) const { return static_cast<double>(i) * ds; }
  void validate() const;
};

Mat3 skew(const Vec3& v);
Vec3 vee(const Mat3& m);

/// Rodrigues rotation from a rotation vector (axis * angle).
Mat3 so3_exp(const Vec3& rotvec);

/// Rotation vector with angle in [0, pi]. Near pi the axis is extracted
/// from the symmetric part of R, where the sine-based formula degenerates.
Vec3 so3_log(const Mat3& R);

/// Exponential of a 6-vector (rotational part first, translational second).
Pose se3_exp(const Vec6& x);

/// Inverse of se3_exp; rotational part equals so3_log of the rotation.
Vec6 se3_log(const Pose& T);

/// Screw linear interpolation: T0 * exp(alpha * log(T0^-1 * T1)).
Pose sclerp(const Pose& T0, const Pose& T1, double alpha);

/// Left- and right-multiplies every sample: T -> T_world * T * T_body.
TimedTrajectory change_frames(const TimedTrajectory& traj, const Pose& T_world,
                              const Pose& T_body);

/// Nearest rotation matrix in the Frobenius sense (used at ingestion only).
Mat3 project_to_rotation(const Mat3& M);

/// Throws std::invalid_argument when R is not orthogonal with det +1.
void check_rotation(const Mat3& R, double tol = 1e-6);

}  // namespace screwseg

#endif  // SCREWSEG_SE3_HPP
