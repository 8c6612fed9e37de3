#include "screwseg/se3.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace screwseg {

namespace {
constexpr double kSmallAngle = 1e-10;
constexpr double kNearPi = 1e-7;

void check_finite(const Vec3& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}
}  // namespace

void TimedTrajectory::validate() const {
  if (t.size() != poses.size()) {
    throw std::invalid_argument("TimedTrajectory: size mismatch");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw std::invalid_argument(
          "TimedTrajectory: timestamps must be strictly increasing");
    }
  }
}

void GeometricTrajectory::validate() const {
  if (ds <= 0.0) {
    throw std::invalid_argument("GeometricTrajectory: ds must be positive");
  }
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  return Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)) * 0.5;
}

void check_rotation(const Mat3& R, double tol) {
  if (!R.allFinite()) {
    throw std::invalid_argument("rotation: non-finite entries");
  }
  const Mat3 err = R.transpose() * R - Mat3::Identity();
  if (err.cwiseAbs().maxCoeff() > tol || std::abs(R.determinant() - 1.0) > tol) {
    throw std::invalid_argument("rotation: matrix is not in SO(3)");
  }
}

Mat3 project_to_rotation(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    Mat3 U = svd.matrixU();
    U.col(2) *= -1.0;
    R = U * svd.matrixV().transpose();
  }
  return R;
}

Mat3 so3_exp(const Vec3& rotvec) {
  check_finite(rotvec, "so3_exp");
  const double theta = rotvec.norm();
  if (theta < kSmallAngle) {
    return Mat3::Identity() + skew(rotvec);
  }
  const Mat3 K = skew(rotvec / theta);
  return Mat3::Identity() + std::sin(theta) * K +
         (1.0 - std::cos(theta)) * K * K;
}

Vec3 so3_log(const Mat3& R) {
  check_rotation(R);
  const double cos_theta =
      std::clamp((R.trace() - 1.0) * 0.5, -1.0, 1.0);
  const double theta = std::acos(cos_theta);

  if (theta < kSmallAngle) {
    return vee(R);
  }
  if (theta > M_PI - kNearPi) {
    // Near pi: R + I ~= 2 * axis * axis^T; take the strongest column.
    const Mat3 B = R + Mat3::Identity();
    int k = 0;
    B.diagonal().maxCoeff(&k);
    Vec3 axis = B.col(k).normalized();
    // Resolve the residual sign from the (small) skew part when available.
    const Vec3 w = vee(R);
    if (w.norm() > 1e-12 && axis.dot(w) < 0.0) {
      axis = -axis;
    }
    return theta * axis;
  }
  return theta / (2.0 * std::sin(theta)) * vee(R - R.transpose());
}

namespace {

// V(w) such that the translational part of exp([w, t]) equals V(w) * t.
Mat3 so3_left_jacobian(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 K = skew(w);
  if (theta < 1e-6) {
    return Mat3::Identity() + 0.5 * K + K * K / 6.0;
  }
  const double t2 = theta * theta;
  return Mat3::Identity() + (1.0 - std::cos(theta)) / t2 * K +
         (theta - std::sin(theta)) / (t2 * theta) * K * K;
}

Mat3 so3_left_jacobian_inverse(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 K = skew(w);
  if (theta < 1e-6) {
    return Mat3::Identity() - 0.5 * K + K * K / 12.0;
  }
  const double half = 0.5 * theta;
  const double cot_term = 1.0 / (theta * theta) -
                          (1.0 + std::cos(theta)) /
                              (2.0 * theta * std::sin(theta));
  return Mat3::Identity() - 0.5 * K + cot_term * K * K;
}

}  // namespace

Pose se3_exp(const Vec6& x) {
  if (!x.allFinite()) {
    throw std::invalid_argument("se3_exp: non-finite input");
  }
  const Vec3 w = x.head<3>();
  const Vec3 t = x.tail<3>();
  return Pose(so3_exp(w), so3_left_jacobian(w) * t);
}

Vec6 se3_log(const Pose& T) {
  const Vec3 w = so3_log(T.R);
  Vec6 x;
  x.head<3>() = w;
  x.tail<3>() = so3_left_jacobian_inverse(w) * T.p;
  return x;
}

Pose sclerp(const Pose& T0, const Pose& T1, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("sclerp: alpha must lie in [0, 1]");
  }
  if (alpha == 0.0) return T0;
  if (alpha == 1.0) return T1;
  const Vec6 xi = se3_log(T0.inverse() * T1);
  return T0 * se3_exp(alpha * xi);
}

TimedTrajectory change_frames(const TimedTrajectory& traj, const Pose& T_world,
                              const Pose& T_body) {
  traj.validate();
  TimedTrajectory out;
  out.t = traj.t;
  out.poses.reserve(traj.poses.size());
  for (const Pose& T : traj.poses) {
    out.poses.push_back(T_world * T * T_body);
  }
  return out;
}

}  // namespace screwseg
