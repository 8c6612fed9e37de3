#include "screwseg/smoother.hpp"

#include <Eigen/Dense>

namespace screwseg {

namespace {

using Mat3d = Eigen::Matrix3d;
using Vec3d = Eigen::Vector3d;

Mat3d transition(double dt) {
  Mat3d F = Mat3d::Identity();
  F(0, 1) = dt;
  F(0, 2) = 0.5 * dt * dt;
  F(1, 2) = dt;
  return F;
}

// Discrete white-noise acceleration model.
Mat3d process_noise(double dt, double q) {
  const double d2 = dt * dt;
  Mat3d Q;
  Q << d2 * d2 / 4.0, d2 * dt / 2.0, d2 / 2.0,
       d2 * dt / 2.0, d2,            dt,
       d2 / 2.0,      dt,            1.0;
  return q * q * Q;
}

}  // namespace

std::vector<double> rts_smooth_channel(const std::vector<double>& t,
                                       const std::vector<double>& z,
                                       double meas_std, double accel_std) {
  const std::size_t n = z.size();
  if (n < 3 || t.size() != n) {
    throw std::invalid_argument("rts_smooth_channel: need at least 3 samples");
  }
  const double r = meas_std * meas_std;
  const Eigen::RowVector3d H(1.0, 0.0, 0.0);

  std::vector<Vec3d> x_pred(n), x_filt(n);
  std::vector<Mat3d> P_pred(n), P_filt(n);

  // Initialize the state from the first three measurements so that data
  // exactly following the model produces zero innovations from the start.
  const double dt0 = t[1] - t[0];
  const double dt1 = t[2] - t[1];
  Vec3d x;
  x(2) = 2.0 * ((z[2] - z[1]) / dt1 - (z[1] - z[0]) / dt0) / (dt0 + dt1);
  x(1) = (z[1] - z[0]) / dt0 - 0.5 * x(2) * dt0;
  x(0) = z[0];
  Mat3d P = Mat3d::Zero();
  P(0, 0) = r;
  P(1, 1) = 6.0 * r / (dt0 * dt0);
  P(2, 2) = 36.0 * r / (dt0 * dt0 * dt0 * dt0);

  x_pred[0] = x;
  P_pred[0] = P;
  {
    const double s = (H * P * H.transpose())(0) + r;
    const Vec3d K = P * H.transpose() / s;
    x_filt[0] = x + K * (z[0] - x(0));
    P_filt[0] = (Mat3d::Identity() - K * H) * P;
  }

  for (std::size_t i = 1; i < n; ++i) {
    const double dt = t[i] - t[i - 1];
    const Mat3d F = transition(dt);
    x_pred[i] = F * x_filt[i - 1];
    P_pred[i] = F * P_filt[i - 1] * F.transpose() + process_noise(dt, accel_std);
    const double s = (H * P_pred[i] * H.transpose())(0) + r;
    const Vec3d K = P_pred[i] * H.transpose() / s;
    x_filt[i] = x_pred[i] + K * (z[i] - x_pred[i](0));
    P_filt[i] = (Mat3d::Identity() - K * H) * P_pred[i];
  }

  // Backward RTS pass.
  std::vector<Vec3d> x_smooth(n);
  x_smooth[n - 1] = x_filt[n - 1];
  Mat3d P_smooth = P_filt[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    const double dt = t[i + 1] - t[i];
    const Mat3d F = transition(dt);
    const Mat3d C = P_filt[i] * F.transpose() * P_pred[i + 1].inverse();
    x_smooth[i] = x_filt[i] + C * (x_smooth[i + 1] - x_pred[i + 1]);
    P_smooth = P_filt[i] + C * (P_smooth - P_pred[i + 1]) * C.transpose();
  }

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x_smooth[i](0);
  return out;
}

TimedTrajectory smooth(const TimedTrajectory& traj, const SmootherConfig& cfg) {
  traj.validate();
  cfg.validate();
  const std::size_t n = traj.size();
  if (n < 3) {
    throw std::invalid_argument("smooth: need at least 3 samples");
  }

  TimedTrajectory out;
  out.t = traj.t;
  out.poses.resize(n);

  // Position: three independent channels.
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = traj.poses[i].p(axis);
    const std::vector<double> s =
        rts_smooth_channel(traj.t, z, cfg.meas_std_pos, cfg.process_accel_std);
    for (std::size_t i = 0; i < n; ++i) out.poses[i].p(axis) = s[i];
  }

  // Orientation: per-axis components of the incremental rotation vectors
  // log(R_{i-1}^T R_i). Increments are small, so linear filtering applies.
  // Each increment mixes two measurement noises, hence the sqrt(2).
  std::vector<Vec3> increments(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    increments[i] = so3_log(traj.poses[i].R.transpose() * traj.poses[i + 1].R);
  }
  std::vector<double> t_mid(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t_mid[i] = 0.5 * (traj.t[i] + traj.t[i + 1]);
  }
  std::vector<Vec3> smoothed(n - 1, Vec3::Zero());
  if (n - 1 >= 3) {
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> z(n - 1);
      for (std::size_t i = 0; i + 1 < n; ++i) z[i] = increments[i](axis);
      const std::vector<double> s =
          rts_smooth_channel(t_mid, z, std::sqrt(2.0) * cfg.meas_std_rot,
                             cfg.process_accel_std);
      for (std::size_t i = 0; i + 1 < n; ++i) smoothed[i](axis) = s[i];
    }
  } else {
    smoothed.assign(increments.begin(), increments.end());
  }

  out.poses[0].R = project_to_rotation(traj.poses[0].R);
  for (std::size_t i = 1; i < n; ++i) {
    out.poses[i].R =
        project_to_rotation(out.poses[i - 1].R * so3_exp(smoothed[i - 1]));
  }
  return out;
}

}  // namespace screwseg
