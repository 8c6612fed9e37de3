// Kalman smoothing of noisy rigid-body trajectories with a constant
// acceleration model: forward filter plus backward (RTS) pass per channel.
// Position channels are smoothed per axis; orientation is smoothed in the
// incremental rotation vectors between consecutive samples and then
// re-integrated.

#ifndef SCREWSEG_SMOOTHER_HPP
#define SCREWSEG_SMOOTHER_HPP

#include "screwseg/se3.hpp"

namespace screwseg {

struct SmootherConfig {
  double meas_std_pos = 0.001;                  // [m]
  double meas_std_rot = 2.0 * M_PI / 180.0;     // [rad]
  double process_accel_std = 5.0;               // [m/s^2, rad/s^2]

  void validate() const {
    if (!(meas_std_pos > 0.0 && meas_std_rot > 0.0 && process_accel_std > 0.0)) {
      throw std::invalid_argument("SmootherConfig: all fields must be positive");
    }
  }
};

/// RTS-smoothed copy of the trajectory; timestamps and sample count are
/// preserved exactly and output rotations are re-orthonormalized.
TimedTrajectory smooth(const TimedTrajectory& traj, const SmootherConfig& cfg);

/// Smooths one scalar channel (value, rate, acceleration state); exposed for
/// testing against the rigid-body wrapper.
std::vector<double> rts_smooth_channel(const std::vector<double>& t,
                                       const std::vector<double>& z,
                                       double meas_std, double accel_std);

}  // namespace screwseg

#endif  // SCREWSEG_SMOOTHER_HPP
