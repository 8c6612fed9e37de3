// Instantaneous-screw-axis geometry, the regularized geometric progress
// rate, cumulative progress, and reparameterization of a timed trajectory
// onto a uniform progress grid.

#ifndef SCREWSEG_SCREW_PROGRESS_HPP
#define SCREWSEG_SCREW_PROGRESS_HPP

#include <vector>

#include "screwseg/se3.hpp"
#include "screwseg/twist_estimation.hpp"

namespace screwseg {

struct degenerate_twist_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct trajectory_too_short_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Regularized screw decomposition at one sample: clamped closest ISA
/// point p_tilde, regularized translational velocity nu_tilde, and the
/// progress rate sdot = sqrt(L^2 |w|^2 + |nu_tilde|^2).
struct ScrewState {
  Vec3 p_tilde = Vec3::Zero();
  Vec3 nu_tilde = Vec3::Zero();
  double sdot = 0.0;
};

/// Cumulative progress along a timed trajectory: (t, s, sdot) per sample,
/// with s non-decreasing and s(t0) = 0.
struct ProgressProfile {
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> sdot;

  double total() const { return s.empty() ? 0.0 : s.back(); }
};

/// Vector from the body origin to the closest point on the ISA,
/// p_perp = (w x v) / |w|^2. Degenerate when |w| = 0.
Vec3 screw_axis_point(const Vec3& w, const Vec3& v);

/// Regularized progress rate with the clamp radius b fixed to L.
ScrewState regularized_progress(const Vec3& w, const Vec3& v, double L);

/// sdot per sample via twist estimation, s by trapezoidal integration.
ProgressProfile progress_profile(const TimedTrajectory& traj, double L);

/// Builds a profile from externally supplied per-sample rates (used by the
/// method-comparison harness where the rate formula varies).
ProgressProfile profile_from_rates(const std::vector<double>& t,
                                   const std::vector<double>& rates);

/// Resamples the trajectory at s = 0, ds, 2*ds, ... <= s_total using the
/// monotone s(t) map and screw linear interpolation between the bracketing
/// time samples. Plateaus of s(t) (standstill) collapse.
GeometricTrajectory reparameterize(const TimedTrajectory& traj,
                                   const ProgressProfile& profile, double ds);

/// Twist pair on the unit-speed trajectory. Both vectors are jointly scaled
/// by 1/sdot(s) so that L^2 |w|^2 + |nu_tilde|^2 = 1 at every sample.
struct UnitTwist {
  Vec3 w = Vec3::Zero();        // [rad/m]
  Vec3 nu_tilde = Vec3::Zero(); // [m/m]
};

std::vector<UnitTwist> geometric_twists(const GeometricTrajectory& gtraj,
                                        double L);

}  // namespace screwseg

#endif  // SCREWSEG_SCREW_PROGRESS_HPP
