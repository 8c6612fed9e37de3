#include "screwseg/screw_progress.hpp"

#include <algorithm>
#include <cmath>

namespace screwseg {

namespace {
// Threshold for the zero-omega branch of the regularization. The clamp
// makes the output continuous in omega near zero, so the exact value is
// insensitive; an exact-zero test fails under floating-point noise.
constexpr double kOmegaZero = 1e-10;
}  // namespace

Vec3 screw_axis_point(const Vec3& w, const Vec3& v) {
  const double n2 = w.squaredNorm();
  if (n2 == 0.0) {
    throw degenerate_twist_error("screw_axis_point: |w| = 0");
  }
  return w.cross(v) / n2;
}

ScrewState regularized_progress(const Vec3& w, const Vec3& v, double L) {
  if (!(L > 0.0)) {
    throw std::invalid_argument("regularized_progress: L must be positive");
  }
  ScrewState st;
  if (w.norm() < kOmegaZero) {
    st.p_tilde = Vec3::Zero();
    st.nu_tilde = v;
  } else {
    st.p_tilde = w.cross(v) / w.dot(w);
    const double norm = st.p_tilde.norm();
    if (norm > L) {
      st.p_tilde *= L / norm;
    }
    st.nu_tilde = v + w.cross(st.p_tilde);
  }
  st.sdot = std::sqrt(L * L * w.dot(w) + st.nu_tilde.dot(st.nu_tilde));
  return st;
}

ProgressProfile profile_from_rates(const std::vector<double>& t,
                                   const std::vector<double>& rates) {
  if (t.size() != rates.size() || t.size() < 2) {
    throw std::invalid_argument("profile_from_rates: bad input");
  }
  ProgressProfile prof;
  prof.t = t;
  prof.sdot = rates;
  prof.s.resize(t.size());
  prof.s[0] = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    prof.s[i] =
        prof.s[i - 1] + 0.5 * (rates[i] + rates[i - 1]) * (t[i] - t[i - 1]);
  }
  return prof;
}

ProgressProfile progress_profile(const TimedTrajectory& traj, double L) {
  if (traj.size() < 2) {
    throw trajectory_too_short_error(
        "progress_profile: need at least 2 samples");
  }
  const std::vector<Twist> twists = estimate_twists(traj);
  std::vector<double> rates(twists.size());
  for (std::size_t i = 0; i < twists.size(); ++i) {
    rates[i] = regularized_progress(twists[i].omega, twists[i].v, L).sdot;
  }
  return profile_from_rates(traj.t, rates);
}

GeometricTrajectory reparameterize(const TimedTrajectory& traj,
                                   const ProgressProfile& profile, double ds) {
  traj.validate();
  if (!(ds > 0.0)) {
    throw std::invalid_argument("reparameterize: ds must be positive");
  }
  if (traj.size() != profile.s.size()) {
    throw std::invalid_argument("reparameterize: profile size mismatch");
  }
  const double s_total = profile.total();
  if (s_total < 2.0 * ds) {
    throw trajectory_too_short_error(
        "reparameterize: total progress below 2*ds");
  }
  const auto m =
      static_cast<std::size_t>(std::floor(s_total / ds * (1.0 + 1e-12)));

  GeometricTrajectory out;
  out.ds = ds;
  out.poses.reserve(m + 1);
  const std::vector<double>& s = profile.s;
  for (std::size_t k = 0; k <= m; ++k) {
    const double target = std::min(static_cast<double>(k) * ds, s_total);
    // Last index with s[j] <= target; plateaus are skipped to their end.
    auto it = std::upper_bound(s.begin(), s.end(), target);
    std::size_t j = static_cast<std::size_t>(it - s.begin());
    j = (j == 0) ? 0 : j - 1;
    if (j >= s.size() - 1) {
      out.poses.push_back(traj.poses.back());
      continue;
    }
    const double span = s[j + 1] - s[j];
    const double alpha = span > 0.0 ? std::clamp((target - s[j]) / span, 0.0, 1.0) : 0.0;
    out.poses.push_back(sclerp(traj.poses[j], traj.poses[j + 1], alpha));
  }
  return out;
}

std::vector<UnitTwist> geometric_twists(const GeometricTrajectory& gtraj,
                                        double L) {
  if (gtraj.size() < 3) {
    throw std::invalid_argument("geometric_twists: need at least 3 samples");
  }
  const std::vector<Twist> twists = estimate_twists(gtraj);
  std::vector<UnitTwist> out(twists.size());
  for (std::size_t i = 0; i < twists.size(); ++i) {
    const ScrewState st = regularized_progress(twists[i].omega, twists[i].v, L);
    if (st.sdot < 1e-12) {
      throw degenerate_twist_error("geometric_twists: degenerate sample");
    }
    out[i].w = twists[i].omega / st.sdot;
    out[i].nu_tilde = st.nu_tilde / st.sdot;
  }
  return out;
}

}  // namespace screwseg
