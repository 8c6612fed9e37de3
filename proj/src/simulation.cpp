#include "screwseg/simulation.hpp"

#include <cmath>
#include <random>

namespace screwseg {

namespace {

Mat3 rot_z(double angle) { return so3_exp(Vec3(0.0, 0.0, angle)); }
Mat3 rot_y(double angle) { return so3_exp(Vec3(0.0, angle, 0.0)); }

// Pure rotation about an axis through point c (body frame).
Pose rotation_about(const Mat3& R, const Vec3& c) {
  return Pose(R, (Mat3::Identity() - R) * c);
}

// Spout axis of the canonical objects: through this body point, along y.
const Vec3 kTiltAxisPoint(0.15, 0.0, 0.10);

bool is_slide(SubMotionKind kind) {
  return kind == SubMotionKind::kSlidePlus || kind == SubMotionKind::kSlideMinus;
}

}  // namespace

std::string to_string(SubMotionKind kind) {
  switch (kind) {
    case SubMotionKind::kSlidePlus: return "slide+";
    case SubMotionKind::kLiftPlus: return "lift+";
    case SubMotionKind::kTiltPlus: return "tilt+";
    case SubMotionKind::kTiltMinus: return "tilt-";
    case SubMotionKind::kLiftMinus: return "lift-";
    case SubMotionKind::kSlideMinus: return "slide-";
    case SubMotionKind::kDwell: return "dwell";
  }
  return "?";
}

SubMotionSpec SubMotionSpec::dwell(double duration) {
  SubMotionSpec s;
  s.kind = SubMotionKind::kDwell;
  s.duration = duration;
  s.displacement = Pose::Identity();
  return s;
}

SubMotionSpec SubMotionSpec::screw(SubMotionKind kind, double duration,
                                   const Pose& displacement) {
  SubMotionSpec s;
  s.kind = kind;
  s.duration = duration;
  s.displacement = displacement;
  return s;
}

Vec3 kettle_reference_point(int index) {
  switch (index) {
    case 1: return Vec3(0.17, 0.00, 0.12);   // near the spout
    case 2: return Vec3(0.12, 0.00, 0.14);   // near the handle
    case 3: return Vec3(0.09, 0.05, 0.05);   // near the center of mass
    default:
      throw std::invalid_argument("kettle_reference_point: index must be 1-3");
  }
}

std::vector<SubMotionSpec> canonical_plan(ObjectKind object) {
  const double tilt_angle =
      (object == ObjectKind::kKettle) ? 70.0 * M_PI / 180.0 : M_PI / 2.0;
  const Pose slide(Mat3::Identity(), Vec3(1.0, 0.0, 0.0));
  const Pose lift(rot_z(30.0 * M_PI / 180.0), Vec3(0.0, 0.0, 0.30));
  const Pose tilt = rotation_about(rot_y(tilt_angle), kTiltAxisPoint);
  const double dwell = 0.5;

  std::vector<SubMotionSpec> plan;
  plan.push_back(SubMotionSpec::screw(SubMotionKind::kSlidePlus, 3.0, slide));
  plan.push_back(SubMotionSpec::dwell(dwell));
  plan.push_back(SubMotionSpec::screw(SubMotionKind::kLiftPlus, 1.5, lift));
  plan.push_back(SubMotionSpec::dwell(dwell));
  plan.push_back(SubMotionSpec::screw(SubMotionKind::kTiltPlus, 1.5, tilt));
  plan.push_back(SubMotionSpec::dwell(dwell));
  plan.push_back(
      SubMotionSpec::screw(SubMotionKind::kTiltMinus, 1.5, tilt.inverse()));
  plan.push_back(SubMotionSpec::dwell(dwell));
  plan.push_back(
      SubMotionSpec::screw(SubMotionKind::kLiftMinus, 1.5, lift.inverse()));
  plan.push_back(SubMotionSpec::dwell(dwell));
  plan.push_back(
      SubMotionSpec::screw(SubMotionKind::kSlideMinus, 3.0, slide.inverse()));
  return plan;
}

double minimum_jerk(double tau) {
  tau = std::clamp(tau, 0.0, 1.0);
  const double t3 = tau * tau * tau;
  return t3 * (10.0 + tau * (-15.0 + 6.0 * tau));
}

SimulationResult simulate(const ScenarioConfig& scenario,
                          const std::vector<SubMotionSpec>& plan) {
  scenario.validate();
  if (plan.empty()) {
    throw std::invalid_argument("simulate: empty plan");
  }
  for (const SubMotionSpec& phase : plan) {
    if (!(phase.duration > 0.0)) {
      throw std::invalid_argument("simulate: phase duration must be positive");
    }
  }

  SimulationResult result;
  std::vector<double> phase_start(plan.size());
  std::vector<Pose> pose_at_start(plan.size());
  std::vector<Vec6> phase_xi(plan.size());
  double t0 = 0.0;
  Pose T = Pose::Identity();
  for (std::size_t k = 0; k < plan.size(); ++k) {
    phase_start[k] = t0;
    pose_at_start[k] = T;
    phase_xi[k] = se3_log(plan[k].displacement);
    GroundTruthPhase gt;
    gt.kind = plan[k].kind;
    gt.start_t = t0;
    gt.end_t = t0 + plan[k].duration;
    result.ground_truth.push_back(gt);
    t0 += plan[k].duration;
    T = T * plan[k].displacement;
  }
  const double total = t0;

  std::mt19937_64 rng(scenario.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double rot_std = scenario.noise_rot_std_deg * M_PI / 180.0;
  const double pos_std = scenario.noise_pos_std_mm * 1e-3;
  const Pose ref_offset(Mat3::Identity(), scenario.ref_point);

  const double dt = 1.0 / scenario.sample_rate;
  const auto n = static_cast<std::size_t>(std::floor(total / dt)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = std::min(static_cast<double>(i) * dt, total);
    // Locate the phase (last phase owns its end time).
    std::size_t k = plan.size() - 1;
    for (std::size_t j = 0; j < plan.size(); ++j) {
      if (t < phase_start[j] + plan[j].duration) {
        k = j;
        break;
      }
    }
    const double tau = (t - phase_start[k]) / plan[k].duration;
    const Pose T_obj =
        pose_at_start[k] * se3_exp(minimum_jerk(tau) * phase_xi[k]);
    result.object_noise_free.t.push_back(t);
    result.object_noise_free.poses.push_back(T_obj);

    Pose tracked = T_obj * ref_offset;
    const Vec3 rot_noise(gauss(rng), gauss(rng), gauss(rng));
    const Vec3 pos_noise(gauss(rng), gauss(rng), gauss(rng));
    if (!scenario.noise_slides_only || is_slide(plan[k].kind)) {
      tracked.R = tracked.R * so3_exp(rot_std * rot_noise);
      tracked.p += pos_std * pos_noise;
    }
    result.trajectory.t.push_back(t);
    result.trajectory.poses.push_back(tracked);
  }
  return result;
}

}  // namespace screwseg
