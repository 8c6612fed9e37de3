// Ground-truth pouring-motion generator: kettle and bottle scenarios built
// from constant-screw sub-motions with minimum-jerk time scaling,
// configurable body reference points, and additive sensor noise.

#ifndef SCREWSEG_SIMULATION_HPP
#define SCREWSEG_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "screwseg/se3.hpp"

namespace screwseg {

enum class SubMotionKind {
  kSlidePlus,
  kLiftPlus,
  kTiltPlus,
  kTiltMinus,
  kLiftMinus,
  kSlideMinus,
  kDwell,
};

std::string to_string(SubMotionKind kind);

struct SubMotionSpec {
  SubMotionKind kind = SubMotionKind::kDwell;
  double duration = 0.5;      // [s]
  Pose displacement;          // body-frame displacement over the sub-motion

  static SubMotionSpec dwell(double duration);
  static SubMotionSpec screw(SubMotionKind kind, double duration,
                             const Pose& displacement);
};

enum class ObjectKind { kKettle, kBottle };

struct ScenarioConfig {
  ObjectKind object = ObjectKind::kKettle;
  Vec3 ref_point = Vec3::Zero();     // body-frame offset [m]
  double noise_rot_std_deg = 2.0;
  double noise_pos_std_mm = 1.0;
  double sample_rate = 60.0;         // [Hz]
  std::uint64_t seed = 0;
  bool noise_slides_only = false;    // restrict noise to the slide phases

  void validate() const {
    if (!(sample_rate > 0.0)) {
      throw std::invalid_argument("ScenarioConfig: sample_rate must be positive");
    }
  }
};

struct GroundTruthPhase {
  SubMotionKind kind = SubMotionKind::kDwell;
  double start_t = 0.0;
  double end_t = 0.0;
};

struct SimulationResult {
  TimedTrajectory trajectory;   // tracked reference-point trajectory
  TimedTrajectory object_noise_free;  // noiseless object-frame trajectory
  std::vector<GroundTruthPhase> ground_truth;
};

/// Body-frame presets for the kettle reference points P1 (spout),
/// P2 (handle), P3 (center of mass).
Vec3 kettle_reference_point(int index);

/// The repository's canonical pouring plan for the given object: slide,
/// lift with reorientation, tilt about the spout axis, mirrored returns,
/// with dwells between the phases.
std::vector<SubMotionSpec> canonical_plan(ObjectKind object);

/// Concatenates the sub-motions with minimum-jerk scalar time profiles.
/// The returned trajectory tracks the configured reference point: position
/// is the reference point's world position, orientation the object's.
SimulationResult simulate(const ScenarioConfig& scenario,
                          const std::vector<SubMotionSpec>& plan);

/// Minimum-jerk scalar profile: 0 -> 1 on tau in [0, 1] with zero velocity
/// and acceleration at both ends.
double minimum_jerk(double tau);

}  // namespace screwseg

#endif  // SCREWSEG_SIMULATION_HPP
