// Method comparison harness: the seven progress-rate definitions A-G,
// the shared smoothing/reparameterization/descriptor/segmentation pipeline,
// and the detected/consistent sub-motion metrics.

#ifndef SCREWSEG_HARNESS_HPP
#define SCREWSEG_HARNESS_HPP

#include <map>
#include <string>
#include <vector>

#include "screwseg/segmentation.hpp"
#include "screwseg/simulation.hpp"
#include "screwseg/smoother.hpp"

namespace screwseg {

enum class ProgressKind {
  kTime,               // A
  kArclength,          // B, C
  kAngle,              // D
  kCombined,           // E
  kScrewUnregularized, // F
  kScrewRegularized,   // G
};

struct MethodConfig {
  char id = 'G';
  ProgressKind progress_kind = ProgressKind::kScrewRegularized;
  double L = 0.30;         // [m]
  double ds = 0.02;        // [m], [rad] for D, [s] for A
  double sigma_hat = 0.10; // descriptor units
  double beta_pct = 5.0;
};

/// The seven presets of the comparison table ('A' through 'G').
MethodConfig method_preset(char id);

/// Smoother setting used by the segmentation pipeline. Much stronger than
/// the general-purpose SmootherConfig default: progress rates integrate the
/// twist noise, so residual jitter (especially rotational) during slides and
/// dwells would otherwise accumulate spurious progress.
SmootherConfig pipeline_smoother();

/// Progress rate of a method for one twist. Method F uses the unregularized
/// parallel velocity with the removable-singularity convention nu = v at
/// exactly |w| = 0; near-zero w is deliberately not clamped.
double progress_rate_for(const MethodConfig& method, const Vec3& w,
                         const Vec3& v);

/// Everything one trial produces on its way through a method's pipeline.
struct MethodRun {
  ProgressProfile profile;
  GeometricTrajectory geometric;
  std::vector<ShapeDescriptor> descriptors;
  std::vector<int> labels;                // per descriptor (geometric grid)
  std::vector<Segment> segments;          // in the progress domain
  std::vector<Segment> time_segments;     // mapped back to time
};

/// smooth -> reparameterize by the method's rate -> descriptors.
/// Method A stays in the time domain with a fixed time step and raw
/// unnormalized (w, v) descriptor columns.
MethodRun prepare_trial(const TimedTrajectory& traj, const MethodConfig& method,
                        const SmootherConfig& smoother_cfg = pipeline_smoother());

/// Learns a library from the concatenated descriptors of several prepared
/// trials (sigma0 initialized at sigma_hat).
ClusterLibrary learn_from_trials(const std::vector<MethodRun>& trials,
                                 const MethodConfig& method);

/// Full per-trial pipeline. When library is null a library is learned from
/// this trial alone.
MethodRun run_method(const TimedTrajectory& traj, const MethodConfig& method,
                     const ClusterLibrary* library = nullptr,
                     const SmootherConfig& smoother_cfg = pipeline_smoother());

/// Fills labels/segments/time_segments of a prepared trial from a library.
void segment_trial(MethodRun& run, const ClusterLibrary& library);

struct SubMotionOutcome {
  SubMotionKind kind = SubMotionKind::kDwell;
  bool detected = false;       // in every trial
  bool consistent = false;     // detected with the same label in every trial
  std::vector<int> labels;     // best-overlap label per trial (-1 if none)
};

struct EvaluationReport {
  int detected_submotions = 0;    // of 6
  int consistent_submotions = 0;  // of 6
  std::vector<SubMotionOutcome> per_submotion;
};

/// A sub-motion counts as detected when, in every trial, a single classified
/// time-domain segment overlaps at least half of the sub-motion's duration;
/// it is consistent when those segments carry the same primitive label
/// across all trials.
EvaluationReport evaluate(
    const std::vector<std::vector<Segment>>& time_segments_per_trial,
    const std::vector<std::vector<GroundTruthPhase>>& truth_per_trial);

/// Classified labels in order with consecutive repeats collapsed and
/// non-classified/stationary entries dropped. Time-domain segments shorter
/// than min_duration are ignored as classification blips (same temporal
/// resolution floor as the stationary detection).
std::vector<int> condensed_label_sequence(
    const std::vector<Segment>& segments,
    double min_duration = TimeMappingOptions{}.min_dwell_duration);

/// Renames labels by first occurrence so sequences from independently
/// learned libraries can be compared structurally.
std::vector<int> canonical_sequence(std::vector<int> seq);

}  // namespace screwseg

#endif  // SCREWSEG_HARNESS_HPP
