#include "screwseg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace screwseg {

MethodConfig method_preset(char id) {
  MethodConfig m;
  m.id = id;
  switch (id) {
    case 'A':
      m.progress_kind = ProgressKind::kTime;
      m.L = 0.0;
      m.ds = 0.1;           // [s]
      m.sigma_hat = 0.10;   // [m/s]
      m.beta_pct = 2.0;
      break;
    case 'B':
      m.progress_kind = ProgressKind::kArclength;
      m.L = 0.0;
      m.ds = 0.02;
      m.sigma_hat = 0.02;
      m.beta_pct = 5.0;
      break;
    case 'C':
      m.progress_kind = ProgressKind::kArclength;
      m.L = 0.30;
      m.ds = 0.02;
      m.sigma_hat = 0.10;
      m.beta_pct = 5.0;
      break;
    case 'D':
      m.progress_kind = ProgressKind::kAngle;
      m.L = 0.30;
      m.ds = 3.0 * M_PI / 180.0;  // [rad]
      m.sigma_hat = 0.10;
      m.beta_pct = 5.0;
      break;
    case 'E':
      m.progress_kind = ProgressKind::kCombined;
      m.L = 0.30;
      m.ds = 0.02;
      m.sigma_hat = 0.10;
      m.beta_pct = 5.0;
      break;
    case 'F':
      m.progress_kind = ProgressKind::kScrewUnregularized;
      m.L = 0.30;
      m.ds = 0.02;
      m.sigma_hat = 0.10;
      m.beta_pct = 5.0;
      break;
    case 'G':
      m.progress_kind = ProgressKind::kScrewRegularized;
      m.L = 0.30;
      m.ds = 0.02;
      m.sigma_hat = 0.10;
      m.beta_pct = 5.0;
      break;
    default:
      throw std::invalid_argument("method_preset: id must be one of A-G");
  }
  return m;
}

SmootherConfig pipeline_smoother() {
  SmootherConfig cfg;
  cfg.process_accel_std = 0.05;
  return cfg;
}

namespace {

// Unregularized translational velocity parallel to the ISA (method F).
Vec3 nu_unregularized(const Vec3& w, const Vec3& v) {
  if (w.norm() == 0.0) return v;
  return v + w.cross(w.cross(v) / w.dot(w));
}

// Velocity column of the shape descriptor for one method.
Vec3 velocity_column(const MethodConfig& m, const Vec3& w, const Vec3& v) {
  switch (m.progress_kind) {
    case ProgressKind::kScrewRegularized:
      return regularized_progress(w, v, m.L).nu_tilde;
    case ProgressKind::kScrewUnregularized:
      return nu_unregularized(w, v);
    default:
      return v;
  }
}

}  // namespace

double progress_rate_for(const MethodConfig& method, const Vec3& w,
                         const Vec3& v) {
  switch (method.progress_kind) {
    case ProgressKind::kTime:
      return 1.0;
    case ProgressKind::kArclength:
      return v.norm();
    case ProgressKind::kAngle:
      return w.norm();
    case ProgressKind::kCombined:
      return std::sqrt(method.L * method.L * w.squaredNorm() + v.squaredNorm());
    case ProgressKind::kScrewUnregularized:
      return method.L * w.norm() + nu_unregularized(w, v).norm();
    case ProgressKind::kScrewRegularized:
      return regularized_progress(w, v, method.L).sdot;
  }
  return 0.0;
}

MethodRun prepare_trial(const TimedTrajectory& traj, const MethodConfig& method,
                        const SmootherConfig& smoother_cfg) {
  if (traj.size() < 4) {
    throw std::invalid_argument("prepare_trial: need at least 4 samples");
  }
  const TimedTrajectory smoothed = smooth(traj, smoother_cfg);

  MethodRun run;
  const std::vector<Twist> twists = estimate_twists(smoothed);
  std::vector<double> rates(twists.size());
  for (std::size_t i = 0; i < twists.size(); ++i) {
    rates[i] = progress_rate_for(method, twists[i].omega, twists[i].v);
  }
  run.profile = profile_from_rates(smoothed.t, rates);
  run.geometric = reparameterize(smoothed, run.profile, method.ds);

  const std::vector<Twist> gtwists = estimate_twists(run.geometric);
  std::vector<std::pair<Vec3, Vec3>> columns(gtwists.size());
  const bool normalize = method.progress_kind != ProgressKind::kTime;
  for (std::size_t i = 0; i < gtwists.size(); ++i) {
    const Vec3& w = gtwists[i].omega;
    const Vec3& v = gtwists[i].v;
    double r = 1.0;
    if (normalize) {
      // The recomputed rate is ~1 on the grid by construction; the division
      // enforces the method's unit-speed property exactly.
      r = std::max(progress_rate_for(method, w, v), 1e-12);
    }
    columns[i] = {w / r, velocity_column(method, w, v) / r};
  }
  run.descriptors = build_descriptors_raw(columns, method.L);
  return run;
}

ClusterLibrary learn_from_trials(const std::vector<MethodRun>& trials,
                                 const MethodConfig& method) {
  std::vector<ShapeDescriptor> all;
  for (const MethodRun& trial : trials) {
    all.insert(all.end(), trial.descriptors.begin(), trial.descriptors.end());
  }
  ClusterLibrary lib =
      learn_library(all, method.sigma_hat, method.sigma_hat, method.beta_pct);
  lib.params.L = method.L;
  lib.params.ds = method.ds;
  return lib;
}

void segment_trial(MethodRun& run, const ClusterLibrary& library) {
  run.labels = classify_all(run.descriptors, library);
  run.segments = segment_trajectory(run.labels, library.params.ds);
  run.time_segments =
      map_segments_to_time(run.segments, run.profile, library.params.ds);
}

MethodRun run_method(const TimedTrajectory& traj, const MethodConfig& method,
                     const ClusterLibrary* library,
                     const SmootherConfig& smoother_cfg) {
  MethodRun run = prepare_trial(traj, method, smoother_cfg);
  ClusterLibrary learned;
  if (library == nullptr) {
    learned = learn_from_trials({run}, method);
    library = &learned;
  }
  segment_trial(run, *library);
  return run;
}

namespace {

constexpr SubMotionKind kMotions[6] = {
    SubMotionKind::kSlidePlus, SubMotionKind::kLiftPlus,
    SubMotionKind::kTiltPlus,  SubMotionKind::kTiltMinus,
    SubMotionKind::kLiftMinus, SubMotionKind::kSlideMinus,
};

// Best-overlapping classified segment for a ground-truth interval;
// returns its label, or kNonClassified when no single segment covers at
// least half of the interval.
int best_overlap_label(const std::vector<Segment>& segments, double start_t,
                       double end_t) {
  const double duration = end_t - start_t;
  double best = 0.0;
  int label = kNonClassified;
  for (const Segment& seg : segments) {
    if (seg.label < 0 || !seg.start_t || !seg.end_t) continue;
    const double overlap =
        std::min(end_t, *seg.end_t) - std::max(start_t, *seg.start_t);
    if (overlap > best) {
      best = overlap;
      label = seg.label;
    }
  }
  return (best >= 0.5 * duration) ? label : kNonClassified;
}

}  // namespace

EvaluationReport evaluate(
    const std::vector<std::vector<Segment>>& time_segments_per_trial,
    const std::vector<std::vector<GroundTruthPhase>>& truth_per_trial) {
  if (time_segments_per_trial.size() != truth_per_trial.size() ||
      time_segments_per_trial.empty()) {
    throw std::invalid_argument("evaluate: trial count mismatch");
  }
  EvaluationReport report;
  for (SubMotionKind kind : kMotions) {
    SubMotionOutcome outcome;
    outcome.kind = kind;
    outcome.detected = true;
    for (std::size_t trial = 0; trial < truth_per_trial.size(); ++trial) {
      int label = kNonClassified;
      for (const GroundTruthPhase& phase : truth_per_trial[trial]) {
        if (phase.kind != kind) continue;
        label = best_overlap_label(time_segments_per_trial[trial],
                                   phase.start_t, phase.end_t);
        break;
      }
      outcome.labels.push_back(label);
      if (label == kNonClassified) outcome.detected = false;
    }
    outcome.consistent =
        outcome.detected &&
        std::all_of(outcome.labels.begin(), outcome.labels.end(),
                    [&](int l) { return l == outcome.labels.front(); });
    report.detected_submotions += outcome.detected ? 1 : 0;
    report.consistent_submotions += outcome.consistent ? 1 : 0;
    report.per_submotion.push_back(std::move(outcome));
  }
  return report;
}

std::vector<int> condensed_label_sequence(const std::vector<Segment>& segments,
                                          double min_duration) {
  std::vector<int> seq;
  for (const Segment& seg : segments) {
    if (seg.label < 0) continue;
    if (seg.start_t && seg.end_t && *seg.end_t - *seg.start_t < min_duration) {
      continue;  // classification blips below the temporal resolution floor
    }
    if (seq.empty() || seq.back() != seg.label) seq.push_back(seg.label);
  }
  return seq;
}

std::vector<int> canonical_sequence(std::vector<int> seq) {
  std::map<int, int> renames;
  for (int& label : seq) {
    auto [it, inserted] =
        renames.try_emplace(label, static_cast<int>(renames.size()));
    label = it->second;
  }
  return seq;
}

}  // namespace screwseg
