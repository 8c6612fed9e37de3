// Self-supervised segmentation: incremental clustering of trajectory-shape
// descriptors into primitives, 1-nearest-neighbor labeling with a 3-sigma
// gate, segment formation, and mapping of segments back to the time domain.

#ifndef SCREWSEG_SEGMENTATION_HPP
#define SCREWSEG_SEGMENTATION_HPP

#include <optional>
#include <vector>

#include "screwseg/shape_descriptor.hpp"

namespace screwseg {

inline constexpr int kNonClassified = -1;
inline constexpr int kStationary = -2;

/// A learned trajectory-shape primitive with running statistics.
/// Incoming descriptors are rotation-aligned to the current mean before the
/// entrywise mean update, so the mean lives in the same rotation quotient
/// as the distance.
struct Cluster {
  ShapeDescriptor mean = ShapeDescriptor::Zero();
  int count = 0;
  double m2 = 0.0;        // sum of squared deviations from the mean
  double sigma0 = 0.0;    // initial std assigned at creation

  double sigma() const;
  void add(const ShapeDescriptor& descriptor);
};

struct LibraryParams {
  double L = 0.0;
  double ds = 0.0;
  double sigma_hat = 0.0;
  double beta_pct = 0.0;
};

struct ClusterLibrary {
  std::vector<Cluster> clusters;
  double sigma0 = 0.0;  // converged initial std
  LibraryParams params;
  bool converged = true;

  bool empty() const { return clusters.empty(); }
};

struct Segment {
  std::size_t start_index = 0;  // inclusive
  std::size_t end_index = 0;    // inclusive
  int label = kNonClassified;
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<double> start_t;
  std::optional<double> end_t;
};

struct LearnOptions {
  int max_outer_iterations = 25;
  double sigma0_rel_tol = 0.01;
};

/// Incremental clustering with sigma0 fixed-point iteration:
/// seed with the first descriptor, grow clusters under a 3-sigma gate
/// (each cluster gated by its own std, floored by sigma_hat), then update
/// sigma0 <- mean(sigma) + sigma_hat and recluster until sigma0 converges;
/// finally drop clusters holding < beta% of the samples.
ClusterLibrary learn_library(const std::vector<ShapeDescriptor>& descriptors,
                             double sigma0_init, double sigma_hat,
                             double beta_pct, const LearnOptions& opts = {});

/// 1-NN label: nearest cluster id if its shape distance is below the 3-sigma
/// gate, else kNonClassified. Ties break to the lower cluster id.
int classify(const ShapeDescriptor& descriptor, const ClusterLibrary& library);

std::vector<int> classify_all(const std::vector<ShapeDescriptor>& descriptors,
                              const ClusterLibrary& library);

namespace serial {
std::vector<int> classify_all(const std::vector<ShapeDescriptor>& descriptors,
                              const ClusterLibrary& library);
}  // namespace serial

/// Maximal runs of equal labels become segments covering all samples.
/// ds fills in the progress coordinates of the boundaries.
std::vector<Segment> segment_trajectory(const std::vector<int>& labels,
                                        double ds);

std::vector<Segment> segment_trajectory(
    const std::vector<ShapeDescriptor>& descriptors,
    const ClusterLibrary& library, double ds);

struct TimeMappingOptions {
  // A time sample is standstill when sdot < rel_threshold * max(sdot);
  // runs shorter than min_dwell_duration are not marked stationary.
  // Low enough that slow-but-real motion (e.g. a rotation about an axis
  // close to the tracked point, which progresses slowly under an arclength
  // rate) is not mistaken for standstill.
  double stationary_rel_threshold = 0.02;
  double min_dwell_duration = 0.1;  // [s]
};

/// Per-time-sample labels obtained by re-applying the motion profile s(t):
/// standstill samples get kStationary, the rest the label of the geometric
/// segment owning s(t_i).
std::vector<int> time_sample_labels(const std::vector<Segment>& segments,
                                    const ProgressProfile& profile, double ds,
                                    const TimeMappingOptions& opts = {});

/// Time-domain segments: geometric segments mapped through the inverse of
/// s(t), with STATIONARY segments inserted at the plateaus.
std::vector<Segment> map_segments_to_time(const std::vector<Segment>& segments,
                                          const ProgressProfile& profile,
                                          double ds,
                                          const TimeMappingOptions& opts = {});

}  // namespace screwseg

#endif  // SCREWSEG_SEGMENTATION_HPP
