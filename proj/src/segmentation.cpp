#include "screwseg/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace screwseg {

namespace {
constexpr double kSigmaFloorAbs = 1e-12;

// Gating std of a cluster: its own sigma (sigma0 while it is a singleton),
// floored by the process-noise parameter sigma_hat so that a cluster whose
// incremental sigma undershoots the data noise keeps a usable gate. The
// converged sigma0 must not enter here: it would widen every gate in lock
// step and let the outer iteration merge distinct primitives.
double gate_sigma(const Cluster& c, double sigma_hat) {
  return std::max({c.sigma(), sigma_hat, kSigmaFloorAbs});
}

// Nearest cluster by shape distance; ties go to the lower id.
std::pair<int, double> nearest_cluster(const ShapeDescriptor& S,
                                       const std::vector<Cluster>& clusters) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    const double d = shape_distance(S, clusters[j].mean);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(j);
    }
  }
  return {best, best_d};
}
}  // namespace

double Cluster::sigma() const {
  if (count <= 1) return sigma0;
  return std::sqrt(m2 / static_cast<double>(count));
}

void Cluster::add(const ShapeDescriptor& descriptor) {
  const ShapeDescriptor aligned = align(descriptor, mean) * descriptor;
  ++count;
  const ShapeDescriptor delta = aligned - mean;
  mean += delta / static_cast<double>(count);
  const ShapeDescriptor delta2 = aligned - mean;
  m2 += (delta.array() * delta2.array()).sum();
}

ClusterLibrary learn_library(const std::vector<ShapeDescriptor>& descriptors,
                             double sigma0_init, double sigma_hat,
                             double beta_pct, const LearnOptions& opts) {
  if (descriptors.empty()) {
    throw std::invalid_argument("learn_library: empty descriptor list");
  }
  if (!(sigma0_init > 0.0)) {
    throw std::invalid_argument("learn_library: sigma0_init must be positive");
  }
  if (sigma_hat < 0.0) {
    throw std::invalid_argument("learn_library: sigma_hat must be non-negative");
  }
  if (!(beta_pct > 0.0 && beta_pct < 100.0)) {
    throw std::invalid_argument("learn_library: beta must be in (0, 100)");
  }

  ClusterLibrary lib;
  lib.params.sigma_hat = sigma_hat;
  lib.params.beta_pct = beta_pct;

  double sigma0 = sigma0_init;
  bool converged = false;
  std::vector<Cluster> clusters;

  for (int iter = 0; iter < opts.max_outer_iterations; ++iter) {
    clusters.clear();
    for (const ShapeDescriptor& S : descriptors) {
      if (clusters.empty()) {
        clusters.push_back(Cluster{S, 1, 0.0, sigma0});
        continue;
      }
      const auto [best, d] = nearest_cluster(S, clusters);
      if (d < 3.0 * gate_sigma(clusters[best], sigma_hat)) {
        clusters[static_cast<std::size_t>(best)].add(S);
      } else {
        clusters.push_back(Cluster{S, 1, 0.0, sigma0});
      }
    }
    double sigma_bar = 0.0;
    for (const Cluster& c : clusters) sigma_bar += c.sigma();
    sigma_bar /= static_cast<double>(clusters.size());
    const double sigma0_next = sigma_bar + sigma_hat;
    if (std::abs(sigma0_next - sigma0) / sigma0 < opts.sigma0_rel_tol) {
      sigma0 = sigma0_next;
      converged = true;
      break;
    }
    sigma0 = sigma0_next;
  }

  // Outlier removal: keep clusters representing at least beta% of the data.
  const double min_count =
      beta_pct / 100.0 * static_cast<double>(descriptors.size());
  for (const Cluster& c : clusters) {
    if (static_cast<double>(c.count) >= min_count) {
      lib.clusters.push_back(c);
    }
  }
  lib.sigma0 = sigma0;
  lib.converged = converged;
  return lib;
}

int classify(const ShapeDescriptor& descriptor,
             const ClusterLibrary& library) {
  if (library.empty()) {
    throw std::invalid_argument("classify: empty library");
  }
  const auto [best, d] = nearest_cluster(descriptor, library.clusters);
  if (d < 3.0 * gate_sigma(library.clusters[static_cast<std::size_t>(best)],
                           library.params.sigma_hat)) {
    return best;
  }
  return kNonClassified;
}

std::vector<int> classify_all(const std::vector<ShapeDescriptor>& descriptors,
                              const ClusterLibrary& library) {
  if (library.empty()) {
    throw std::invalid_argument("classify_all: empty library");
  }
  std::vector<int> labels(descriptors.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(descriptors.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    labels[i] = classify(descriptors[i], library);
  }
  return labels;
}

namespace serial {
std::vector<int> classify_all(const std::vector<ShapeDescriptor>& descriptors,
                              const ClusterLibrary& library) {
  std::vector<int> labels;
  labels.reserve(descriptors.size());
  for (const ShapeDescriptor& S : descriptors) {
    labels.push_back(classify(S, library));
  }
  return labels;
}
}  // namespace serial

std::vector<Segment> segment_trajectory(const std::vector<int>& labels,
                                        double ds) {
  if (labels.empty()) {
    throw std::invalid_argument("segment_trajectory: empty label list");
  }
  std::vector<Segment> segments;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= labels.size(); ++i) {
    if (i == labels.size() || labels[i] != labels[start]) {
      Segment seg;
      seg.start_index = start;
      seg.end_index = i - 1;
      seg.label = labels[start];
      seg.start_s = static_cast<double>(start) * ds;
      seg.end_s = static_cast<double>(i - 1) * ds;
      segments.push_back(seg);
      start = i;
    }
  }
  return segments;
}

std::vector<Segment> segment_trajectory(
    const std::vector<ShapeDescriptor>& descriptors,
    const ClusterLibrary& library, double ds) {
  return segment_trajectory(classify_all(descriptors, library), ds);
}

std::vector<int> time_sample_labels(const std::vector<Segment>& segments,
                                    const ProgressProfile& profile, double ds,
                                    const TimeMappingOptions& opts) {
  if (segments.empty() || profile.s.empty()) {
    throw std::invalid_argument("time_sample_labels: empty input");
  }
  const std::size_t n_geo = segments.back().end_index + 1;
  if (segments.back().end_s > profile.total() + ds) {
    throw std::invalid_argument(
        "time_sample_labels: segments exceed the profile range");
  }
  // Label per geometric grid index.
  std::vector<int> geo_labels(n_geo, kNonClassified);
  for (const Segment& seg : segments) {
    for (std::size_t i = seg.start_index; i <= seg.end_index; ++i) {
      geo_labels[i] = seg.label;
    }
  }

  const double sdot_max =
      *std::max_element(profile.sdot.begin(), profile.sdot.end());
  const double threshold = opts.stationary_rel_threshold * sdot_max;

  const std::size_t n_t = profile.t.size();
  std::vector<bool> stationary(n_t, false);
  std::size_t run_start = 0;
  for (std::size_t i = 0; i <= n_t; ++i) {
    const bool below = i < n_t && profile.sdot[i] < threshold;
    if (!below) {
      if (i > run_start &&
          profile.t[i - 1] - profile.t[run_start] >= opts.min_dwell_duration) {
        for (std::size_t j = run_start; j < i; ++j) stationary[j] = true;
      }
      run_start = i + 1;
    }
  }

  std::vector<int> labels(n_t);
  for (std::size_t i = 0; i < n_t; ++i) {
    if (stationary[i]) {
      labels[i] = kStationary;
      continue;
    }
    auto k = static_cast<std::ptrdiff_t>(std::llround(profile.s[i] / ds));
    k = std::clamp<std::ptrdiff_t>(k, 0,
                                   static_cast<std::ptrdiff_t>(n_geo) - 1);
    labels[i] = geo_labels[static_cast<std::size_t>(k)];
  }
  return labels;
}

std::vector<Segment> map_segments_to_time(const std::vector<Segment>& segments,
                                          const ProgressProfile& profile,
                                          double ds,
                                          const TimeMappingOptions& opts) {
  const std::vector<int> labels =
      time_sample_labels(segments, profile, ds, opts);
  std::vector<Segment> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= labels.size(); ++i) {
    if (i == labels.size() || labels[i] != labels[start]) {
      Segment seg;
      seg.start_index = start;
      seg.end_index = i - 1;
      seg.label = labels[start];
      seg.start_t = profile.t[start];
      seg.end_t = profile.t[i - 1];
      seg.start_s = profile.s[start];
      seg.end_s = profile.s[i - 1];
      out.push_back(seg);
      start = i;
    }
  }
  return out;
}

}  // namespace screwseg
