// Stable file formats: trajectory/profile/label CSV, library, segments,
// ground-truth and report JSON. Quaternions (scalar-first) appear only
// here; everything internal is rotation matrices.

#ifndef SCREWSEG_IO_HPP
#define SCREWSEG_IO_HPP

#include <string>
#include <vector>

#include "screwseg/harness.hpp"

namespace screwseg {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kLibraryFileVersion = 1;

// --- trajectory CSV: header t,px,py,pz,qw,qx,qy,qz -------------------------
void save_trajectory_csv(const std::string& path, const TimedTrajectory& traj);
TimedTrajectory load_trajectory_csv(const std::string& path);

// --- geometric CSV: header s,px,py,pz,qw,qx,qy,qz (uniform s grid) ---------
void save_geometric_csv(const std::string& path,
                        const GeometricTrajectory& traj);
GeometricTrajectory load_geometric_csv(const std::string& path);

// --- progress profile CSV: header t,s,sdot ---------------------------------
void save_profile_csv(const std::string& path, const ProgressProfile& profile);
ProgressProfile load_profile_csv(const std::string& path);

// --- per-sample label CSV: header sample,s_or_t,label ----------------------
void save_labels_csv(const std::string& path,
                     const std::vector<double>& coordinate,
                     const std::vector<int>& labels);

// --- cluster library JSON ---------------------------------------------------
void save_library_json(const std::string& path, const ClusterLibrary& library);
ClusterLibrary load_library_json(const std::string& path);

// --- segments JSON ----------------------------------------------------------
void save_segments_json(const std::string& path, const std::string& trial_id,
                        const std::string& grid_kind, double step,
                        const std::vector<Segment>& segments);
std::vector<Segment> load_segments_json(const std::string& path,
                                        std::string* trial_id = nullptr,
                                        std::string* grid_kind = nullptr,
                                        double* step = nullptr);

// --- ground truth JSON -------------------------------------------------------
void save_ground_truth_json(const std::string& path,
                            const std::string& scenario,
                            const std::vector<GroundTruthPhase>& phases);
std::vector<GroundTruthPhase> load_ground_truth_json(const std::string& path);

// --- evaluation report JSON --------------------------------------------------
void save_report_json(const std::string& path,
                      const std::vector<std::pair<char, EvaluationReport>>&
                          reports_per_method);

}  // namespace screwseg

#endif  // SCREWSEG_IO_HPP
