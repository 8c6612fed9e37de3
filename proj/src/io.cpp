#include "screwseg/io.hpp"

#include <Eigen/Geometry>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace screwseg {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << std::setprecision(17);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open for reading");
  return in;
}

std::vector<double> parse_row(const std::string& path, const std::string& line,
                              std::size_t row, std::size_t expected) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw io_error(path + ": row " + std::to_string(row) + ": field '" +
                     field + "' is not a number");
    }
  }
  if (values.size() != expected) {
    throw io_error(path + ": row " + std::to_string(row) + ": expected " +
                   std::to_string(expected) + " fields, got " +
                   std::to_string(values.size()));
  }
  return values;
}

void expect_header(const std::string& path, std::ifstream& in,
                   const std::string& expected) {
  std::string header;
  if (!std::getline(in, header) || header != expected) {
    throw io_error(path + ": row 1: expected header '" + expected + "'");
  }
}

void write_pose_fields(std::ofstream& out, const Pose& pose) {
  const Eigen::Quaterniond q(pose.R);
  out << ',' << pose.p.x() << ',' << pose.p.y() << ',' << pose.p.z() << ','
      << q.w() << ',' << q.x() << ',' << q.y() << ',' << q.z() << '\n';
}

Pose pose_from_row(const std::string& path, const std::vector<double>& row,
                   std::size_t row_number) {
  Eigen::Quaterniond q(row[4], row[5], row[6], row[7]);
  if (std::abs(q.norm() - 1.0) > 1e-6) {
    throw io_error(path + ": row " + std::to_string(row_number) +
                   ": field qw..qz: quaternion norm deviates from 1");
  }
  q.normalize();
  return Pose(q.toRotationMatrix(), Vec3(row[1], row[2], row[3]));
}

json load_json(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error(path + ": invalid JSON: " + e.what());
  }
  return j;
}

}  // namespace

void save_trajectory_csv(const std::string& path,
                         const TimedTrajectory& traj) {
  std::ofstream out = open_out(path);
  out << "t,px,py,pz,qw,qx,qy,qz\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << traj.t[i];
    write_pose_fields(out, traj.poses[i]);
  }
}

TimedTrajectory load_trajectory_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(path, in, "t,px,py,pz,qw,qx,qy,qz");
  TimedTrajectory traj;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const std::vector<double> v = parse_row(path, line, row, 8);
    if (!traj.t.empty() && v[0] <= traj.t.back()) {
      throw io_error(path + ": row " + std::to_string(row) +
                     ": field t: timestamps must be strictly increasing");
    }
    traj.t.push_back(v[0]);
    traj.poses.push_back(pose_from_row(path, v, row));
  }
  return traj;
}

void save_geometric_csv(const std::string& path,
                        const GeometricTrajectory& traj) {
  std::ofstream out = open_out(path);
  out << "s,px,py,pz,qw,qx,qy,qz\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << traj.s(i);
    write_pose_fields(out, traj.poses[i]);
  }
}

GeometricTrajectory load_geometric_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(path, in, "s,px,py,pz,qw,qx,qy,qz");
  GeometricTrajectory traj;
  std::vector<double> s;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const std::vector<double> v = parse_row(path, line, row, 8);
    s.push_back(v[0]);
    traj.poses.push_back(pose_from_row(path, v, row));
  }
  if (s.size() < 2) throw io_error(path + ": needs at least 2 samples");
  traj.ds = s[1] - s[0];
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expected = static_cast<double>(i) * traj.ds;
    if (std::abs(s[i] - expected) >
        1e-12 * std::max(1.0, std::abs(expected))) {
      throw io_error(path + ": row " + std::to_string(i + 2) +
                     ": field s: progress grid is not uniform");
    }
  }
  return traj;
}

void save_profile_csv(const std::string& path,
                      const ProgressProfile& profile) {
  std::ofstream out = open_out(path);
  out << "t,s,sdot\n";
  for (std::size_t i = 0; i < profile.t.size(); ++i) {
    out << profile.t[i] << ',' << profile.s[i] << ',' << profile.sdot[i]
        << '\n';
  }
}

ProgressProfile load_profile_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(path, in, "t,s,sdot");
  ProgressProfile profile;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const std::vector<double> v = parse_row(path, line, row, 3);
    profile.t.push_back(v[0]);
    profile.s.push_back(v[1]);
    profile.sdot.push_back(v[2]);
  }
  return profile;
}

void save_labels_csv(const std::string& path,
                     const std::vector<double>& coordinate,
                     const std::vector<int>& labels) {
  if (coordinate.size() != labels.size()) {
    throw io_error(path + ": coordinate/label size mismatch");
  }
  std::ofstream out = open_out(path);
  out << "sample,s_or_t,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << ',' << coordinate[i] << ',' << labels[i] << '\n';
  }
}

void save_library_json(const std::string& path,
                       const ClusterLibrary& library) {
  json j;
  j["version"] = kLibraryFileVersion;
  j["params"] = {{"L_m", library.params.L},
                 {"ds_m", library.params.ds},
                 {"sigma_hat_m", library.params.sigma_hat},
                 {"beta_pct", library.params.beta_pct}};
  j["sigma0_m"] = library.sigma0;
  j["converged"] = library.converged;
  j["clusters"] = json::array();
  for (std::size_t i = 0; i < library.clusters.size(); ++i) {
    const Cluster& c = library.clusters[i];
    std::vector<double> mean(18);
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 6; ++col) mean[r * 6 + col] = c.mean(r, col);
    j["clusters"].push_back({{"id", i},
                             {"mean", mean},
                             {"sigma_m", c.sigma()},
                             {"count", c.count}});
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

ClusterLibrary load_library_json(const std::string& path) {
  const json j = load_json(path);
  try {
    if (!j.contains("version")) {
      throw io_error(path + ": missing version field");
    }
    if (j.at("version").get<int>() != kLibraryFileVersion) {
      throw io_error(path + ": unsupported library version");
    }
    ClusterLibrary lib;
    const json& p = j.at("params");
    lib.params.L = p.at("L_m").get<double>();
    lib.params.ds = p.at("ds_m").get<double>();
    lib.params.sigma_hat = p.at("sigma_hat_m").get<double>();
    lib.params.beta_pct = p.at("beta_pct").get<double>();
    lib.sigma0 = j.at("sigma0_m").get<double>();
    lib.converged = j.value("converged", true);
    for (const json& cj : j.at("clusters")) {
      const auto mean = cj.at("mean").get<std::vector<double>>();
      if (mean.size() != 18) {
        throw io_error(path + ": cluster mean must hold 18 numbers");
      }
      Cluster c;
      for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 6; ++col) c.mean(r, col) = mean[r * 6 + col];
      c.count = cj.at("count").get<int>();
      const double sigma = cj.at("sigma_m").get<double>();
      c.m2 = sigma * sigma * std::max(c.count, 1);
      c.sigma0 = sigma;
      lib.clusters.push_back(c);
    }
    return lib;
  } catch (const json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
}

void save_segments_json(const std::string& path, const std::string& trial_id,
                        const std::string& grid_kind, double step,
                        const std::vector<Segment>& segments) {
  json j;
  j["trial_id"] = trial_id;
  j["grid"] = {{"kind", grid_kind}, {"step", step}};
  j["segments"] = json::array();
  for (const Segment& seg : segments) {
    json sj = {{"start", seg.start_index},
               {"end", seg.end_index},
               {"label", seg.label},
               {"start_s", seg.start_s},
               {"end_s", seg.end_s}};
    if (seg.start_t) sj["start_t"] = *seg.start_t;
    if (seg.end_t) sj["end_t"] = *seg.end_t;
    j["segments"].push_back(sj);
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

std::vector<Segment> load_segments_json(const std::string& path,
                                        std::string* trial_id,
                                        std::string* grid_kind, double* step) {
  const json j = load_json(path);
  try {
    if (trial_id) *trial_id = j.at("trial_id").get<std::string>();
    if (grid_kind) *grid_kind = j.at("grid").at("kind").get<std::string>();
    if (step) *step = j.at("grid").at("step").get<double>();
    std::vector<Segment> segments;
    for (const json& sj : j.at("segments")) {
      Segment seg;
      seg.start_index = sj.at("start").get<std::size_t>();
      seg.end_index = sj.at("end").get<std::size_t>();
      seg.label = sj.at("label").get<int>();
      seg.start_s = sj.value("start_s", 0.0);
      seg.end_s = sj.value("end_s", 0.0);
      if (sj.contains("start_t")) seg.start_t = sj.at("start_t").get<double>();
      if (sj.contains("end_t")) seg.end_t = sj.at("end_t").get<double>();
      segments.push_back(seg);
    }
    return segments;
  } catch (const json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
}

void save_ground_truth_json(const std::string& path,
                            const std::string& scenario,
                            const std::vector<GroundTruthPhase>& phases) {
  json j;
  j["scenario"] = scenario;
  j["phases"] = json::array();
  for (const GroundTruthPhase& phase : phases) {
    j["phases"].push_back({{"label", to_string(phase.kind)},
                           {"start_t", phase.start_t},
                           {"end_t", phase.end_t}});
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

std::vector<GroundTruthPhase> load_ground_truth_json(const std::string& path) {
  const json j = load_json(path);
  try {
    std::vector<GroundTruthPhase> phases;
    for (const json& pj : j.at("phases")) {
      GroundTruthPhase phase;
      const std::string label = pj.at("label").get<std::string>();
      bool known = false;
      for (int k = 0; k < 7; ++k) {
        const auto kind = static_cast<SubMotionKind>(k);
        if (to_string(kind) == label) {
          phase.kind = kind;
          known = true;
          break;
        }
      }
      if (!known) {
        throw io_error(path + ": unknown sub-motion label '" + label + "'");
      }
      phase.start_t = pj.at("start_t").get<double>();
      phase.end_t = pj.at("end_t").get<double>();
      phases.push_back(phase);
    }
    return phases;
  } catch (const json::exception& e) {
    throw io_error(path + ": " + e.what());
  }
}

void save_report_json(
    const std::string& path,
    const std::vector<std::pair<char, EvaluationReport>>& reports_per_method) {
  json j;
  j["methods"] = json::array();
  for (const auto& [id, report] : reports_per_method) {
    json mj;
    mj["method"] = std::string(1, id);
    mj["detected_submotions"] = report.detected_submotions;
    mj["consistent_submotions"] = report.consistent_submotions;
    mj["per_submotion"] = json::array();
    for (const SubMotionOutcome& outcome : report.per_submotion) {
      mj["per_submotion"].push_back({{"submotion", to_string(outcome.kind)},
                                     {"detected", outcome.detected},
                                     {"consistent", outcome.consistent},
                                     {"labels", outcome.labels}});
    }
    j["methods"].push_back(mj);
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace screwseg
