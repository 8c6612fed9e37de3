// Command-line front end: simulate pouring trials, smooth and
// reparameterize trajectories, learn primitive libraries, segment trials,
// and evaluate or compare the segmentation methods.
//
// Exit codes: 0 success, 2 usage or file-format error, 1 internal error.

#include <CLI11.hpp>
#include <iostream>
#include <memory>

#include "screwseg/io.hpp"

using namespace screwseg;

namespace {

ObjectKind parse_object(const std::string& name) {
  if (name == "kettle") return ObjectKind::kKettle;
  if (name == "bottle") return ObjectKind::kBottle;
  throw CLI::ValidationError("--object", "must be 'kettle' or 'bottle'");
}

char parse_method(const std::string& id) {
  if (id.size() != 1 || id[0] < 'A' || id[0] > 'G') {
    throw CLI::ValidationError("--method", "must be a letter A-G");
  }
  return id[0];
}

void add_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "simulate", "Generate a simulated pouring trial (trajectory CSV)");
  struct Opts {
    std::string object = "kettle";
    int kettle_point = 0;
    std::vector<double> ref_point;
    std::uint64_t seed = 0;
    double rate = 60.0;
    double noise_rot_deg = 2.0;
    double noise_pos_mm = 1.0;
    bool noise_slides_only = false;
    std::string out;
    std::string truth_out;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--object", opts->object, "Object: kettle or bottle")
      ->capture_default_str();
  cmd->add_option("--kettle-point", opts->kettle_point,
                  "Kettle reference point preset (1-3)")
      ->check(CLI::Range(1, 3));
  cmd->add_option("--ref-point", opts->ref_point,
                  "Body-frame reference point x y z [m]")
      ->expected(3);
  cmd->add_option("--seed", opts->seed, "Noise RNG seed")
      ->capture_default_str();
  cmd->add_option("--rate", opts->rate, "Sample rate [Hz]")
      ->capture_default_str();
  cmd->add_option("--noise-rot-deg", opts->noise_rot_deg,
                  "Orientation noise std [deg]")
      ->capture_default_str();
  cmd->add_option("--noise-pos-mm", opts->noise_pos_mm,
                  "Position noise std [mm]")
      ->capture_default_str();
  cmd->add_flag("--noise-slides-only", opts->noise_slides_only,
                "Add noise only during the slide phases");
  cmd->add_option("--out", opts->out, "Output trajectory CSV")->required();
  cmd->add_option("--truth-out", opts->truth_out,
                  "Optional ground-truth JSON output");
  cmd->callback([opts] {
    ScenarioConfig cfg;
    cfg.object = parse_object(opts->object);
    if (!opts->ref_point.empty()) {
      cfg.ref_point =
          Vec3(opts->ref_point[0], opts->ref_point[1], opts->ref_point[2]);
    } else if (opts->kettle_point > 0) {
      cfg.ref_point = kettle_reference_point(opts->kettle_point);
    }
    cfg.seed = opts->seed;
    cfg.sample_rate = opts->rate;
    cfg.noise_rot_std_deg = opts->noise_rot_deg;
    cfg.noise_pos_std_mm = opts->noise_pos_mm;
    cfg.noise_slides_only = opts->noise_slides_only;
    const SimulationResult res = simulate(cfg, canonical_plan(cfg.object));
    save_trajectory_csv(opts->out, res.trajectory);
    if (!opts->truth_out.empty()) {
      save_ground_truth_json(opts->truth_out, opts->object, res.ground_truth);
    }
  });
}

void add_smooth(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "smooth", "Kalman-smooth a trajectory (forward + backward pass)");
  struct Opts {
    std::string in, out;
    SmootherConfig cfg;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--in", opts->in, "Input trajectory CSV")->required();
  cmd->add_option("--out", opts->out, "Output trajectory CSV")->required();
  cmd->add_option("--pos-std", opts->cfg.meas_std_pos,
                  "Position measurement std [m]")
      ->capture_default_str();
  cmd->add_option("--rot-std", opts->cfg.meas_std_rot,
                  "Orientation measurement std [rad]")
      ->capture_default_str();
  cmd->add_option("--accel-std", opts->cfg.process_accel_std,
                  "Process acceleration std")
      ->capture_default_str();
  cmd->callback([opts] {
    save_trajectory_csv(opts->out,
                        smooth(load_trajectory_csv(opts->in), opts->cfg));
  });
}

void add_reparam(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "reparam",
      "Smooth and reparameterize a trajectory onto a method's progress grid");
  struct Opts {
    std::string in, method = "G";
    std::string geometric_out, profile_out;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--in", opts->in, "Input trajectory CSV")->required();
  cmd->add_option("--method", opts->method, "Method preset A-G")
      ->capture_default_str();
  cmd->add_option("--geometric-out", opts->geometric_out,
                  "Output geometric trajectory CSV");
  cmd->add_option("--profile-out", opts->profile_out,
                  "Output progress profile CSV");
  cmd->callback([opts] {
    const MethodConfig method = method_preset(parse_method(opts->method));
    const MethodRun run =
        prepare_trial(load_trajectory_csv(opts->in), method);
    if (!opts->geometric_out.empty()) {
      save_geometric_csv(opts->geometric_out, run.geometric);
    }
    if (!opts->profile_out.empty()) {
      save_profile_csv(opts->profile_out, run.profile);
    }
  });
}

void add_learn(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "learn", "Learn a primitive library from one or more trials");
  struct Opts {
    std::vector<std::string> in;
    std::string method = "G";
    std::string out;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--in", opts->in, "Input trajectory CSVs")->required();
  cmd->add_option("--method", opts->method, "Method preset A-G")
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output library JSON")->required();
  cmd->callback([opts] {
    const MethodConfig method = method_preset(parse_method(opts->method));
    std::vector<MethodRun> trials;
    for (const std::string& path : opts->in) {
      trials.push_back(prepare_trial(load_trajectory_csv(path), method));
    }
    save_library_json(opts->out, learn_from_trials(trials, method));
  });
}

void add_segment(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "segment", "Segment a trial against a learned library");
  struct Opts {
    std::string in, library, method = "G";
    std::string segments_out, geo_segments_out, labels_out;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--in", opts->in, "Input trajectory CSV")->required();
  cmd->add_option("--library", opts->library, "Library JSON")->required();
  cmd->add_option("--method", opts->method, "Method preset A-G")
      ->capture_default_str();
  cmd->add_option("--segments-out", opts->segments_out,
                  "Time-domain segments JSON");
  cmd->add_option("--geo-segments-out", opts->geo_segments_out,
                  "Progress-domain segments JSON");
  cmd->add_option("--labels-out", opts->labels_out,
                  "Per-geometric-sample labels CSV");
  cmd->callback([opts] {
    const MethodConfig method = method_preset(parse_method(opts->method));
    const ClusterLibrary library = load_library_json(opts->library);
    const MethodRun run =
        run_method(load_trajectory_csv(opts->in), method, &library);
    if (!opts->segments_out.empty()) {
      save_segments_json(opts->segments_out, opts->in, "time",
                         1.0, run.time_segments);
    }
    if (!opts->geo_segments_out.empty()) {
      save_segments_json(opts->geo_segments_out, opts->in, "progress",
                         library.params.ds, run.segments);
    }
    if (!opts->labels_out.empty()) {
      std::vector<double> coord(run.labels.size());
      for (std::size_t i = 0; i < coord.size(); ++i) {
        coord[i] = static_cast<double>(i) * library.params.ds;
      }
      save_labels_csv(opts->labels_out, coord, run.labels);
    }
  });
}

void add_evaluate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "evaluate",
      "Score time-domain segments of several trials against ground truth");
  struct Opts {
    std::vector<std::string> segments;
    std::vector<std::string> truth;
    std::string method = "G";
    std::string out;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--segments", opts->segments,
                  "Time-domain segments JSON, one per trial")
      ->required();
  cmd->add_option("--truth", opts->truth,
                  "Ground-truth JSON, one per trial")
      ->required();
  cmd->add_option("--method", opts->method, "Method id for the report")
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output report JSON")->required();
  cmd->callback([opts] {
    if (opts->segments.size() != opts->truth.size()) {
      throw CLI::ValidationError(
          "--segments/--truth", "need one segments file per truth file");
    }
    std::vector<std::vector<Segment>> segs;
    std::vector<std::vector<GroundTruthPhase>> truths;
    for (std::size_t i = 0; i < opts->segments.size(); ++i) {
      segs.push_back(load_segments_json(opts->segments[i]));
      truths.push_back(load_ground_truth_json(opts->truth[i]));
    }
    const EvaluationReport report = evaluate(segs, truths);
    save_report_json(opts->out, {{parse_method(opts->method), report}});
  });
}

void add_compare(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "compare",
      "Run several methods over simulated kettle trials (reference points "
      "1-3) and report detected/consistent sub-motions");
  struct Opts {
    std::string methods = "ABCDEFG";
    std::string object = "kettle";
    std::uint64_t seed = 0;
    std::string out;
  };
  auto opts = std::make_shared<Opts>();
  cmd->add_option("--methods", opts->methods, "Method ids to run (subset of A-G)")
      ->capture_default_str();
  cmd->add_option("--object", opts->object, "Object: kettle or bottle")
      ->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Base RNG seed")
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output report JSON")->required();
  cmd->callback([opts] {
    const ObjectKind object = parse_object(opts->object);
    std::vector<TimedTrajectory> trajectories;
    std::vector<std::vector<GroundTruthPhase>> truths;
    for (int point = 1; point <= 3; ++point) {
      ScenarioConfig cfg;
      cfg.object = object;
      cfg.ref_point = kettle_reference_point(point);
      cfg.seed = opts->seed + static_cast<std::uint64_t>(point);
      const SimulationResult res = simulate(cfg, canonical_plan(object));
      trajectories.push_back(res.trajectory);
      truths.push_back(res.ground_truth);
    }
    std::vector<std::pair<char, EvaluationReport>> reports;
    for (char id : opts->methods) {
      const MethodConfig method = method_preset(parse_method({id}));
      std::vector<MethodRun> trials;
      for (const TimedTrajectory& traj : trajectories) {
        trials.push_back(prepare_trial(traj, method));
      }
      const ClusterLibrary library = learn_from_trials(trials, method);
      std::vector<std::vector<Segment>> time_segments;
      for (MethodRun& run : trials) {
        segment_trial(run, library);
        time_segments.push_back(run.time_segments);
      }
      const EvaluationReport report = evaluate(time_segments, truths);
      std::cout << "method " << id << ": detected "
                << report.detected_submotions << "/6, consistent "
                << report.consistent_submotions << "/6\n";
      reports.emplace_back(id, report);
    }
    save_report_json(opts->out, reports);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screw-invariant trajectory segmentation toolkit"};
  app.require_subcommand(1);
  add_simulate(app);
  add_smooth(app);
  add_reparam(app);
  add_learn(app);
  add_segment(app);
  add_evaluate(app);
  add_compare(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
