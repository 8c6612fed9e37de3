// Micro-benchmark of the OpenMP kernels against their serial references:
// twist estimation, descriptor construction, and classification.

#include <chrono>
#include <iostream>
#include <random>

#include "screwseg/segmentation.hpp"
#include "screwseg/twist_estimation.hpp"

using namespace screwseg;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int reps) {
  // One warm-up run, then the best of `reps` timed runs.
  f();
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const std::string& name, double parallel_ms, double serial_ms) {
  std::cout << name << ": parallel " << parallel_ms << " ms, serial "
            << serial_ms << " ms, speedup " << serial_ms / parallel_ms
            << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 200000;
  if (argc > 1) n = std::stoul(argv[1]);
  const int reps = 5;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::cout << "samples: " << n << "\n";

  // Twist estimation over a long random-walk trajectory.
  std::vector<Pose> poses;
  std::vector<double> param;
  poses.reserve(n);
  Pose T = Pose::Identity();
  for (std::size_t i = 0; i < n; ++i) {
    Vec6 xi;
    xi << 0.002 * gauss(rng), 0.002 * gauss(rng), 0.002 * gauss(rng),
        0.005 * gauss(rng), 0.005 * gauss(rng), 0.005 * gauss(rng);
    T = T * se3_exp(xi);
    poses.push_back(T);
    param.push_back(0.01 * static_cast<double>(i));
  }
  std::vector<Twist> twists;
  const double twists_par = time_ms(
      [&] {
        twists = estimate_twists(std::span<const Pose>(poses),
                                 std::span<const double>(param));
      },
      reps);
  std::vector<Twist> twists_ref;
  const double twists_ser = time_ms(
      [&] {
        twists_ref = serial::estimate_twists(std::span<const Pose>(poses),
                                             std::span<const double>(param));
      },
      reps);
  for (std::size_t i = 0; i < n; ++i) {
    if ((twists[i].omega - twists_ref[i].omega).norm() != 0.0 ||
        (twists[i].v - twists_ref[i].v).norm() != 0.0) {
      std::cerr << "estimate_twists: parallel/serial mismatch at " << i
                << "\n";
      return 1;
    }
  }
  report("estimate_twists", twists_par, twists_ser);

  // Descriptor construction from random unit twists.
  std::vector<UnitTwist> unit_twists(n);
  for (auto& ut : unit_twists) {
    ut.w = Vec3(gauss(rng), gauss(rng), gauss(rng));
    ut.nu_tilde = Vec3(gauss(rng), gauss(rng), gauss(rng));
  }
  std::vector<ShapeDescriptor> descs, descs_ref;
  const double desc_par =
      time_ms([&] { descs = build_descriptors(unit_twists, 0.3); }, reps);
  const double desc_ser = time_ms(
      [&] { descs_ref = serial::build_descriptors(unit_twists, 0.3); }, reps);
  for (std::size_t i = 0; i < descs.size(); ++i) {
    if ((descs[i] - descs_ref[i]).cwiseAbs().maxCoeff() != 0.0) {
      std::cerr << "build_descriptors: parallel/serial mismatch at " << i
                << "\n";
      return 1;
    }
  }
  report("build_descriptors", desc_par, desc_ser);

  // Classification against a small library (classification cost dominates
  // in the pipeline because each probe solves several Procrustes problems).
  const std::size_t n_classify = std::max<std::size_t>(n / 40, 100);
  std::vector<ShapeDescriptor> probes(descs.begin(),
                                      descs.begin() + n_classify);
  ClusterLibrary library = learn_library(
      std::vector<ShapeDescriptor>(descs.begin(), descs.begin() + 50), 0.5,
      0.5, 2.0);
  std::vector<int> labels, labels_ref;
  const double cls_par =
      time_ms([&] { labels = classify_all(probes, library); }, reps);
  const double cls_ser =
      time_ms([&] { labels_ref = serial::classify_all(probes, library); },
              reps);
  if (labels != labels_ref) {
    std::cerr << "classify_all: parallel/serial mismatch\n";
    return 1;
  }
  report("classify_all", cls_par, cls_ser);
  return 0;
}
