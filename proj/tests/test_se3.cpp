#include <doctest.h>

#include <random>

#include "screwseg/se3.hpp"

using namespace screwseg;

namespace {

// Independent Rodrigues evaluation, written out componentwise.
Mat3 rodrigues_oracle(const Vec3& r) {
  const double theta = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  Mat3 R = Mat3::Identity();
  if (theta == 0.0) return R;
  const double kx = r[0] / theta, ky = r[1] / theta, kz = r[2] / theta;
  const double c = std::cos(theta), s = std::sin(theta), v = 1.0 - c;
  R(0, 0) = c + kx * kx * v;
  R(0, 1) = kx * ky * v - kz * s;
  R(0, 2) = kx * kz * v + ky * s;
  R(1, 0) = ky * kx * v + kz * s;
  R(1, 1) = c + ky * ky * v;
  R(1, 2) = ky * kz * v - kx * s;
  R(2, 0) = kz * kx * v - ky * s;
  R(2, 1) = kz * ky * v + kx * s;
  R(2, 2) = c + kz * kz * v;
  return R;
}

Vec3 random_rotvec(std::mt19937_64& rng, double max_angle) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(1e-6, max_angle);
  Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
  axis.normalize();
  return uni(rng) * axis;
}

Pose random_pose(std::mt19937_64& rng, double max_angle = M_PI - 1e-3) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return Pose(so3_exp(random_rotvec(rng, max_angle)),
              Vec3(gauss(rng), gauss(rng), gauss(rng)));
}

}  // namespace

TEST_CASE("so3_exp basics") {
  CHECK((so3_exp(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);

  const Mat3 half_turn_z = so3_exp(Vec3(0, 0, M_PI));
  Mat3 expected;
  expected << -1, 0, 0, 0, -1, 0, 0, 0, 1;
  CHECK((half_turn_z - expected).cwiseAbs().maxCoeff() < 1e-12);

  const Vec3 r(0.3, -0.2, 0.1);
  CHECK((so3_exp(r) - rodrigues_oracle(r)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((so3_log(so3_exp(r)) - r).norm() < 1e-12);

  CHECK_THROWS_AS(so3_exp(Vec3(std::nan(""), 0, 0)), std::invalid_argument);
}

TEST_CASE("so3_log basics and pi branch") {
  CHECK(so3_log(Mat3::Identity()).norm() == 0.0);

  Mat3 half_turn_y;
  half_turn_y << -1, 0, 0, 0, 1, 0, 0, 0, -1;
  const Vec3 w = so3_log(half_turn_y);
  CHECK(std::abs(w.norm() - M_PI) < 1e-12);
  CHECK(std::abs(std::abs(w.y()) - M_PI) < 1e-12);

  // Near-pi angles exercise the symmetric-part branch.
  for (double angle : {M_PI - 1e-8, M_PI - 1e-10, M_PI}) {
    const Vec3 r = angle * Vec3(1, 2, 2).normalized();
    const Mat3 R = so3_exp(r);
    const Mat3 back = so3_exp(so3_log(R));
    CHECK((back - R).cwiseAbs().maxCoeff() < 1e-7);
  }

  Mat3 not_a_rotation = Mat3::Identity();
  not_a_rotation(0, 0) = 2.0;
  CHECK_THROWS_AS(so3_log(not_a_rotation), std::invalid_argument);
}

TEST_CASE("so3 exp/log round trip") {
  std::mt19937_64 rng(42);
  double max_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 w = random_rotvec(rng, M_PI - 1e-3);
    max_err = std::max(max_err, (so3_log(so3_exp(w)) - w).norm());
  }
  CHECK(max_err < 1e-10);
}

TEST_CASE("se3_log basics") {
  CHECK(se3_log(Pose::Identity()).norm() == 0.0);

  const Pose translation(Mat3::Identity(), Vec3(1, 2, 3));
  Vec6 expected;
  expected << 0, 0, 0, 1, 2, 3;
  CHECK((se3_log(translation) - expected).norm() < 1e-15);

  // 90 deg about z with p = (0,0,1): translation is along the rotation
  // axis, where the closed-form V-inverse acts as identity.
  const Pose screw(so3_exp(Vec3(0, 0, M_PI / 2)), Vec3(0, 0, 1));
  Vec6 expected_screw;
  expected_screw << 0, 0, M_PI / 2, 0, 0, 1;
  CHECK((se3_log(screw) - expected_screw).norm() < 1e-12);
}

TEST_CASE("se3 exp/log round trip") {
  std::mt19937_64 rng(7);
  CHECK(se3_exp(Vec6::Zero()).p.norm() == 0.0);
  double max_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Pose T = random_pose(rng);
    const Pose back = se3_exp(se3_log(T));
    max_err = std::max(max_err, (back.R - T.R).cwiseAbs().maxCoeff());
    max_err = std::max(max_err, (back.p - T.p).cwiseAbs().maxCoeff());
  }
  CHECK(max_err < 1e-9);
}

TEST_CASE("sclerp endpoints and midpoint") {
  std::mt19937_64 rng(3);
  const Pose T0 = random_pose(rng);
  const Pose T1 = random_pose(rng);
  CHECK((sclerp(T0, T1, 0.0).p - T0.p).norm() == 0.0);
  CHECK((sclerp(T0, T1, 1.0).p - T1.p).norm() == 0.0);

  const Pose target(so3_exp(Vec3(0, 0, M_PI / 2)), Vec3(0, 0, 1));
  const Pose mid = sclerp(Pose::Identity(), target, 0.5);
  CHECK((mid.R - so3_exp(Vec3(0, 0, M_PI / 4))).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((mid.p - Vec3(0, 0, 0.5)).norm() < 1e-12);

  const Pose shift(Mat3::Identity(), Vec3(2, 0, 0));
  CHECK((sclerp(Pose::Identity(), shift, 0.25).p - Vec3(0.5, 0, 0)).norm() <
        1e-14);

  CHECK_THROWS_AS(sclerp(T0, T1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(sclerp(T0, T1, -0.1), std::invalid_argument);
}

TEST_CASE("sclerp path consistency") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Pose T0 = random_pose(rng, 2.0);
    const Pose T1 = random_pose(rng, 2.0);
    const double beta = uni(rng);
    const double alpha = beta * uni(rng);
    const Pose direct = sclerp(T0, T1, alpha);
    const Pose via = sclerp(T0, sclerp(T0, T1, beta), alpha / beta);
    CHECK((direct.R - via.R).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((direct.p - via.p).norm() < 1e-9);
  }
}

TEST_CASE("change_frames") {
  std::mt19937_64 rng(19);
  TimedTrajectory traj;
  for (int i = 0; i < 8; ++i) {
    traj.t.push_back(0.1 * i);
    traj.poses.push_back(random_pose(rng));
  }

  SUBCASE("identity frames leave the input unchanged") {
    const TimedTrajectory out =
        change_frames(traj, Pose::Identity(), Pose::Identity());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      CHECK((out.poses[i].R - traj.poses[i].R).norm() == 0.0);
      CHECK((out.poses[i].p - traj.poses[i].p).norm() == 0.0);
    }
  }

  SUBCASE("single sample at identity composes X*Y") {
    TimedTrajectory single;
    single.t = {0.0};
    single.poses = {Pose::Identity()};
    const Pose X = random_pose(rng);
    const Pose Y = random_pose(rng);
    const TimedTrajectory out = change_frames(single, X, Y);
    const Pose expected = X * Y;
    CHECK((out.poses[0].R - expected.R).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((out.poses[0].p - expected.p).norm() < 1e-15);
  }

  SUBCASE("left change preserves body-frame relative poses") {
    const Pose X = random_pose(rng);
    const TimedTrajectory out = change_frames(traj, X, Pose::Identity());
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const Pose rel = traj.poses[i - 1].inverse() * traj.poses[i];
      const Pose rel_out = out.poses[i - 1].inverse() * out.poses[i];
      CHECK((rel.R - rel_out.R).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((rel.p - rel_out.p).norm() < 1e-12);
    }
  }

  SUBCASE("sample count and timestamps are preserved") {
    const Pose X = random_pose(rng);
    const Pose Y = random_pose(rng);
    const TimedTrajectory out = change_frames(traj, X, Y);
    REQUIRE(out.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) CHECK(out.t[i] == traj.t[i]);
  }
}
