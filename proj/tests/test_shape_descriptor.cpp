#include <doctest.h>

#include <random>

#include "screwseg/shape_descriptor.hpp"

using namespace screwseg;

namespace {

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
  axis.normalize();
  std::uniform_real_distribution<double> angle(0.0, M_PI - 1e-3);
  return so3_exp(angle(rng) * axis);
}

ShapeDescriptor random_descriptor(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ShapeDescriptor S;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 6; ++c) S(r, c) = gauss(rng);
  return S;
}

// Brute-force near-optimal alignment over a dense rotation sample; used to
// cross-check the closed-form Procrustes solution.
double brute_force_distance(const ShapeDescriptor& S1,
                            const ShapeDescriptor& S2) {
  std::mt19937_64 rng(99);
  double best = (S1 - S2).norm();
  for (int i = 0; i < 200000; ++i) {
    const Mat3 R = random_rotation(rng);
    best = std::min(best, (R * S1 - S2).norm());
  }
  return best;
}

}  // namespace

TEST_CASE("build_descriptors layout and count") {
  std::vector<UnitTwist> twists(5);
  for (int i = 0; i < 5; ++i) {
    twists[i].w = Vec3(i, 0, 0);
    twists[i].nu_tilde = Vec3(0, i, 0);
  }
  const double L = 0.3;
  const auto descs = build_descriptors(twists, L);
  REQUIRE(descs.size() == 3);  // n - 2
  // Descriptor k covers samples k, k+1, k+2 with columns
  // (L*w_{k}, L*w_{k+1}, L*w_{k+2}, nu_{k}, nu_{k+1}, nu_{k+2}).
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      CHECK((descs[k].col(j) - L * Vec3(k + j, 0, 0)).norm() == 0.0);
      CHECK((descs[k].col(3 + j) - Vec3(0, k + j, 0)).norm() == 0.0);
    }
  }
  CHECK_THROWS_AS(build_descriptors(std::vector<UnitTwist>(2), L),
                  std::invalid_argument);
}

TEST_CASE("align recovers a known rotation") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const ShapeDescriptor S1 = random_descriptor(rng);
    const Mat3 R_true = random_rotation(rng);
    const ShapeDescriptor S2 = R_true * S1;
    const Mat3 R = align(S1, S2);
    CHECK_NOTHROW(check_rotation(R, 1e-9));
    CHECK((R - R_true).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(shape_distance(S1, S2) < 1e-10);
  }
}

TEST_CASE("align returns a proper rotation even for reflective optima") {
  // S2 = -S1: the unconstrained Procrustes optimum is a reflection; the
  // determinant fix must still return det(R) = +1.
  std::mt19937_64 rng(33);
  for (int i = 0; i < 50; ++i) {
    const ShapeDescriptor S1 = random_descriptor(rng);
    const ShapeDescriptor S2 = -S1;
    const Mat3 R = align(S1, S2);
    CHECK_NOTHROW(check_rotation(R, 1e-9));
    CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("align beats or matches dense rotation sampling") {
  std::mt19937_64 rng(55);
  const ShapeDescriptor S1 = random_descriptor(rng);
  const ShapeDescriptor S2 = random_descriptor(rng);
  const double closed_form = shape_distance(S1, S2);
  const double sampled = brute_force_distance(S1, S2);
  CHECK(closed_form <= sampled + 1e-9);
  CHECK(closed_form > sampled - 0.05);  // dense sampling gets close
}

TEST_CASE("shape_distance properties") {
  std::mt19937_64 rng(77);

  SUBCASE("identity of indiscernibles and symmetry") {
    for (int i = 0; i < 50; ++i) {
      const ShapeDescriptor S1 = random_descriptor(rng);
      const ShapeDescriptor S2 = random_descriptor(rng);
      CHECK(shape_distance(S1, S1) < 1e-12);
      CHECK(std::abs(shape_distance(S1, S2) - shape_distance(S2, S1)) < 1e-9);
    }
  }

  SUBCASE("invariance to rotating either argument") {
    for (int i = 0; i < 50; ++i) {
      const ShapeDescriptor S1 = random_descriptor(rng);
      const ShapeDescriptor S2 = random_descriptor(rng);
      const Mat3 Q1 = random_rotation(rng);
      const Mat3 Q2 = random_rotation(rng);
      const double d = shape_distance(S1, S2);
      CHECK(std::abs(shape_distance(Q1 * S1, S2) - d) < 1e-9);
      CHECK(std::abs(shape_distance(S1, Q2 * S2) - d) < 1e-9);
      CHECK(std::abs(shape_distance(Q1 * S1, Q2 * S2) - d) < 1e-9);
    }
  }

  SUBCASE("triangle inequality") {
    for (int i = 0; i < 200; ++i) {
      const ShapeDescriptor A = random_descriptor(rng);
      const ShapeDescriptor B = random_descriptor(rng);
      const ShapeDescriptor C = random_descriptor(rng);
      CHECK(shape_distance(A, C) <=
            shape_distance(A, B) + shape_distance(B, C) + 1e-9);
    }
  }

  SUBCASE("bounded above by the unaligned Frobenius distance") {
    for (int i = 0; i < 50; ++i) {
      const ShapeDescriptor S1 = random_descriptor(rng);
      const ShapeDescriptor S2 = random_descriptor(rng);
      CHECK(shape_distance(S1, S2) <= (S1 - S2).norm() + 1e-12);
    }
  }
}

TEST_CASE("degenerate descriptors do not break alignment") {
  const ShapeDescriptor Z = ShapeDescriptor::Zero();
  CHECK(shape_distance(Z, Z) == 0.0);
  const Mat3 R = align(Z, Z);
  CHECK_NOTHROW(check_rotation(R, 1e-9));

  // Rank-1 descriptors (all columns parallel).
  ShapeDescriptor S1 = ShapeDescriptor::Zero();
  ShapeDescriptor S2 = ShapeDescriptor::Zero();
  for (int c = 0; c < 6; ++c) {
    S1.col(c) = (c + 1) * Vec3(1, 0, 0);
    S2.col(c) = (c + 1) * Vec3(0, 1, 0);
  }
  CHECK(shape_distance(S1, S2) < 1e-9);  // a rotation maps x to y
}

TEST_CASE("parallel and serial descriptor kernels agree bitwise") {
  std::mt19937_64 rng(91);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<UnitTwist> twists(300);
  for (auto& ut : twists) {
    ut.w = Vec3(gauss(rng), gauss(rng), gauss(rng));
    ut.nu_tilde = Vec3(gauss(rng), gauss(rng), gauss(rng));
  }
  const auto par = build_descriptors(twists, 0.3);
  const auto ser = serial::build_descriptors(twists, 0.3);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK((par[i] - ser[i]).cwiseAbs().maxCoeff() == 0.0);
  }
}
