#include "screwseg/shape_descriptor.hpp"

#include <Eigen/SVD>

namespace screwseg {

namespace {

template <typename GetW, typename GetNu>
std::vector<ShapeDescriptor> stack_descriptors(std::size_t n, double L,
                                               GetW get_w, GetNu get_nu) {
  if (n < 3) {
    throw std::invalid_argument("build_descriptors: need at least 3 samples");
  }
  std::vector<ShapeDescriptor> out(n - 2);
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n) - 2;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) + 1;
    ShapeDescriptor& S = out[k];
    S.col(0) = L * get_w(i - 1);
    S.col(1) = L * get_w(i);
    S.col(2) = L * get_w(i + 1);
    S.col(3) = get_nu(i - 1);
    S.col(4) = get_nu(i);
    S.col(5) = get_nu(i + 1);
  }
  return out;
}

}  // namespace

std::vector<ShapeDescriptor> build_descriptors(
    const std::vector<UnitTwist>& twists, double L) {
  return stack_descriptors(
      twists.size(), L, [&](std::size_t i) { return twists[i].w; },
      [&](std::size_t i) { return twists[i].nu_tilde; });
}

std::vector<ShapeDescriptor> build_descriptors_raw(
    const std::vector<std::pair<Vec3, Vec3>>& columns, double L) {
  return stack_descriptors(
      columns.size(), L, [&](std::size_t i) { return columns[i].first; },
      [&](std::size_t i) { return columns[i].second; });
}

Mat3 align(const ShapeDescriptor& S1, const ShapeDescriptor& S2) {
  const Mat3 M = S1 * S2.transpose();
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  Mat3 R = V * U.transpose();
  if (R.determinant() < 0.0) {
    U.col(2) *= -1.0;
    R = V * U.transpose();
  }
  return R;
}

double shape_distance(const ShapeDescriptor& S1, const ShapeDescriptor& S2) {
  return (align(S1, S2) * S1 - S2).norm();
}

namespace serial {

std::vector<ShapeDescriptor> build_descriptors(
    const std::vector<UnitTwist>& twists, double L) {
  if (twists.size() < 3) {
    throw std::invalid_argument("build_descriptors: need at least 3 samples");
  }
  std::vector<ShapeDescriptor> out(twists.size() - 2);
  for (std::size_t i = 1; i + 1 < twists.size(); ++i) {
    ShapeDescriptor& S = out[i - 1];
    S.col(0) = L * twists[i - 1].w;
    S.col(1) = L * twists[i].w;
    S.col(2) = L * twists[i + 1].w;
    S.col(3) = twists[i - 1].nu_tilde;
    S.col(4) = twists[i].nu_tilde;
    S.col(5) = twists[i + 1].nu_tilde;
  }
  return out;
}

}  // namespace serial

}  // namespace screwseg
