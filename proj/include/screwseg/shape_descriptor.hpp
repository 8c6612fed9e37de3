// Third-order trajectory-shape descriptor: the 3x6 matrix stacking
// (L*w, nu_tilde) at three consecutive geometric samples, compared after
// optimal rotation alignment (orthogonal Procrustes) via the Frobenius norm.

#ifndef SCREWSEG_SHAPE_DESCRIPTOR_HPP
#define SCREWSEG_SHAPE_DESCRIPTOR_HPP

#include <vector>

#include "screwseg/screw_progress.hpp"

namespace screwseg {

// Columns: (L*w_{i-1}, L*w_i, L*w_{i+1}, nu_{i-1}, nu_i, nu_{i+1}).
using ShapeDescriptor = Eigen::Matrix<double, 3, 6>;

/// One descriptor per interior sample (endpoints dropped): n inputs give
/// n - 2 descriptors.
std::vector<ShapeDescriptor> build_descriptors(
    const std::vector<UnitTwist>& twists, double L);

/// Descriptors from raw (w, u) column pairs; used by the harness where the
/// velocity columns are method-specific.
std::vector<ShapeDescriptor> build_descriptors_raw(
    const std::vector<std::pair<Vec3, Vec3>>& columns, double L);

/// Rotation R in SO(3) minimizing |R*S1 - S2|_F. Computed from the SVD of
/// S1*S2^T = U Sigma V^T as R = V*U^T; when det(V*U^T) = -1 the sign of the
/// third column of U is flipped before recomputing.
Mat3 align(const ShapeDescriptor& S1, const ShapeDescriptor& S2);

/// |align(S1,S2)*S1 - S2|_F, invariant to rotating either descriptor.
double shape_distance(const ShapeDescriptor& S1, const ShapeDescriptor& S2);

namespace serial {
std::vector<ShapeDescriptor> build_descriptors(
    const std::vector<UnitTwist>& twists, double L);
}  // namespace serial

}  // namespace screwseg

#endif  // SCREWSEG_SHAPE_DESCRIPTOR_HPP
