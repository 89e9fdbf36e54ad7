#pragma once

// Analytic projection of images onto the basis: per-window latent codes and
// whole-image encoding into a FeatureMap.

#include <Eigen/Core>

#include "ope/feature_map.hpp"
#include "ope/image.hpp"

namespace ope {

// Project one 2r x 2r sample window onto the (2n+1)^2 basis functions:
// z[flat(i,j)] = (1/4) * sum_{a,b} samples(a,b) * basis_i(xs[a]) *
// basis_j(ys[b]) * dA with dA = 1/r^2, the per-sample cell area in the
// relative domain. The coordinate of sample (a,b) is (xs[a], ys[b]).
// Throws unless the window is square with even side >= 2 matching xs/ys.
Eigen::VectorXd project_window(const Eigen::MatrixXd& samples, const Eigen::VectorXd& xs,
                               const Eigen::VectorXd& ys, const OpeConfig& cfg);

// Encode an image into an (H/r) x (W/r) FeatureMap. The latent at cell (i,j)
// is the projection of the 2r x 2r pixel window centered on the cell (the
// window extends r/2 pixels past the cell on each side; out-of-image samples
// come from reflect padding). Sample coordinates follow the extended relative
// convention: x' = ((k+0.5) - (i+0.5)*r)/r for image row k.
//
// Frequencies above 2r-1 cannot be separated from lower ones by the 2r
// per-axis samples (the constant aliases onto cos(k*pi*t) for k = 0 mod 2r),
// so the projection is computed with the per-axis frequency capped at
// min(n, 2r-1) and higher coefficients are left at zero.
//
// Throws if r < 1 or the image dimensions are not divisible by r.
FeatureMap encode_image(const Image& img, int r, const OpeConfig& cfg, int threads = 0);

// The effective per-axis max frequency used by encode_image.
inline int encode_frequency_cap(int n, int r) { return n < 2 * r - 1 ? n : 2 * r - 1; }

}  // namespace ope
