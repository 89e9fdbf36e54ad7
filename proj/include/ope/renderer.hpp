#pragma once

// Parameter-free rendering of a FeatureMap at any target resolution, with the
// four-member patch ensemble and its reduced variants.

#include <Eigen/Core>
#include <cstdint>

#include "ope/feature_map.hpp"
#include "ope/image.hpp"

namespace ope {

// FULL: four-member ensemble, extended relative coordinates.
// NO_EXT: four-member ensemble, base coordinates.
// NO_INTERP: single nearest code, extended coordinates.
// NONE: single nearest code, base coordinates.
enum class EnsembleMode { Full, NoExt, NoInterp, None };

const char* to_string(EnsembleMode mode);
EnsembleMode ensemble_mode_from_string(const std::string& name);

// Dot product z . ope(x, y): evaluates the represented function at one
// relative coordinate. z length must be (2n+1)^2.
double render_single(const Eigen::VectorXd& z, double x, double y, const OpeConfig& cfg);

// Per-channel values at query q in [-1,1]^2, not clamped.
Eigen::VectorXd render_pixel(const FeatureMap& fm, const Eigen::Vector2d& q, EnsembleMode mode);

// Render every target pixel center on the H x W grid via render_pixel, then
// clamp to [0,1]. Parallelizes over rows; output is independent of the
// thread count.
Image render_image(const FeatureMap& fm, int out_rows, int out_cols, EnsembleMode mode,
                   int threads = 0);

// Analytic multiply-accumulate estimate for rendering H x W pixels:
// H*W*4*(channels*(2n+1)^2 + (2n+1)^2 + 2*(2n+1)), covering ensemble members
// x (per-channel dot products + the basis outer product + two one-variable
// encodings).
std::uint64_t op_count(const OpeConfig& cfg, int out_rows, int out_cols, int channels = 3);

}  // namespace ope
