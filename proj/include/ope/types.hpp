#pragma once

#include <stdexcept>

namespace ope {

// Basis size bookkeeping: per-axis frequencies 0..n give 2n+1 one-variable
// functions and their (2n+1)^2 separable products in 2D.
struct OpeConfig {
    int n = 3;

    OpeConfig() = default;
    explicit OpeConfig(int max_freq) : n(max_freq) {
        if (n < 0) throw std::invalid_argument("OpeConfig: n must be >= 0");
    }

    [[nodiscard]] int axis_dim() const noexcept { return 2 * n + 1; }
    [[nodiscard]] int dim() const noexcept { return axis_dim() * axis_dim(); }
};

// 0-based pair of per-axis basis indices. Index 0 on an axis is the constant
// function, odd index 2k-1 is sqrt(2)*cos(k*pi*t), even index 2k is
// sqrt(2)*sin(k*pi*t).
struct BasisIndex {
    int i = 0;  // x-axis index in [0, 2n]
    int j = 0;  // y-axis index in [0, 2n]

    [[nodiscard]] int flat(const OpeConfig& cfg) const {
        if (i < 0 || j < 0 || i >= cfg.axis_dim() || j >= cfg.axis_dim())
            throw std::out_of_range("BasisIndex: index outside [0, 2n]");
        return i * cfg.axis_dim() + j;
    }

    static BasisIndex from_flat(int flat, const OpeConfig& cfg) {
        if (flat < 0 || flat >= cfg.dim())
            throw std::out_of_range("BasisIndex: flat index outside [0, (2n+1)^2)");
        return {flat / cfg.axis_dim(), flat % cfg.axis_dim()};
    }
};

// Flip direction shared by images and feature maps. Horizontal acts along the
// x axis, which indexes height in this codebase (x pairs with row counts
// everywhere); Vertical acts along y/width.
enum class FlipAxis { Horizontal, Vertical };

}  // namespace ope
