#pragma once

// Raster type with values in [0,1], plus PSNR, bicubic resampling and flips.

#include <Eigen/Core>
#include <stdexcept>

#include "ope/types.hpp"

namespace ope {

// H x W x C raster, values interleaved [row][col][channel].
struct Image {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    Eigen::VectorXd values;

    Image() = default;
    Image(int rows_, int cols_, int channels_)
        : rows(rows_), cols(cols_), channels(channels_) {
        if (rows < 1 || cols < 1 || channels < 1)
            throw std::invalid_argument("Image: dimensions must be >= 1");
        values = Eigen::VectorXd::Zero(Eigen::Index(rows) * cols * channels);
    }

    [[nodiscard]] Eigen::Index index(int r, int c, int ch) const noexcept {
        return (Eigen::Index(r) * cols + c) * channels + ch;
    }
    [[nodiscard]] double at(int r, int c, int ch) const { return values[index(r, c, ch)]; }
    double& at(int r, int c, int ch) { return values[index(r, c, ch)]; }

    [[nodiscard]] bool same_shape(const Image& o) const noexcept {
        return rows == o.rows && cols == o.cols && channels == o.channels;
    }

    void clamp01() { values = values.cwiseMax(0.0).cwiseMin(1.0); }

    static Image constant(int rows, int cols, int channels, double value) {
        Image img(rows, cols, channels);
        img.values.setConstant(value);
        return img;
    }
};

// 10*log10(1/MSE) over all pixels and channels jointly, [0,1] scale.
// Returns +infinity when the images are identical.
double psnr(const Image& a, const Image& b);

// Separable cubic-convolution resampling, kernel parameter a = -0.5,
// center-aligned sampling, edge replication; output clamped to [0,1].
Image bicubic_resize(const Image& img, int out_rows, int out_cols);

// Reverse pixel order along the chosen axis (Horizontal = rows).
Image flip_image(const Image& img, FlipAxis axis);

}  // namespace ope
