#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ope/image.hpp"

namespace ope {

double psnr(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("psnr: shape mismatch");
    const double mse = (a.values - b.values).squaredNorm() / double(a.values.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

// Cubic convolution kernel with a = -0.5 (interpolates exactly at integer
// offsets, so weights sum to 1 at every phase).
double cubic_weight(double t) {
    constexpr double a = -0.5;
    const double x = std::abs(t);
    if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
    if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    return 0.0;
}

// One separable pass along the column axis: out has the same rows/channels
// and `out_cols` columns.
Image resize_cols(const Image& img, int out_cols) {
    Image out(img.rows, out_cols, img.channels);
    const double step = double(img.cols) / out_cols;
    for (int oc = 0; oc < out_cols; ++oc) {
        const double s = (oc + 0.5) * step - 0.5;
        const int base = int(std::floor(s));
        const double frac = s - base;
        double w[4];
        int src[4];
        for (int d = -1; d <= 2; ++d) {
            w[d + 1] = cubic_weight(frac - d);
            src[d + 1] = std::clamp(base + d, 0, img.cols - 1);
        }
        for (int r = 0; r < img.rows; ++r)
            for (int ch = 0; ch < img.channels; ++ch) {
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += w[k] * img.at(r, src[k], ch);
                out.at(r, oc, ch) = acc;
            }
    }
    return out;
}

Image transpose(const Image& img) {
    Image out(img.cols, img.rows, img.channels);
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c)
            for (int ch = 0; ch < img.channels; ++ch) out.at(c, r, ch) = img.at(r, c, ch);
    return out;
}

}  // namespace

Image bicubic_resize(const Image& img, int out_rows, int out_cols) {
    if (out_rows < 1 || out_cols < 1)
        throw std::invalid_argument("bicubic_resize: target dimensions must be >= 1");
    Image out = resize_cols(img, out_cols);
    out = transpose(resize_cols(transpose(out), out_rows));
    out.clamp01();
    return out;
}

Image flip_image(const Image& img, FlipAxis axis) {
    Image out(img.rows, img.cols, img.channels);
    for (int r = 0; r < img.rows; ++r) {
        const int sr = axis == FlipAxis::Horizontal ? img.rows - 1 - r : r;
        for (int c = 0; c < img.cols; ++c) {
            const int sc = axis == FlipAxis::Vertical ? img.cols - 1 - c : c;
            for (int ch = 0; ch < img.channels; ++ch) out.at(r, c, ch) = img.at(sr, sc, ch);
        }
    }
    return out;
}

}  // namespace ope
