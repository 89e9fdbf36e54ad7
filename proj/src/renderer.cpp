#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ope/basis.hpp"
#include "ope/parallel.hpp"
#include "ope/renderer.hpp"

namespace ope {

const char* to_string(EnsembleMode mode) {
    switch (mode) {
        case EnsembleMode::Full: return "full";
        case EnsembleMode::NoExt: return "no-ext";
        case EnsembleMode::NoInterp: return "no-interp";
        case EnsembleMode::None: return "none";
    }
    return "?";
}

EnsembleMode ensemble_mode_from_string(const std::string& name) {
    if (name == "full") return EnsembleMode::Full;
    if (name == "no-ext") return EnsembleMode::NoExt;
    if (name == "no-interp") return EnsembleMode::NoInterp;
    if (name == "none") return EnsembleMode::None;
    throw std::invalid_argument("unknown ensemble mode '" + name + "'");
}

namespace {

// Coefficient-vector evaluation acc = sum_i gx[i] * sum_j z[i*ad+j] * gy[j],
// with a fixed summation order shared by every caller (and both storage
// precisions) so renders are reproducible bit for bit.
template <typename Coeff>
double eval_code(const Coeff* z, const double* gx, const double* gy, int ad) {
    double acc = 0.0;
    for (int i = 0; i < ad; ++i) {
        const Coeff* row = z + std::size_t(i) * ad;
        double s = 0.0;
        for (int j = 0; j < ad; ++j) s += double(row[j]) * gy[j];
        acc += gx[i] * s;
    }
    return acc;
}

void gamma_into(double t, const OpeConfig& cfg, double* dst) {
    for (int e = 0; e < cfg.axis_dim(); ++e) dst[e] = axis_basis(e, t);
}

struct Workspace {
    std::vector<double> gx, gy;
    explicit Workspace(const OpeConfig& cfg)
        : gx(std::size_t(cfg.axis_dim())), gy(std::size_t(cfg.axis_dim())) {}
};

// Per-channel values at q, written to out[0..channels). The single code path
// for all four modes and both entry points (render_pixel, render_image).
void render_pixel_into(const FeatureMap& fm, const Eigen::Vector2d& q, EnsembleMode mode,
                       Workspace& ws, double* out) {
    const int ad = fm.cfg.axis_dim();
    if (mode == EnsembleMode::Full || mode == EnsembleMode::NoExt) {
        const EnsembleNeighborhood nb = neighborhood(q, fm.grid);
        std::fill(out, out + fm.channels, 0.0);
        for (int t = 0; t < 4; ++t) {
            const Eigen::Vector2d rel =
                mode == EnsembleMode::Full
                    ? nb.rel_coords[t]
                    : relative_coords_base(q, nb.virtual_centers[t], fm.grid);
            gamma_into(rel.x(), fm.cfg, ws.gx.data());
            gamma_into(rel.y(), fm.cfg, ws.gy.data());
            const double w = nb.weights[t];
            for (int ch = 0; ch < fm.channels; ++ch)
                out[ch] += w * eval_code(fm.cell(nb.indices[t].x(), nb.indices[t].y(), ch),
                                         ws.gx.data(), ws.gy.data(), ad);
        }
    } else {
        const Eigen::Vector2i idx = nearest_index(q, fm.grid);
        const Eigen::Vector2d center{cell_center(idx.x(), fm.grid.rows),
                                     cell_center(idx.y(), fm.grid.cols)};
        const Eigen::Vector2d rel = mode == EnsembleMode::NoInterp
                                        ? relative_coords_ext(q, center, fm.grid)
                                        : relative_coords_base(q, center, fm.grid);
        gamma_into(rel.x(), fm.cfg, ws.gx.data());
        gamma_into(rel.y(), fm.cfg, ws.gy.data());
        for (int ch = 0; ch < fm.channels; ++ch)
            out[ch] = eval_code(fm.cell(idx.x(), idx.y(), ch), ws.gx.data(), ws.gy.data(), ad);
    }
}

}  // namespace

double render_single(const Eigen::VectorXd& z, double x, double y, const OpeConfig& cfg) {
    if (z.size() != cfg.dim())
        throw std::invalid_argument("render_single: coefficient length does not match config");
    Workspace ws(cfg);
    gamma_into(x, cfg, ws.gx.data());
    gamma_into(y, cfg, ws.gy.data());
    return eval_code(z.data(), ws.gx.data(), ws.gy.data(), cfg.axis_dim());
}

Eigen::VectorXd render_pixel(const FeatureMap& fm, const Eigen::Vector2d& q, EnsembleMode mode) {
    Workspace ws(fm.cfg);
    Eigen::VectorXd out(fm.channels);
    render_pixel_into(fm, q, mode, ws, out.data());
    return out;
}

Image render_image(const FeatureMap& fm, int out_rows, int out_cols, EnsembleMode mode,
                   int threads) {
    if (out_rows < 1 || out_cols < 1)
        throw std::invalid_argument("render_image: target dimensions must be >= 1");
    Image img(out_rows, out_cols, fm.channels);
    parallel_for_rows(out_rows, threads, [&](int begin, int end) {
        Workspace ws(fm.cfg);
        std::vector<double> px(std::size_t(fm.channels));
        for (int i = begin; i < end; ++i) {
            const double qx = cell_center(i, out_rows);
            for (int j = 0; j < out_cols; ++j) {
                const Eigen::Vector2d q{qx, cell_center(j, out_cols)};
                render_pixel_into(fm, q, mode, ws, px.data());
                for (int ch = 0; ch < fm.channels; ++ch)
                    img.at(i, j, ch) = std::clamp(px[std::size_t(ch)], 0.0, 1.0);
            }
        }
    });
    return img;
}

std::uint64_t op_count(const OpeConfig& cfg, int out_rows, int out_cols, int channels) {
    const std::uint64_t ad = std::uint64_t(cfg.axis_dim());
    const std::uint64_t per_member = std::uint64_t(channels) * ad * ad + ad * ad + 2 * ad;
    return std::uint64_t(out_rows) * std::uint64_t(out_cols) * 4 * per_member;
}

}  // namespace ope
