#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>

#include "ope/basis.hpp"
#include "ope/commands.hpp"
#include "ope/image_io.hpp"
#include "ope/projector.hpp"

namespace ope {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string basename_of(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

double max_abs_diff(const Image& a, const Image& b) {
    return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace

Image crop_to_multiple(const Image& img, int r) {
    const int rows = (img.rows / r) * r, cols = (img.cols / r) * r;
    if (rows < r || cols < r)
        throw std::invalid_argument("crop_to_multiple: image smaller than one cell");
    if (rows == img.rows && cols == img.cols) return img;
    Image out(rows, cols, img.channels);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (int ch = 0; ch < img.channels; ++ch) out.at(i, j, ch) = img.at(i, j, ch);
    return out;
}

std::vector<std::string> list_corpus(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return char(std::tolower(c)); });
        if (ext == ".ppm" || ext == ".png") paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

RunReport cmd_ortho_check(const OrthoCheckOptions& opt) {
    if (opt.n_max < 0 || opt.m < 1)
        throw std::invalid_argument("ortho-check: need n_max >= 0 and m >= 1");
    RunReport rep;
    rep.command = "ortho-check";
    rep.add_param("n_max", opt.n_max);
    rep.add_param("m", opt.m);
    rep.add_param("tolerance", opt.tolerance);
    double worst = 0.0;
    for (int n = 0; n <= opt.n_max; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const Eigen::MatrixXd g = gram_2d(OpeConfig(n), opt.m);
        double off = 0.0, diag = 0.0;
        for (Eigen::Index a = 0; a < g.rows(); ++a)
            for (Eigen::Index b = 0; b < g.cols(); ++b) {
                if (a == b)
                    diag = std::max(diag, std::abs(g(a, b) - 1.0));
                else
                    off = std::max(off, std::abs(g(a, b)));
            }
        rep.items.push_back({"gram", 0, n, "quadrature", kNan, ms_since(t0)});
        rep.add_param("max_offdiag[n=" + std::to_string(n) + "]", off);
        rep.add_param("max_diag_dev[n=" + std::to_string(n) + "]", diag);
        worst = std::max({worst, off, diag});
    }
    rep.add_param("max_deviation", worst);
    rep.passed = worst <= opt.tolerance;
    rep.compute_aggregates();
    return rep;
}

RunReport cmd_roundtrip(const RoundtripOptions& opt) {
    if (opt.images.empty()) throw std::invalid_argument("roundtrip: no images given");
    RunReport rep;
    rep.command = "roundtrip";
    // mean PSNR across images for each (r, n), for the argmax annotation
    std::map<std::pair<int, int>, std::pair<double, int>> acc;
    for (const auto& path : opt.images) {
        const Image img = load_image(path);
        const std::string id = basename_of(path);
        for (int r : opt.r_list) {
            const Image gt = crop_to_multiple(img, r);
            for (int n : opt.n_list) {
                const auto t0 = std::chrono::steady_clock::now();
                const FeatureMap fm = encode_image(gt, r, OpeConfig(n), opt.threads);
                const Image back =
                    render_image(fm, gt.rows, gt.cols, EnsembleMode::Full, opt.threads);
                const double p = psnr(back, gt);
                rep.items.push_back({id, r, n, "full", p, ms_since(t0)});
                auto& [sum, count] = acc[{r, n}];
                sum += p;
                ++count;
            }
        }
    }
    for (int r : opt.r_list) {
        int best_n = opt.n_list.front();
        double best = -std::numeric_limits<double>::infinity();
        for (int n : opt.n_list) {
            const auto& [sum, count] = acc[{r, n}];
            const double mean = sum / count;
            rep.add_param("mean_psnr[r=" + std::to_string(r) + ",n=" + std::to_string(n) + "]",
                          mean);
            if (mean > best) {
                best = mean;
                best_n = n;
            }
        }
        rep.add_param("argmax_n[r=" + std::to_string(r) + "]", best_n);
    }
    rep.compute_aggregates();
    return rep;
}

RunReport cmd_flip_check(const FlipCheckOptions& opt) {
    const Image img = crop_to_multiple(load_image(opt.image), opt.r);
    const OpeConfig cfg(opt.n);
    RunReport rep;
    rep.command = "flip-check";
    rep.add_param("image", basename_of(opt.image));
    rep.add_param("r", opt.r);
    rep.add_param("n", opt.n);
    rep.add_param("tolerance", opt.tolerance);

    const FeatureMap fm = encode_image(img, opt.r, cfg, opt.threads);
    const Image rendered = render_image(fm, img.rows, img.cols, EnsembleMode::Full, opt.threads);
    double worst = 0.0;
    for (const FlipAxis axis : {FlipAxis::Horizontal, FlipAxis::Vertical}) {
        const std::string ax = axis == FlipAxis::Horizontal ? "h" : "v";
        const Image gt_flipped = flip_image(img, axis);
        const Image reference = flip_image(rendered, axis);

        const auto t0 = std::chrono::steady_clock::now();
        const Image corrected =
            render_image(flip(fm, axis), img.rows, img.cols, EnsembleMode::Full, opt.threads);
        const double dev = max_abs_diff(corrected, reference);
        rep.items.push_back(
            {"render-of-flipped[" + ax + "]", opt.r, opt.n, "full", psnr(corrected, gt_flipped),
             ms_since(t0)});
        rep.items.push_back({"flip-of-rendered[" + ax + "]", opt.r, opt.n, "full",
                             psnr(reference, gt_flipped), 0.0});
        rep.add_param("max_dev_corrected[" + ax + "]", dev);
        worst = std::max(worst, dev);

        const Image spatial = render_image(flip_spatial(fm, axis), img.rows, img.cols,
                                           EnsembleMode::Full, opt.threads);
        rep.add_param("max_dev_spatial[" + ax + "]", max_abs_diff(spatial, reference));
        rep.items.push_back({"spatial-flip-variant[" + ax + "]", opt.r, opt.n, "full",
                             psnr(spatial, gt_flipped), 0.0});
    }
    rep.add_param("max_dev", worst);
    rep.passed = worst <= opt.tolerance;
    rep.compute_aggregates();
    return rep;
}

RunReport cmd_upsample(const UpsampleOptions& opt) {
    const Image img = load_image(opt.input);
    int out_rows = opt.out_rows, out_cols = opt.out_cols;
    if (out_rows < 1 || out_cols < 1) {
        if (opt.scale <= 0.0)
            throw std::invalid_argument("upsample: need --scale > 0 or an explicit --size");
        out_rows = std::max(1, int(std::lround(img.rows * opt.scale)));
        out_cols = std::max(1, int(std::lround(img.cols * opt.scale)));
    }
    const OpeConfig cfg(opt.n);
    if (opt.n > encode_frequency_cap(opt.n, 1))
        std::cerr << "upsample: note: 2n+1 = " << cfg.axis_dim()
                  << " exceeds the 2 samples per axis at r=1; effective per-axis frequency capped"
                     " at " << encode_frequency_cap(opt.n, 1) << "\n";

    RunReport rep;
    rep.command = "upsample";
    rep.add_param("input", basename_of(opt.input));
    rep.add_param("size", std::to_string(out_rows) + "x" + std::to_string(out_cols));
    rep.add_param("n", opt.n);
    rep.add_param("mode", to_string(opt.mode));

    const auto t0 = std::chrono::steady_clock::now();
    const FeatureMap fm = encode_image(img, 1, cfg, opt.threads);
    const Image out = render_image(fm, out_rows, out_cols, opt.mode, opt.threads);
    const double elapsed = ms_since(t0);
    // with no ground truth at the target size, PSNR is only meaningful when
    // the output size equals the input size
    const double p = out.same_shape(img) ? psnr(out, img) : kNan;
    rep.items.push_back({basename_of(opt.input), 1, opt.n, to_string(opt.mode), p, elapsed});
    if (!opt.out.empty()) save_image(out, opt.out);
    if (!opt.bicubic_out.empty()) save_image(bicubic_resize(img, out_rows, out_cols), opt.bicubic_out);
    rep.compute_aggregates();
    return rep;
}

RunReport cmd_bench(const BenchOptions& opt) {
    if (opt.repetitions < 1) throw std::invalid_argument("bench: repetitions must be >= 1");
    if (opt.size < 1 || opt.scales.empty())
        throw std::invalid_argument("bench: need size >= 1 and at least one scale");
    const OpeConfig cfg(opt.n);
    const FeatureMap fm =
        random_feature_map(GridSpec{opt.size, opt.size}, 3, cfg, opt.seed);

    RunReport rep;
    rep.command = "bench";
    rep.add_param("size", opt.size);
    rep.add_param("n", opt.n);
    rep.add_param("repetitions", opt.repetitions);
    rep.add_param("seed", int(opt.seed));
    std::vector<std::pair<double, double>> measured;  // (pixels, min ms)
    for (const double s : opt.scales) {
        const int rows = std::max(1, int(std::lround(opt.size * s)));
        const int cols = rows;
        double best = std::numeric_limits<double>::infinity();
        for (int rep_i = 0; rep_i < opt.repetitions; ++rep_i) {
            const auto t0 = std::chrono::steady_clock::now();
            const Image out = render_image(fm, rows, cols, EnsembleMode::Full, opt.threads);
            best = std::min(best, ms_since(t0));
        }
        const double pixels = double(rows) * cols;
        const std::string id = "x" + format_double(s);
        rep.items.push_back({id, 0, opt.n, "full", kNan, best});
        rep.add_param("pixels[" + id + "]", format_double(pixels));
        rep.add_param("mpixels_per_s[" + id + "]", pixels / best / 1000.0);
        rep.add_param("op_count[" + id + "]",
                      format_double(double(op_count(cfg, rows, cols, fm.channels))));
        measured.emplace_back(pixels, best);
    }
    // near-linear scaling in output pixels, +-25 percent
    bool linear = true;
    for (std::size_t k = 1; k < measured.size(); ++k) {
        const double pixel_ratio = measured[k].first / measured[k - 1].first;
        const double time_ratio = measured[k].second / measured[k - 1].second;
        rep.add_param("time_ratio[" + rep.items[k].id + "/" + rep.items[k - 1].id + "]",
                      time_ratio);
        if (time_ratio < 0.75 * pixel_ratio || time_ratio > 1.25 * pixel_ratio) linear = false;
    }
    rep.passed = linear;
    rep.compute_aggregates();
    return rep;
}

RunReport cmd_ablation(const AblationOptions& opt) {
    if (opt.images.empty()) throw std::invalid_argument("ablation: no images given");
    constexpr EnsembleMode kModes[] = {EnsembleMode::Full, EnsembleMode::NoExt,
                                       EnsembleMode::NoInterp, EnsembleMode::None};
    RunReport rep;
    rep.command = "ablation";
    rep.add_param("r", opt.r);
    rep.add_param("n", opt.n);
    double mean[4] = {};
    for (const auto& path : opt.images) {
        const Image gt = crop_to_multiple(load_image(path), opt.r);
        const std::string id = basename_of(path);
        const FeatureMap fm = encode_image(gt, opt.r, OpeConfig(opt.n), opt.threads);
        for (int k = 0; k < 4; ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const Image out = render_image(fm, gt.rows, gt.cols, kModes[k], opt.threads);
            const double p = psnr(out, gt);
            rep.items.push_back({id, opt.r, opt.n, to_string(kModes[k]), p, ms_since(t0)});
            mean[k] += p / double(opt.images.size());
        }
    }
    bool full_best = true;
    for (int k = 0; k < 4; ++k) {
        rep.add_param(std::string("mean_psnr[") + to_string(kModes[k]) + "]", mean[k]);
        if (k > 0 && mean[0] < mean[k]) full_best = false;
    }
    rep.passed = full_best;
    rep.compute_aggregates();
    return rep;
}

}  // namespace ope
