#pragma once

// Experiment harness behind the CLI: each command runs one protocol, returns
// a RunReport (passed == false when an asserted property failed) and writes
// any requested artifacts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ope/renderer.hpp"
#include "ope/report.hpp"

namespace ope {

struct OrthoCheckOptions {
    int n_max = 8;
    int m = 512;
    double tolerance = 1e-8;
};
// Gram matrix of all basis functions for each n <= n_max at quadrature
// density m; fails when any deviation from identity exceeds the tolerance.
RunReport cmd_ortho_check(const OrthoCheckOptions& opt);

struct RoundtripOptions {
    std::vector<std::string> images;
    std::vector<int> r_list = {2, 3, 4};
    std::vector<int> n_list = {1, 2, 3, 4, 5, 6, 7, 8};
    int threads = 0;
};
// encode -> render at original size -> PSNR for every (image, r, n); images
// are cropped to the largest multiple of r first. Marks the argmax n per r.
RunReport cmd_roundtrip(const RoundtripOptions& opt);

struct FlipCheckOptions {
    std::string image;
    int r = 2;
    int n = 3;
    double tolerance = 1e-5;
    int threads = 0;
};
// Checks render(flip(fm)) against flip(render(fm)) on both axes with the
// parity-corrected flip (must agree within tolerance) and reports the purely
// spatial variant's deviation for comparison.
RunReport cmd_flip_check(const FlipCheckOptions& opt);

struct UpsampleOptions {
    std::string input;
    std::string out;
    double scale = 0.0;            // either scale or explicit size
    int out_rows = 0, out_cols = 0;
    int n = 3;
    EnsembleMode mode = EnsembleMode::Full;
    std::string bicubic_out;       // optional baseline image path
    int threads = 0;
};
// Encodes the input at r=1 (effective n capped; warns when 2n+1 exceeds the
// per-axis sample count 2) and renders at the target size.
RunReport cmd_upsample(const UpsampleOptions& opt);

struct BenchOptions {
    int size = 128;                       // synthetic feature-map side
    std::vector<double> scales = {4, 8};
    int n = 3;
    int repetitions = 3;
    std::uint32_t seed = 0;
    int threads = 0;
};
// Times render_image (min over repetitions) across scales; reports ms/image,
// Mpixel/s and the op_count estimate; asserts near-linear scaling in output
// pixels between consecutive scales. Throws on repetitions == 0.
RunReport cmd_bench(const BenchOptions& opt);

struct AblationOptions {
    std::vector<std::string> images;
    int r = 4;
    int n = 3;
    int threads = 0;
};
// Round-trip evaluation in all four ensemble modes; asserts that FULL's
// corpus mean is >= each reduced mode's.
RunReport cmd_ablation(const AblationOptions& opt);

// Shared plumbing also used by tests: crop to the largest r-multiple, list
// corpus images in a directory (sorted, .ppm/.png).
Image crop_to_multiple(const Image& img, int r);
std::vector<std::string> list_corpus(const std::string& dir);

}  // namespace ope
