// Command-line surface over the experiment harness. Every report-producing
// subcommand exits 0 when its asserted properties hold and 1 otherwise;
// usage and IO errors exit 2.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ope/commands.hpp"
#include "ope/image_io.hpp"
#include "ope/projector.hpp"

namespace {

std::pair<int, int> parse_size(const std::string& s) {
    int rows = 0, cols = 0;
    char sep = 0;
    if (std::sscanf(s.c_str(), "%d%c%d", &rows, &sep, &cols) != 3 ||
        (sep != 'x' && sep != 'X') || rows < 1 || cols < 1)
        throw CLI::ValidationError("--size", "expected HxW with positive integers, got '" + s + "'");
    return {rows, cols};
}

void collect_images(std::vector<std::string>& images, const std::string& dataset_dir) {
    if (!dataset_dir.empty())
        for (auto& p : ope::list_corpus(dataset_dir)) images.push_back(std::move(p));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous image representation via an orthogonal sinusoid basis:\n"
                 "analytic encoding to latent coefficient grids and arbitrary-scale rendering"};
    app.require_subcommand(1);
    int exit_code = 0;
    std::string report_fmt = "csv", report_path = "-";
    const auto add_report_flags = [&](CLI::App* cmd) {
        cmd->add_option("--report", report_fmt, "report format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", report_path, "report path ('-' = stdout)");
    };

    // ortho-check
    ope::OrthoCheckOptions ortho;
    auto* c_ortho = app.add_subcommand("ortho-check", "audit basis orthonormality via quadrature");
    c_ortho->add_option("--n-max", ortho.n_max, "largest max-frequency to audit");
    c_ortho->add_option("--m", ortho.m, "quadrature points per axis");
    c_ortho->add_option("--tolerance", ortho.tolerance, "max allowed deviation from identity");
    add_report_flags(c_ortho);
    c_ortho->callback([&] {
        auto rep = ope::cmd_ortho_check(ortho);
        rep.write(report_fmt, report_path);
        exit_code = rep.passed ? 0 : 1;
    });

    // roundtrip
    ope::RoundtripOptions rt;
    std::string dataset_dir;
    auto* c_rt = app.add_subcommand("roundtrip",
                                    "encode then render at original size, PSNR per (image, r, n)");
    c_rt->add_option("images", rt.images, "input images (PPM/PNG)");
    c_rt->add_option("--dataset-dir", dataset_dir, "directory of images to add");
    c_rt->add_option("--r", rt.r_list, "downscale factors")->delimiter(',');
    c_rt->add_option("--n", rt.n_list, "max frequencies")->delimiter(',');
    c_rt->add_option("--threads", rt.threads, "worker threads (0 = auto)");
    add_report_flags(c_rt);
    c_rt->callback([&] {
        collect_images(rt.images, dataset_dir);
        auto rep = ope::cmd_roundtrip(rt);
        rep.write(report_fmt, report_path);
        exit_code = rep.passed ? 0 : 1;
    });

    // flip-check
    ope::FlipCheckOptions fc;
    auto* c_fc = app.add_subcommand("flip-check",
                                    "verify rendering commutes with the coefficient flip");
    c_fc->add_option("image", fc.image, "input image")->required();
    c_fc->add_option("--r", fc.r, "downscale factor");
    c_fc->add_option("--n", fc.n, "max frequency");
    c_fc->add_option("--tolerance", fc.tolerance, "max allowed per-pixel deviation");
    c_fc->add_option("--threads", fc.threads, "worker threads (0 = auto)");
    add_report_flags(c_fc);
    c_fc->callback([&] {
        auto rep = ope::cmd_flip_check(fc);
        rep.write(report_fmt, report_path);
        exit_code = rep.passed ? 0 : 1;
    });

    // upsample
    ope::UpsampleOptions up;
    std::string up_size;
    auto* c_up = app.add_subcommand("upsample", "arbitrary-scale upsampling of an image");
    c_up->add_option("input", up.input, "input image")->required();
    c_up->add_option("--scale", up.scale, "output scale factor");
    c_up->add_option("--size", up_size, "explicit output size HxW");
    c_up->add_option("--n", up.n, "max frequency");
    std::string up_mode = "full";
    c_up->add_option("--mode", up_mode, "ensemble mode")
        ->check(CLI::IsMember({"full", "no-ext", "no-interp", "none"}));
    c_up->add_option("--out", up.out, "output image path")->required();
    c_up->add_option("--bicubic-out", up.bicubic_out, "also write a bicubic baseline here");
    c_up->add_option("--threads", up.threads, "worker threads (0 = auto)");
    std::string up_report_fmt, up_report_path = "-";
    c_up->add_option("--report", up_report_fmt, "also emit a report in this format")
        ->check(CLI::IsMember({"csv", "json"}));
    c_up->add_option("--report-out", up_report_path, "report path ('-' = stdout)");
    c_up->callback([&] {
        if (!up_size.empty()) std::tie(up.out_rows, up.out_cols) = parse_size(up_size);
        up.mode = ope::ensemble_mode_from_string(up_mode);
        auto rep = ope::cmd_upsample(up);
        if (!up_report_fmt.empty()) rep.write(up_report_fmt, up_report_path);
        exit_code = rep.passed ? 0 : 1;
    });

    // bench
    ope::BenchOptions bench;
    auto* c_bench = app.add_subcommand("bench", "render throughput across scales");
    c_bench->add_option("--size", bench.size, "synthetic feature-map side length");
    c_bench->add_option("--scale", bench.scales, "scales to time")->delimiter(',');
    c_bench->add_option("--n", bench.n, "max frequency");
    c_bench->add_option("--reps", bench.repetitions, "repetitions per scale (min is reported)");
    c_bench->add_option("--seed", bench.seed, "synthetic feature-map seed");
    c_bench->add_option("--threads", bench.threads, "worker threads (0 = auto)");
    add_report_flags(c_bench);
    c_bench->callback([&] {
        auto rep = ope::cmd_bench(bench);
        rep.write(report_fmt, report_path);
        exit_code = rep.passed ? 0 : 1;
    });

    // ablation
    ope::AblationOptions ab;
    std::string ab_dataset_dir;
    auto* c_ab = app.add_subcommand("ablation", "round-trip PSNR in all four ensemble modes");
    c_ab->add_option("images", ab.images, "input images (PPM/PNG)");
    c_ab->add_option("--dataset-dir", ab_dataset_dir, "directory of images to add");
    c_ab->add_option("--r", ab.r, "downscale factor");
    c_ab->add_option("--n", ab.n, "max frequency");
    c_ab->add_option("--threads", ab.threads, "worker threads (0 = auto)");
    add_report_flags(c_ab);
    c_ab->callback([&] {
        collect_images(ab.images, ab_dataset_dir);
        auto rep = ope::cmd_ablation(ab);
        rep.write(report_fmt, report_path);
        exit_code = rep.passed ? 0 : 1;
    });

    // encode
    std::string enc_in, enc_out;
    int enc_r = 4, enc_n = 3, enc_threads = 0;
    auto* c_enc = app.add_subcommand("encode", "project an image into an OPEF latent grid");
    c_enc->add_option("input", enc_in, "input image")->required();
    c_enc->add_option("--r", enc_r, "downscale factor");
    c_enc->add_option("--n", enc_n, "max frequency");
    c_enc->add_option("--out", enc_out, "output .opef path")->required();
    c_enc->add_option("--threads", enc_threads, "worker threads (0 = auto)");
    c_enc->callback([&] {
        const ope::Image img = ope::load_image(enc_in);
        ope::write_opef(ope::encode_image(img, enc_r, ope::OpeConfig(enc_n), enc_threads), enc_out);
    });

    // render
    std::string ren_in, ren_out, ren_size, ren_mode = "full";
    double ren_scale = 0.0;
    int ren_threads = 0;
    auto* c_ren = app.add_subcommand("render", "render an OPEF latent grid to an image");
    c_ren->add_option("input", ren_in, "input .opef file")->required();
    c_ren->add_option("--scale", ren_scale, "output scale relative to the latent grid");
    c_ren->add_option("--size", ren_size, "explicit output size HxW");
    c_ren->add_option("--mode", ren_mode, "ensemble mode")
        ->check(CLI::IsMember({"full", "no-ext", "no-interp", "none"}));
    c_ren->add_option("--out", ren_out, "output image path")->required();
    c_ren->add_option("--threads", ren_threads, "worker threads (0 = auto)");
    c_ren->callback([&] {
        const ope::FeatureMap fm = ope::read_opef(ren_in);
        int rows = 0, cols = 0;
        if (!ren_size.empty()) {
            std::tie(rows, cols) = parse_size(ren_size);
        } else if (ren_scale > 0.0) {
            rows = std::max(1, int(std::lround(fm.grid.rows * ren_scale)));
            cols = std::max(1, int(std::lround(fm.grid.cols * ren_scale)));
        } else {
            throw CLI::ValidationError("render", "need --scale > 0 or --size HxW");
        }
        ope::save_image(
            ope::render_image(fm, rows, cols, ope::ensemble_mode_from_string(ren_mode), ren_threads),
            ren_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
