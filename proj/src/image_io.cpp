#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <vector>

#include "ope/image_io.hpp"

namespace ope {

namespace {

using Kind = ImageIoError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& what) { throw ImageIoError(kind, what); }

// --- PPM (P6, 8-bit) ---------------------------------------------------------

// Next header token, skipping whitespace and # comments.
std::string ppm_token(std::istream& in) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#')
            while (c != EOF && c != '\n') c = in.get();
        c = in.get();
    }
    std::string tok;
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(char(c));
        c = in.get();
    }
    return tok;
}

int ppm_int(std::istream& in, const char* name) {
    const std::string tok = ppm_token(in);
    if (tok.empty()) fail(Kind::MalformedHeader, std::string("ppm: missing ") + name);
    int v = 0;
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            fail(Kind::MalformedHeader, std::string("ppm: non-numeric ") + name + " '" + tok + "'");
        v = v * 10 + (ch - '0');
        if (v > 1 << 28) fail(Kind::MalformedHeader, std::string("ppm: oversized ") + name);
    }
    return v;
}

Image load_ppm(std::istream& in) {
    // magic already verified by the dispatcher; consume it
    ppm_token(in);
    const int cols = ppm_int(in, "width");
    const int rows = ppm_int(in, "height");
    const int maxval = ppm_int(in, "maxval");
    if (cols < 1 || rows < 1) fail(Kind::MalformedHeader, "ppm: zero dimension");
    if (maxval != 255) fail(Kind::UnsupportedFormat, "ppm: only maxval 255 is supported");
    // exactly one whitespace byte separates header and payload; ppm_int
    // consumed it as the token terminator
    std::vector<unsigned char> buf(std::size_t(rows) * cols * 3);
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (std::size_t(in.gcount()) != buf.size()) fail(Kind::TruncatedPayload, "ppm: short pixel payload");
    Image img(rows, cols, 3);
    for (std::size_t k = 0; k < buf.size(); ++k) img.values[Eigen::Index(k)] = buf[k] / 255.0;
    return img;
}

void save_ppm(const Image& img, const std::string& path) {
    if (img.channels != 3 && img.channels != 1)
        fail(Kind::UnsupportedFormat, "ppm: only 1- or 3-channel images");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P6\n" << img.cols << ' ' << img.rows << "\n255\n";
    std::vector<unsigned char> buf;
    buf.reserve(std::size_t(img.rows) * img.cols * 3);
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c)
            for (int ch = 0; ch < 3; ++ch) {
                const double v = img.at(r, c, img.channels == 1 ? 0 : ch);
                buf.push_back(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
            }
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    if (!out) throw std::runtime_error("short write: " + path);
}

// --- PNG (8-bit RGB / gray) --------------------------------------------------

struct PngRead {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* f = nullptr;
    bool header_done = false;
    ~PngRead() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (f) std::fclose(f);
    }
};

Image load_png(const std::string& path) {
    PngRead ctx;
    ctx.f = std::fopen(path.c_str(), "rb");
    if (!ctx.f) throw std::runtime_error("cannot open: " + path);
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw std::runtime_error("png: allocation failure");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw std::runtime_error("png: allocation failure");

    std::vector<unsigned char> pixels;
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(ctx.png)))
        fail(ctx.header_done ? Kind::TruncatedPayload : Kind::MalformedHeader,
             "png: " + std::string(ctx.header_done ? "failed reading pixels" : "bad header") +
                 " in " + path);

    png_init_io(ctx.png, ctx.f);
    png_read_info(ctx.png, ctx.info);

    // normalize everything to 8-bit gray or RGB
    png_set_strip_16(ctx.png);
    png_set_strip_alpha(ctx.png);
    png_set_packing(ctx.png);
    const int color = png_get_color_type(ctx.png, ctx.info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
    if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(ctx.png, ctx.info) < 8)
        png_set_expand_gray_1_2_4_to_8(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    const int rows = int(png_get_image_height(ctx.png, ctx.info));
    const int cols = int(png_get_image_width(ctx.png, ctx.info));
    const int channels = int(png_get_channels(ctx.png, ctx.info));
    if (rows < 1 || cols < 1 || (channels != 1 && channels != 3))
        fail(Kind::MalformedHeader, "png: unsupported layout in " + path);
    ctx.header_done = true;

    pixels.resize(std::size_t(rows) * cols * channels);
    row_ptrs.resize(rows);
    for (int r = 0; r < rows; ++r) row_ptrs[r] = pixels.data() + std::size_t(r) * cols * channels;
    png_read_image(ctx.png, row_ptrs.data());
    png_read_end(ctx.png, nullptr);

    Image img(rows, cols, channels);
    for (std::size_t k = 0; k < pixels.size(); ++k) img.values[Eigen::Index(k)] = pixels[k] / 255.0;
    return img;
}

struct PngWrite {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* f = nullptr;
    ~PngWrite() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (f) std::fclose(f);
    }
};

void save_png(const Image& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3)
        fail(Kind::UnsupportedFormat, "png: only 1- or 3-channel images");
    PngWrite ctx;
    ctx.f = std::fopen(path.c_str(), "wb");
    if (!ctx.f) throw std::runtime_error("cannot open for writing: " + path);
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) throw std::runtime_error("png: allocation failure");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw std::runtime_error("png: allocation failure");

    std::vector<unsigned char> pixels(std::size_t(img.rows) * img.cols * img.channels);
    std::vector<png_bytep> row_ptrs(img.rows);
    if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("png: write failure: " + path);

    png_init_io(ctx.png, ctx.f);
    png_set_IHDR(ctx.png, ctx.info, png_uint_32(img.cols), png_uint_32(img.rows), 8,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    for (Eigen::Index k = 0; k < img.values.size(); ++k)
        pixels[std::size_t(k)] =
            static_cast<unsigned char>(std::lround(std::clamp(img.values[k], 0.0, 1.0) * 255.0));
    for (int r = 0; r < img.rows; ++r)
        row_ptrs[r] = pixels.data() + std::size_t(r) * img.cols * img.channels;
    png_set_rows(ctx.png, ctx.info, row_ptrs.data());
    png_write_png(ctx.png, ctx.info, PNG_TRANSFORM_IDENTITY, nullptr);
}

const unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

}  // namespace

Image load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    unsigned char sig[8] = {};
    in.read(reinterpret_cast<char*>(sig), 8);
    const std::streamsize got = in.gcount();
    if (got >= 8 && std::equal(sig, sig + 8, kPngSig)) {
        in.close();
        return load_png(path);
    }
    if (got >= 2 && sig[0] == 'P' && sig[1] == '6') {
        in.clear();
        in.seekg(0);
        return load_ppm(in);
    }
    if (got >= 2 && sig[0] == 'P' && std::isdigit(sig[1]))
        fail(Kind::UnsupportedFormat, "only binary P6 PPM is supported: " + path);
    fail(Kind::UnsupportedFormat, "unrecognized image format: " + path);
}

void save_image(const Image& img, const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".png") {
        save_png(img, path);
        return;
    }
    save_ppm(img, path);
}

}  // namespace ope
