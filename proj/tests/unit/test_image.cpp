#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "ope/image.hpp"
#include "ope/image_io.hpp"
#include "ope/types.hpp"

namespace fs = std::filesystem;
using ope::FlipAxis;
using ope::Image;
using ope::ImageIoError;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ope_unit_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary);
  f.write(bytes.data(), std::streamsize(bytes.size()));
}

Image random_image(int rows, int cols, int channels, unsigned seed) {
  Image img(rows, cols, channels);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (Eigen::Index i = 0; i < img.values.size(); ++i) img.values[i] = dist(rng);
  return img;
}

// snap every value onto the k/255 lattice so file IO is lossless
Image quantized(const Image& img) {
  Image out = img;
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    out.values[i] = std::round(out.values[i] * 255.0) / 255.0;
  return out;
}

}  // namespace

TEST_CASE("psnr reference points") {
  const Image a = Image::constant(4, 5, 3, 0.3);
  const Image b = Image::constant(4, 5, 3, 0.4);
  // uniform error of 0.1 -> MSE 0.01 -> 20 dB
  CHECK(ope::psnr(a, b) == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(ope::psnr(b, a) == doctest::Approx(20.0).epsilon(1e-9));

  const Image black = Image::constant(2, 2, 1, 0.0);
  const Image white = Image::constant(2, 2, 1, 1.0);
  CHECK(ope::psnr(black, white) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(ope::psnr(a, a)));
  CHECK(ope::psnr(a, a) > 0.0);

  CHECK_THROWS_AS(ope::psnr(a, black), std::invalid_argument);
}

TEST_CASE("bicubic resize to the same size is the identity") {
  const Image img = random_image(7, 9, 3, 41);
  const Image out = ope::bicubic_resize(img, 7, 9);
  REQUIRE(out.same_shape(img));
  // integer-aligned sampling has zero fractional phase, so the kernel
  // degenerates to a unit tap
  CHECK((out.values - img.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bicubic resize preserves constants at any size") {
  const Image img = Image::constant(6, 6, 3, 0.42);
  for (const auto& [r, c] : {std::pair{3, 3}, {12, 12}, {17, 5}}) {
    const Image out = ope::bicubic_resize(img, r, c);
    REQUIRE(out.rows == r);
    REQUIRE(out.cols == c);
    for (Eigen::Index i = 0; i < out.values.size(); ++i)
      CHECK(out.values[i] == doctest::Approx(0.42).epsilon(1e-12));
  }
}

TEST_CASE("bicubic half-phase taps follow the a=-0.5 kernel") {
  // Downscaling one row of 4 to 2 samples puts both outputs at fractional
  // phase 0.5, where the kernel taps are (-1/16, 9/16, 9/16, -1/16) with
  // edge replication. Expected values hand-computed from that stencil.
  Image img(1, 4, 1);
  img.at(0, 0, 0) = 0.2;
  img.at(0, 1, 0) = 0.4;
  img.at(0, 2, 0) = 0.8;
  img.at(0, 3, 0) = 0.6;
  const Image out = ope::bicubic_resize(img, 1, 2);
  CHECK(out.at(0, 0, 0) == doctest::Approx(0.275).epsilon(1e-12));
  CHECK(out.at(0, 1, 0) == doctest::Approx(0.725).epsilon(1e-12));
}

TEST_CASE("bicubic output is clamped to [0,1]") {
  Image img(1, 8, 1);
  for (int c = 0; c < 8; ++c) img.at(0, c, 0) = c % 2 ? 1.0 : 0.0;
  const Image out = ope::bicubic_resize(img, 1, 16);
  CHECK(out.values.minCoeff() >= 0.0);
  CHECK(out.values.maxCoeff() <= 1.0);
}

TEST_CASE("image flips reverse one axis and compose to the identity") {
  Image img(2, 1, 1);
  img.at(0, 0, 0) = 0.1;
  img.at(1, 0, 0) = 0.9;
  const Image h = ope::flip_image(img, FlipAxis::Horizontal);
  CHECK(h.at(0, 0, 0) == 0.9);
  CHECK(h.at(1, 0, 0) == 0.1);
  const Image hv = ope::flip_image(img, FlipAxis::Vertical);
  CHECK(hv.values == img.values);  // single column, nothing to reverse

  Image wide(1, 2, 3);
  for (int ch = 0; ch < 3; ++ch) {
    wide.at(0, 0, ch) = 0.2 + 0.1 * ch;
    wide.at(0, 1, ch) = 0.8 - 0.1 * ch;
  }
  const Image v = ope::flip_image(wide, FlipAxis::Vertical);
  for (int ch = 0; ch < 3; ++ch) {
    CHECK(v.at(0, 0, ch) == wide.at(0, 1, ch));
    CHECK(v.at(0, 1, ch) == wide.at(0, 0, ch));
  }

  const Image rnd = random_image(5, 7, 3, 43);
  for (const FlipAxis axis : {FlipAxis::Horizontal, FlipAxis::Vertical}) {
    const Image twice = ope::flip_image(ope::flip_image(rnd, axis), axis);
    CHECK(twice.values == rnd.values);
  }
}

TEST_CASE("ppm round trip is lossless on the 8-bit lattice") {
  const Image img = quantized(random_image(6, 4, 3, 47));
  const fs::path p = temp_file("roundtrip.ppm");
  ope::save_image(img, p.string());
  const Image back = ope::load_image(p.string());
  REQUIRE(back.same_shape(img));
  CHECK(back.values == img.values);

  const Image gray = quantized(random_image(3, 5, 1, 49));
  const fs::path pg = temp_file("roundtrip_gray.ppm");
  ope::save_image(gray, pg.string());
  const Image gback = ope::load_image(pg.string());
  // gray PPM is stored as RGB with equal channels
  REQUIRE(gback.channels == 3);
  for (int r = 0; r < gray.rows; ++r)
    for (int c = 0; c < gray.cols; ++c)
      for (int ch = 0; ch < 3; ++ch) CHECK(gback.at(r, c, ch) == gray.at(r, c, 0));
}

TEST_CASE("ppm header handling") {
  const fs::path ok = temp_file("ok.ppm");
  write_bytes(ok, std::string("P6\n# comment\n2 2\n255\n") + std::string(12, '\x40'));
  const Image img = ope::load_image(ok.string());
  CHECK(img.rows == 2);
  CHECK(img.cols == 2);
  CHECK(img.channels == 3);
  CHECK(img.at(0, 0, 0) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));

  const fs::path ascii = temp_file("ascii.ppm");
  write_bytes(ascii, "P3\n2 2\n255\n0 0 0 0 0 0 0 0 0 0 0 0\n");
  CHECK_THROWS_AS(ope::load_image(ascii.string()), ImageIoError);
  try {
    ope::load_image(ascii.string());
  } catch (const ImageIoError& e) {
    CHECK(e.kind() == ImageIoError::Kind::UnsupportedFormat);
  }

  const fs::path deep = temp_file("deep.ppm");
  write_bytes(deep, std::string("P6\n2 2\n65535\n") + std::string(24, '\x00'));
  try {
    ope::load_image(deep.string());
    FAIL("16-bit maxval should be rejected");
  } catch (const ImageIoError& e) {
    CHECK(e.kind() == ImageIoError::Kind::UnsupportedFormat);
  }

  const fs::path garbled = temp_file("garbled.ppm");
  write_bytes(garbled, "P6\ntwo two\n255\n");
  try {
    ope::load_image(garbled.string());
    FAIL("non-numeric dimensions should be rejected");
  } catch (const ImageIoError& e) {
    CHECK(e.kind() == ImageIoError::Kind::MalformedHeader);
  }

  const fs::path cut = temp_file("cut.ppm");
  write_bytes(cut, std::string("P6\n2 2\n255\n") + std::string(5, '\x10'));
  try {
    ope::load_image(cut.string());
    FAIL("short payload should be rejected");
  } catch (const ImageIoError& e) {
    CHECK(e.kind() == ImageIoError::Kind::TruncatedPayload);
  }

  CHECK_THROWS_AS(ope::load_image((temp_file("missing_dir") / "nope.ppm").string()),
                  std::runtime_error);
}

TEST_CASE("png round trip is lossless on the 8-bit lattice") {
  const Image img = quantized(random_image(5, 6, 3, 53));
  const fs::path p = temp_file("roundtrip.png");
  ope::save_image(img, p.string());
  const Image back = ope::load_image(p.string());
  REQUIRE(back.same_shape(img));
  CHECK(back.values == img.values);

  const Image gray = quantized(random_image(4, 4, 1, 59));
  const fs::path pg = temp_file("gray.png");
  ope::save_image(gray, pg.string());
  const Image gback = ope::load_image(pg.string());
  REQUIRE(gback.channels == 1);
  CHECK(gback.values == gray.values);
}

TEST_CASE("truncated png payload is reported as truncated") {
  const Image img = quantized(random_image(8, 8, 3, 61));
  const fs::path p = temp_file("full.png");
  ope::save_image(img, p.string());
  std::ifstream f(p, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() > 64);
  const fs::path cut = temp_file("cut.png");
  write_bytes(cut, bytes.substr(0, bytes.size() / 2));
  try {
    ope::load_image(cut.string());
    FAIL("short png should be rejected");
  } catch (const ImageIoError& e) {
    CHECK(e.kind() == ImageIoError::Kind::TruncatedPayload);
  }
}

TEST_CASE("unknown container bytes are an unsupported format") {
  const fs::path p = temp_file("junk.bin");
  write_bytes(p, "BM0000junkjunkjunk");
  try {
    ope::load_image(p.string());
    FAIL("junk should be rejected");
  } catch (const ImageIoError& e) {
    CHECK(e.kind() == ImageIoError::Kind::UnsupportedFormat);
  }
}
