#pragma once

// Grid of per-channel latent coefficient vectors, the exact flip transform,
// and the OPEF binary file format.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ope/geometry.hpp"
#include "ope/types.hpp"

namespace ope {

// h x w grid of latent codes, one (2n+1)^2 coefficient vector per channel per
// cell. Storage is single precision, layout [row][col][channel][coefficient];
// arithmetic on loaded coefficients happens in double downstream.
struct FeatureMap {
    GridSpec grid;
    int channels = 0;
    OpeConfig cfg;
    std::vector<float> data;

    FeatureMap() = default;
    FeatureMap(GridSpec grid_, int channels_, OpeConfig cfg_)
        : grid(grid_), channels(channels_), cfg(cfg_) {
        if (!grid.valid() || channels < 1)
            throw std::invalid_argument("FeatureMap: grid and channels must be >= 1");
        data.assign(std::size_t(grid.rows) * grid.cols * channels * cfg.dim(), 0.0f);
    }

    [[nodiscard]] std::size_t cell_offset(int r, int c, int ch) const noexcept {
        return ((std::size_t(r) * grid.cols + c) * channels + ch) * cfg.dim();
    }
    [[nodiscard]] const float* cell(int r, int c, int ch) const { return data.data() + cell_offset(r, c, ch); }
    float* cell(int r, int c, int ch) { return data.data() + cell_offset(r, c, ch); }

    bool operator==(const FeatureMap& o) const {
        return grid.rows == o.grid.rows && grid.cols == o.grid.cols &&
               channels == o.channels && cfg.n == o.cfg.n && data == o.data;
    }
};

// Coefficient transform of the represented function under spatial mirroring:
// reverses cell order along the axis and negates every coefficient whose
// basis factor on that axis is a sine term (axis indices 2, 4, ..., 2n), so
// rendering commutes with flipping.
FeatureMap flip(const FeatureMap& fm, FlipAxis axis);

// Cell reorder only, without the sine sign correction. Does not commute with
// rendering; kept so the flip check can report the discrepancy.
FeatureMap flip_spatial(const FeatureMap& fm, FlipAxis axis);

// Deterministic synthetic map for benchmarks and property tests: per channel,
// DC coefficient uniform in [0.3, 0.7] and the rest uniform in +-0.35/(2n+1).
FeatureMap random_feature_map(GridSpec grid, int channels, OpeConfig cfg, std::uint32_t seed);

class OpefError : public std::runtime_error {
  public:
    enum class Kind { BadMagic, BadVersion, Truncated, SizeOverflow };

    OpefError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

// OPEF format, little-endian: magic "OPEF", version u32 = 1, h u32, w u32,
// channels u32, n u32, then h*w*channels*(2n+1)^2 IEEE binary32 values in
// [row][col][channel][coefficient] order. Round-trips bit-exactly.
void write_opef(const FeatureMap& fm, std::ostream& sink);
FeatureMap read_opef(std::istream& source);

void write_opef(const FeatureMap& fm, const std::string& path);
FeatureMap read_opef(const std::string& path);

}  // namespace ope
