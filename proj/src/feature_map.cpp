#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "ope/feature_map.hpp"

namespace ope {

namespace {

// Whether the one-variable basis factor at this axis index is a sine term
// (odd under mirroring): indices 2, 4, ..., 2n.
bool is_sine_index(int axis_index) { return axis_index > 0 && axis_index % 2 == 0; }

FeatureMap flip_cells(const FeatureMap& fm, FlipAxis axis, bool parity_correct) {
    FeatureMap out(fm.grid, fm.channels, fm.cfg);
    const int ad = fm.cfg.axis_dim();
    for (int r = 0; r < fm.grid.rows; ++r) {
        const int sr = axis == FlipAxis::Horizontal ? fm.grid.rows - 1 - r : r;
        for (int c = 0; c < fm.grid.cols; ++c) {
            const int sc = axis == FlipAxis::Vertical ? fm.grid.cols - 1 - c : c;
            for (int ch = 0; ch < fm.channels; ++ch) {
                const float* src = fm.cell(sr, sc, ch);
                float* dst = out.cell(r, c, ch);
                for (int i = 0; i < ad; ++i)
                    for (int j = 0; j < ad; ++j) {
                        const bool negate =
                            parity_correct &&
                            is_sine_index(axis == FlipAxis::Horizontal ? i : j);
                        dst[i * ad + j] = negate ? -src[i * ad + j] : src[i * ad + j];
                    }
            }
        }
    }
    return out;
}

}  // namespace

FeatureMap flip(const FeatureMap& fm, FlipAxis axis) { return flip_cells(fm, axis, true); }

FeatureMap flip_spatial(const FeatureMap& fm, FlipAxis axis) { return flip_cells(fm, axis, false); }

FeatureMap random_feature_map(GridSpec grid, int channels, OpeConfig cfg, std::uint32_t seed) {
    FeatureMap fm(grid, channels, cfg);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> dc(0.3f, 0.7f);
    const float s = 0.35f / float(cfg.axis_dim());
    std::uniform_real_distribution<float> ac(-s, s);
    for (float& v : fm.data) v = ac(rng);
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c)
            for (int ch = 0; ch < channels; ++ch) fm.cell(r, c, ch)[0] = dc(rng);
    return fm;
}

namespace {

constexpr char kMagic[4] = {'O', 'P', 'E', 'F'};
constexpr std::uint32_t kVersion = 1;
// refuse absurd payloads before allocating (16 GiB of coefficients)
constexpr std::uint64_t kMaxCoefficients = std::uint64_t(1) << 32;

void put_u32(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw OpefError(OpefError::Kind::Truncated, "opef: truncated header");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

}  // namespace

void write_opef(const FeatureMap& fm, std::ostream& sink) {
    sink.write(kMagic, 4);
    put_u32(sink, kVersion);
    put_u32(sink, std::uint32_t(fm.grid.rows));
    put_u32(sink, std::uint32_t(fm.grid.cols));
    put_u32(sink, std::uint32_t(fm.channels));
    put_u32(sink, std::uint32_t(fm.cfg.n));
    static_assert(std::endian::native == std::endian::little,
                  "coefficient payload below is written via memcpy");
    sink.write(reinterpret_cast<const char*>(fm.data.data()),
               std::streamsize(fm.data.size() * sizeof(float)));
    if (!sink) throw std::runtime_error("opef: write failure");
}

FeatureMap read_opef(std::istream& source) {
    char magic[4];
    source.read(magic, 4);
    if (source.gcount() != 4) throw OpefError(OpefError::Kind::Truncated, "opef: truncated header");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw OpefError(OpefError::Kind::BadMagic,
                        "opef: bad magic '" + std::string(magic, 4) + "'");
    const std::uint32_t version = get_u32(source);
    if (version != kVersion)
        throw OpefError(OpefError::Kind::BadVersion,
                        "opef: unsupported version " + std::to_string(version));
    const std::uint64_t h = get_u32(source);
    const std::uint64_t w = get_u32(source);
    const std::uint64_t c = get_u32(source);
    const std::uint64_t n = get_u32(source);

    for (const std::uint64_t f : {h, w, c})
        if (f > std::uint64_t(std::numeric_limits<int>::max()))
            throw OpefError(OpefError::Kind::SizeOverflow, "opef: dimension overflow");
    const std::uint64_t ad = 2 * n + 1;  // <= 2^33, no overflow in u64
    std::uint64_t count = ad * ad;
    if (ad > (std::uint64_t(1) << 31) || count / ad != ad)
        throw OpefError(OpefError::Kind::SizeOverflow, "opef: basis dimension overflow");
    for (const std::uint64_t f : {h, w, c}) {
        if (f != 0 && count > kMaxCoefficients / f)
            throw OpefError(OpefError::Kind::SizeOverflow, "opef: payload size overflow");
        count *= f;
    }
    if (count > kMaxCoefficients)
        throw OpefError(OpefError::Kind::SizeOverflow, "opef: payload size overflow");

    FeatureMap fm(GridSpec{int(h), int(w)}, int(c), OpeConfig(int(n)));
    static_assert(std::endian::native == std::endian::little,
                  "coefficient payload below is read via memcpy");
    source.read(reinterpret_cast<char*>(fm.data.data()),
                std::streamsize(count * sizeof(float)));
    if (std::uint64_t(source.gcount()) != count * sizeof(float))
        throw OpefError(OpefError::Kind::Truncated, "opef: truncated payload");
    return fm;
}

void write_opef(const FeatureMap& fm, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_opef(fm, out);
}

FeatureMap read_opef(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_opef(in);
}

}  // namespace ope
