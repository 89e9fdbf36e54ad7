#pragma once

// Mapping between cell indices, absolute coordinates in [-1,1]^2, relative
// coordinates in a latent code's local frame, and the four-member ensemble
// neighborhood used by the renderer.

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ope {

struct GridSpec {
    int rows = 1;  // cell count along x (height)
    int cols = 1;  // cell count along y (width)

    [[nodiscard]] bool valid() const noexcept { return rows >= 1 && cols >= 1; }
};

// Center of cell k in an m-cell equal partition of [-1,1]. No range check;
// out-of-range k extrapolates the same formula (virtual centers past the
// border, spacing 2/m preserved).
inline double virtual_center(int k, int m) { return -1.0 + (2.0 * k + 1.0) / m; }

inline double cell_center(int k, int m) {
    if (k < 0 || k >= m) throw std::out_of_range("cell_center: cell index outside [0, m)");
    return virtual_center(k, m);
}

// Relative coordinates of query q in the frame of a latent centered at
// `center`, extended convention: ((x_q-x_t)*rows/2, (y_q-y_t)*cols/2).
// A query one cell away from the center maps to +-1, so the four ensemble
// members' coordinates stay inside [-1,1]^2 for interior queries.
inline Eigen::Vector2d relative_coords_ext(const Eigen::Vector2d& q, const Eigen::Vector2d& center,
                                           const GridSpec& grid) {
    return {(q.x() - center.x()) * grid.rows * 0.5, (q.y() - center.y()) * grid.cols * 0.5};
}

// Base convention, without the /2 extension: ((x_q-x_t)*rows, (y_q-y_t)*cols).
// Used only by the reduced ensemble modes.
inline Eigen::Vector2d relative_coords_base(const Eigen::Vector2d& q, const Eigen::Vector2d& center,
                                            const GridSpec& grid) {
    return {(q.x() - center.x()) * grid.rows, (q.y() - center.y()) * grid.cols};
}

// The four latent codes surrounding a query: member order t in {00,01,10,11},
// t = 2a+b where a picks the low/high cell along x and b along y.
struct EnsembleNeighborhood {
    std::array<Eigen::Vector2i, 4> indices;         // clamped to the grid, for fetching
    std::array<Eigen::Vector2d, 4> virtual_centers; // unclamped center coordinates
    std::array<Eigen::Vector2d, 4> rel_coords;      // extended convention vs each center
    Eigen::Vector4d weights;                        // normalized, sum 1
};

// Index of the cell containing q (the nearest real center), clamped.
inline Eigen::Vector2i nearest_index(const Eigen::Vector2d& q, const GridSpec& grid) {
    if (!grid.valid()) throw std::invalid_argument("nearest_index: empty grid");
    if (std::abs(q.x()) > 1.0 || std::abs(q.y()) > 1.0)
        throw std::domain_error("nearest_index: query outside [-1,1]^2");
    const auto pick = [](double t, int m) {
        const int k = int(std::floor((t + 1.0) * m / 2.0));
        return std::clamp(k, 0, m - 1);
    };
    return {pick(q.x(), grid.rows), pick(q.y(), grid.cols)};
}

// The low cell index per axis: the two surrounding virtual centers are at
// lo and lo+1. lo may be -1 and lo+1 may be m at the borders.
inline int low_cell_index(double t, int m) {
    return int(std::floor(((t + 1.0) * m - 1.0) / 2.0));
}

// Build the four-member neighborhood of q: virtual centers from unclamped
// indices, fetch indices clamped, weight of member t proportional to the
// rectangle area between q and the diagonally opposite center (so the weight
// of a code reaches 1 when q sits on it), normalized to sum 1.
inline EnsembleNeighborhood neighborhood(const Eigen::Vector2d& q, const GridSpec& grid) {
    if (!grid.valid()) throw std::invalid_argument("neighborhood: empty grid");
    if (std::abs(q.x()) > 1.0 || std::abs(q.y()) > 1.0)
        throw std::domain_error("neighborhood: query outside [-1,1]^2");

    const int xlo = low_cell_index(q.x(), grid.rows);
    const int ylo = low_cell_index(q.y(), grid.cols);
    const double cx[2] = {virtual_center(xlo, grid.rows), virtual_center(xlo + 1, grid.rows)};
    const double cy[2] = {virtual_center(ylo, grid.cols), virtual_center(ylo + 1, grid.cols)};

    EnsembleNeighborhood nb;
    Eigen::Vector4d areas;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const int t = 2 * a + b;
            nb.indices[t] = {std::clamp(xlo + a, 0, grid.rows - 1),
                             std::clamp(ylo + b, 0, grid.cols - 1)};
            nb.virtual_centers[t] = {cx[a], cy[b]};
            nb.rel_coords[t] = relative_coords_ext(q, nb.virtual_centers[t], grid);
            // diagonally opposite member's center
            areas[t] = std::abs(q.x() - cx[1 - a]) * std::abs(q.y() - cy[1 - b]);
        }
    }
    const double total = areas[0] + areas[1] + areas[2] + areas[3];
    nb.weights = areas / total;
    return nb;
}

}  // namespace ope
