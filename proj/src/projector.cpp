#include <stdexcept>

#include "ope/basis.hpp"
#include "ope/parallel.hpp"
#include "ope/projector.hpp"

namespace ope {

namespace {

// Shared core so encode_image (which precomputes the basis matrix once) and
// project_window (which builds it per call) produce identical values:
// flat(Gx^T V Gy) * scale, row-major.
Eigen::VectorXd project_with(const Eigen::MatrixXd& gx, const Eigen::MatrixXd& gy,
                             const Eigen::MatrixXd& samples, double scale) {
    const Eigen::MatrixXd z = gx.transpose() * samples * gy * scale;
    Eigen::VectorXd flat(z.rows() * z.cols());
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        flat.data(), z.rows(), z.cols()) = z;
    return flat;
}

// Symmetric reflection with the edge pixel repeated: -1 -> 0, N -> N-1.
int reflect_index(int k, int n) {
    while (k < 0 || k >= n) k = k < 0 ? -k - 1 : 2 * n - 1 - k;
    return k;
}

}  // namespace

Eigen::VectorXd project_window(const Eigen::MatrixXd& samples, const Eigen::VectorXd& xs,
                               const Eigen::VectorXd& ys, const OpeConfig& cfg) {
    const Eigen::Index side = samples.rows();
    if (samples.cols() != side || side < 2 || side % 2 != 0)
        throw std::invalid_argument("project_window: window must be square with even side >= 2");
    if (xs.size() != side || ys.size() != side)
        throw std::invalid_argument("project_window: coordinate count does not match window side");
    const double r = double(side) / 2.0;
    return project_with(gamma_matrix<double>(xs, cfg), gamma_matrix<double>(ys, cfg), samples,
                        0.25 / (r * r));
}

FeatureMap encode_image(const Image& img, int r, const OpeConfig& cfg, int threads) {
    if (r < 1) throw std::invalid_argument("encode_image: r must be >= 1");
    if (img.rows % r != 0 || img.cols % r != 0)
        throw std::invalid_argument("encode_image: image dimensions must be divisible by r");

    const int h = img.rows / r, w = img.cols / r;
    const OpeConfig eff(encode_frequency_cap(cfg.n, r));
    const int ad = cfg.axis_dim(), ad_eff = eff.axis_dim();
    const int side = 2 * r, fl = r / 2;

    // Window sample coordinates in the latent's extended relative frame are
    // the same for every cell: x' = ((k+0.5) - (i+0.5)*r)/r for image row
    // k = i*r - fl + o.
    Eigen::VectorXd coords(side);
    for (int o = 0; o < side; ++o) coords[o] = ((o - fl) + 0.5 - r / 2.0) / r;
    const Eigen::MatrixXd basis = gamma_matrix<double>(coords, eff);
    const double scale = 0.25 / (double(r) * r);

    FeatureMap fm(GridSpec{h, w}, img.channels, cfg);
    parallel_for_rows(h, threads, [&](int begin, int end) {
        Eigen::MatrixXd window(side, side);
        std::vector<int> rows_idx(side), cols_idx(side);
        for (int i = begin; i < end; ++i) {
            for (int o = 0; o < side; ++o) rows_idx[o] = reflect_index(i * r - fl + o, img.rows);
            for (int j = 0; j < w; ++j) {
                for (int o = 0; o < side; ++o) cols_idx[o] = reflect_index(j * r - fl + o, img.cols);
                for (int ch = 0; ch < img.channels; ++ch) {
                    for (int a = 0; a < side; ++a)
                        for (int b = 0; b < side; ++b)
                            window(a, b) = img.at(rows_idx[a], cols_idx[b], ch);
                    const Eigen::VectorXd z = project_with(basis, basis, window, scale);
                    float* cell = fm.cell(i, j, ch);
                    for (int ii = 0; ii < ad_eff; ++ii)
                        for (int jj = 0; jj < ad_eff; ++jj)
                            cell[ii * ad + jj] = float(z[ii * ad_eff + jj]);
                    // coefficients above the frequency cap stay zero
                }
            }
        }
    });
    return fm;
}

}  // namespace ope
