#pragma once

// One-variable encoding gamma, its 2D separable products, and the numerical
// inner product used to audit orthonormality.

#include <Eigen/Core>
#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>

#include "ope/types.hpp"

namespace ope {

// Value of the one-variable basis function with the given axis index at t.
// All call sites (gamma, basis_eval, projector, renderer) share this single
// definition so their values agree bit for bit.
template <std::floating_point Scalar = double>
Scalar axis_basis(int index, Scalar t) {
    if (index == 0) return Scalar(1);
    const int k = (index + 1) / 2;
    const Scalar angle = (Scalar(k) * std::numbers::pi_v<Scalar>)*t;
    const Scalar s = std::numbers::sqrt2_v<Scalar>;
    return (index % 2 == 1) ? s * std::cos(angle) : s * std::sin(angle);
}

// gamma(t) = [1, sqrt2*cos(pi t), sqrt2*sin(pi t), ..., sqrt2*cos(n pi t),
// sqrt2*sin(n pi t)], length 2n+1. Defined on all reals.
template <std::floating_point Scalar = double>
Eigen::Vector<Scalar, Eigen::Dynamic> gamma(Scalar t, const OpeConfig& cfg) {
    Eigen::Vector<Scalar, Eigen::Dynamic> v(cfg.axis_dim());
    for (int e = 0; e < cfg.axis_dim(); ++e) v[e] = axis_basis(e, t);
    return v;
}

// Rows of gamma evaluated at each entry of ts; shape ts.size() x (2n+1).
template <std::floating_point Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gamma_matrix(
    const Eigen::Ref<const Eigen::Vector<Scalar, Eigen::Dynamic>>& ts, const OpeConfig& cfg) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(ts.size(), cfg.axis_dim());
    for (Eigen::Index r = 0; r < ts.size(); ++r) m.row(r) = gamma(ts[r], cfg).transpose();
    return m;
}

// Full 2D encoding: flat(X^T Y) with X = gamma(x), Y = gamma(y), flattened
// row-major so entry (i,j) lands at i*(2n+1)+j.
template <std::floating_point Scalar = double>
Eigen::Vector<Scalar, Eigen::Dynamic> ope(Scalar x, Scalar y, const OpeConfig& cfg) {
    const auto gx = gamma(x, cfg);
    const auto gy = gamma(y, cfg);
    Eigen::Vector<Scalar, Eigen::Dynamic> out(cfg.dim());
    Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        out.data(), cfg.axis_dim(), cfg.axis_dim()) = gx * gy.transpose();
    return out;
}

// Single 2D basis function value gamma(x)[idx.i] * gamma(y)[idx.j].
template <std::floating_point Scalar = double>
Scalar basis_eval(const BasisIndex& idx, Scalar x, Scalar y) {
    if (idx.i < 0 || idx.j < 0) throw std::out_of_range("basis_eval: negative index");
    return axis_basis(idx.i, x) * axis_basis(idx.j, y);
}

// Composite-midpoint approximation of (1/4) * integral of fa*fb over
// [-1,1]^2: m^2 cell-center samples, weight (2/m)^2 each, overall factor 1/4.
template <class Fa, class Fb>
double inner_product(Fa&& fa, Fb&& fb, int m) {
    if (m < 1) throw std::invalid_argument("inner_product: m must be >= 1");
    double acc = 0.0;
    for (int a = 0; a < m; ++a) {
        const double x = -1.0 + (2.0 * a + 1.0) / m;
        for (int b = 0; b < m; ++b) {
            const double y = -1.0 + (2.0 * b + 1.0) / m;
            acc += fa(x, y) * fb(x, y);
        }
    }
    return acc / (double(m) * double(m));
}

// Per-axis quadrature Gram of the 2n+1 one-variable functions at m midpoints:
// (1/m) * G^T G with G = gamma_matrix at the cell centers. The 2D Gram is the
// elementwise product G1(i1,i2)*G1(j1,j2) because midpoint quadrature of a
// separable integrand factorizes over axes exactly.
template <std::floating_point Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> axis_gram(const OpeConfig& cfg, int m) {
    if (m < 1) throw std::invalid_argument("axis_gram: m must be >= 1");
    Eigen::Vector<Scalar, Eigen::Dynamic> ts(m);
    for (int a = 0; a < m; ++a) ts[a] = Scalar(-1) + (Scalar(2) * a + Scalar(1)) / Scalar(m);
    const auto g = gamma_matrix<Scalar>(ts, cfg);
    return (g.transpose() * g) / Scalar(m);
}

// Full (2n+1)^2 x (2n+1)^2 Gram of the 2D basis under the same quadrature,
// rows/cols in flat index order.
template <std::floating_point Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram_2d(const OpeConfig& cfg, int m) {
    const auto g1 = axis_gram<Scalar>(cfg, m);
    const int ad = cfg.axis_dim();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g(cfg.dim(), cfg.dim());
    for (int i1 = 0; i1 < ad; ++i1)
        for (int j1 = 0; j1 < ad; ++j1)
            for (int i2 = 0; i2 < ad; ++i2)
                for (int j2 = 0; j2 < ad; ++j2)
                    g(i1 * ad + j1, i2 * ad + j2) = g1(i1, i2) * g1(j1, j2);
    return g;
}

}  // namespace ope
