// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

// Test-only oracles. None of these share code paths with the library
// beyond the Matrix/Tensor containers.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ttedge/tensor.hpp"
#include "ttedge/tt.hpp"

namespace oracle {

using ttedge::Matrix;
using ttedge::Tensor;

inline double max_abs(const Matrix& m) {
    double v = 0.0;
    for (double x : m.data()) v = std::max(v, std::abs(x));
    return v;
}

inline Matrix naive_mul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t k = 0; k < a.cols(); ++k) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    }
    return c;
}

inline Matrix gram(const Matrix& a) { return naive_mul(a.transposed(), a); }

// ‖QᵀQ - I‖_max for the columns of q.
inline double column_orthogonality_defect(const Matrix& q) {
    Matrix g = gram(q);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return max_abs(g);
}

// ‖QQᵀ - I‖_max for the rows of q.
inline double row_orthogonality_defect(const Matrix& q) { return column_orthogonality_defect(q.transposed()); }

// H = I - 2vvᵀ/(vᵀv)
inline Matrix explicit_reflector(const std::vector<double>& v) {
    const std::size_t n = v.size();
    double vv = 0.0;
    for (double x : v) vv += x * x;
    Matrix h = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * v[i] * v[j] / vv;
    }
    return h;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(Matrix s, int max_sweeps = 100) {
    const std::size_t n = s.rows();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                total += s(i, j) * s(i, j);
                if (i != j) off += s(i, j) * s(i, j);
            }
        }
        if (off <= 1e-30 * total || off == 0.0) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (s(p, q) == 0.0) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = s(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

// Singular values of a from the eigenvalues of aᵀa (or aaᵀ, whichever is smaller).
inline std::vector<double> singular_values(const Matrix& a) {
    const Matrix g = a.rows() >= a.cols() ? gram(a) : gram(a.transposed());
    auto ev = jacobi_eigenvalues(g);
    for (double& e : ev) e = std::sqrt(std::max(e, 0.0));
    return ev;
}

// Multi-index helpers for row-major tensors.
inline std::vector<std::size_t> unravel(std::size_t flat, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    return idx;
}

inline std::size_t ravel(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
    return flat;
}

// T[i..., j...] = Σ_k X[i..., k]·Y[k, j...] by explicit index enumeration.
inline std::vector<double> contract(const Tensor& x, const Tensor& y) {
    const auto& xd = x.dims();
    const auto& yd = y.dims();
    std::vector<std::size_t> out_dims(xd.begin(), xd.end() - 1);
    out_dims.insert(out_dims.end(), yd.begin() + 1, yd.end());
    std::size_t total = 1;
    for (auto d : out_dims) total *= d;
    std::vector<double> out(total, 0.0);
    const std::size_t nx = xd.size() - 1;
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto idx = unravel(flat, out_dims);
        double acc = 0.0;
        for (std::size_t k = 0; k < xd.back(); ++k) {
            std::vector<std::size_t> xi(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(nx));
            xi.push_back(k);
            std::vector<std::size_t> yi{k};
            yi.insert(yi.end(), idx.begin() + static_cast<std::ptrdiff_t>(nx), idx.end());
            acc += x[ravel(xi, xd)] * y[ravel(yi, yd)];
        }
        out[flat] = acc;
    }
    return out;
}

// W[i_1..i_N] = Σ over all rank tuples of Π_k G_k[r_{k-1}, i_k, r_k].
inline std::vector<double> tt_decode(const ttedge::TTCores& cores) {
    const std::size_t order = cores.cores.size();
    std::vector<std::size_t> dims(order);
    for (std::size_t k = 0; k < order; ++k) dims[k] = cores.cores[k].dims()[1];
    std::vector<std::size_t> inner(cores.ranks.begin() + 1, cores.ranks.end() - 1);
    std::size_t total = 1, rank_tuples = 1;
    for (auto d : dims) total *= d;
    for (auto r : inner) rank_tuples *= r;

    std::vector<double> out(total, 0.0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto idx = unravel(flat, dims);
        double acc = 0.0;
        for (std::size_t rt = 0; rt < rank_tuples; ++rt) {
            std::vector<std::size_t> r{0};
            if (!inner.empty()) {
                auto mid = unravel(rt, inner);
                r.insert(r.end(), mid.begin(), mid.end());
            }
            r.push_back(0);
            double prod = 1.0;
            for (std::size_t k = 0; k < order; ++k) {
                const auto& cd = cores.cores[k].dims();
                prod *= cores.cores[k][ravel({r[k], idx[k], r[k + 1]}, cd)];
            }
            acc += prod;
        }
        out[flat] = acc;
    }
    return out;
}

inline double rel_diff(std::span<const double> a, std::span<const double> b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace oracle
