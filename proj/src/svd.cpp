// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ttedge/error.hpp"

namespace ttedge {

namespace {

struct Rotation {
    double c = 1.0;
    double s = 0.0;
    double r = 0.0;
};

// [c s; -s c] maps (f, g) to (r, 0).
Rotation make_rotation(double f, double g) {
    const double r = std::hypot(f, g);
    if (r == 0.0) return {1.0, 0.0, 0.0};
    return {f / r, g / r, r};
}

// col_j, col_k <- c·col_j + s·col_k, -s·col_j + c·col_k
void rotate_cols(Matrix& m, std::size_t j, std::size_t k, double c, double s) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double a = m(r, j), b = m(r, k);
        m(r, j) = c * a + s * b;
        m(r, k) = -s * a + c * b;
    }
}

// row_j, row_k <- c·row_j + s·row_k, -s·row_j + c·row_k
void rotate_rows(Matrix& m, std::size_t j, std::size_t k, double c, double s) {
    for (std::size_t col = 0; col < m.cols(); ++col) {
        const double a = m(j, col), b = m(k, col);
        m(j, col) = c * a + s * b;
        m(k, col) = -s * a + c * b;
    }
}

class BidiagQr {
public:
    BidiagQr(std::span<const double> diag, std::span<const double> superdiag, GemmExecutor* gemm,
             const QrOptions& opts)
        : n_(diag.size()),
          d_(diag.begin(), diag.end()),
          e_(superdiag.begin(), superdiag.end()),
          q_l_(Matrix::identity(n_)),
          q_r_t_(Matrix::identity(n_)),
          gemm_(gemm),
          opts_(opts) {
        if (e_.size() + 1 != n_ && !(n_ == 0 && e_.empty())) {
            throw Error(ErrorCode::DimMismatch, "superdiagonal must have N-1 entries");
        }
        double bnorm = 0.0;
        for (double v : d_) bnorm = std::max(bnorm, std::abs(v));
        for (double v : e_) bnorm = std::max(bnorm, std::abs(v));
        floor_ = opts_.rel_tol * bnorm;
    }

    BidiagSvd run() {
        const std::size_t max_sweeps = opts_.max_sweeps_per_dim * std::max<std::size_t>(n_, 1);
        std::size_t sweeps = 0;
        std::size_t hi = n_ ? n_ - 1 : 0;
        while (hi > 0) {
            for (std::size_t i = 0; i < hi; ++i) {
                const double tol = std::max(opts_.rel_tol * (std::abs(d_[i]) + std::abs(d_[i + 1])), floor_);
                if (std::abs(e_[i]) <= tol) e_[i] = 0.0;
            }
            if (e_[hi - 1] == 0.0) {
                --hi;
                continue;
            }
            std::size_t lo = hi - 1;
            while (lo > 0 && e_[lo - 1] != 0.0) --lo;

            if (zero_diagonal_split(lo, hi)) continue;

            if (sweeps >= max_sweeps) {
                throw NoConvergence(sweeps, "bidiagonal QR did not converge in " + std::to_string(sweeps) +
                                                " sweeps (N = " + std::to_string(n_) + ")");
            }
            golub_kahan_step(lo, hi);
            ++sweeps;
        }

        for (std::size_t i = 0; i < n_; ++i) {
            if (d_[i] < 0.0) {
                d_[i] = -d_[i];
                for (std::size_t r = 0; r < n_; ++r) q_l_(r, i) = -q_l_(r, i);
            }
        }
        return {std::move(q_l_), std::move(d_), std::move(q_r_t_), sweeps};
    }

private:
    void count_rotation() {
        if (gemm_) gemm_->on_core_flops(6 + 6 * n_);
    }

    // A (numerically) zero d_k in the unreduced block lo..hi splits it once
    // the coupling superdiagonal entry is rotated away.
    bool zero_diagonal_split(std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k <= hi; ++k) {
            if (std::abs(d_[k]) > floor_) continue;
            d_[k] = 0.0;
            if (k < hi) {
                // Chase e_k along row k with rotations from the left.
                double x = e_[k];
                e_[k] = 0.0;
                for (std::size_t j = k + 1; j <= hi; ++j) {
                    const Rotation g = make_rotation(d_[j], x);
                    d_[j] = g.r;
                    rotate_cols(q_l_, j, k, g.c, g.s);
                    count_rotation();
                    if (j < hi) {
                        x = -g.s * e_[j];
                        e_[j] = g.c * e_[j];
                    }
                }
            } else {
                // Chase e_{hi-1} up column hi with rotations from the right.
                double x = e_[hi - 1];
                e_[hi - 1] = 0.0;
                for (std::size_t j = hi; j-- > lo;) {
                    const Rotation g = make_rotation(d_[j], x);
                    d_[j] = g.r;
                    rotate_rows(q_r_t_, j, hi, g.c, g.s);
                    count_rotation();
                    if (j > lo) {
                        x = -g.s * e_[j - 1];
                        e_[j - 1] = g.c * e_[j - 1];
                    }
                }
            }
            return true;
        }
        return false;
    }

    // Wilkinson shift from the trailing 2×2 of BᵀB.
    double wilkinson_shift(std::size_t lo, std::size_t hi) const {
        const double dm = d_[hi - 1], dn = d_[hi], em = e_[hi - 1];
        const double el = hi - 1 > lo ? e_[hi - 2] : 0.0;
        const double t11 = dm * dm + el * el;
        const double t12 = dm * em;
        const double t22 = dn * dn + em * em;
        const double half = (t11 - t22) / 2.0;
        const double root = std::hypot(half, t12);
        const double denom = half + (half >= 0.0 ? root : -root);
        if (denom == 0.0) return t22;
        return t22 - t12 * t12 / denom;
    }

    void golub_kahan_step(std::size_t lo, std::size_t hi) {
        const double mu = wilkinson_shift(lo, hi);
        double y = d_[lo] * d_[lo] - mu;
        double z = d_[lo] * e_[lo];
        for (std::size_t k = lo; k < hi; ++k) {
            Rotation g = make_rotation(y, z);
            if (k > lo) e_[k - 1] = g.r;
            const double dk = d_[k], ek = e_[k], dk1 = d_[k + 1];
            d_[k] = g.c * dk + g.s * ek;
            e_[k] = -g.s * dk + g.c * ek;
            double bulge = g.s * dk1;
            d_[k + 1] = g.c * dk1;
            rotate_rows(q_r_t_, k, k + 1, g.c, g.s);
            count_rotation();

            g = make_rotation(d_[k], bulge);
            d_[k] = g.r;
            const double ek2 = e_[k], dk2 = d_[k + 1];
            e_[k] = g.c * ek2 + g.s * dk2;
            d_[k + 1] = -g.s * ek2 + g.c * dk2;
            rotate_cols(q_l_, k, k + 1, g.c, g.s);
            count_rotation();
            if (k + 1 < hi) {
                bulge = g.s * e_[k + 1];
                e_[k + 1] = g.c * e_[k + 1];
                y = e_[k];
                z = bulge;
            }
        }
    }

    std::size_t n_;
    std::vector<double> d_;
    std::vector<double> e_;
    Matrix q_l_;
    Matrix q_r_t_;
    GemmExecutor* gemm_;
    QrOptions opts_;
    double floor_ = 0.0;
};

}  // namespace

QrOptions QrOptions::for_dtype(Dtype dtype) {
    QrOptions o;
    if (dtype == Dtype::F32) o.rel_tol = 1e-6;
    return o;
}

BidiagSvd diagonalize_bidiagonal(std::span<const double> diag, std::span<const double> superdiag,
                                 GemmExecutor* gemm, const QrOptions& opts) {
    return BidiagQr(diag, superdiag, gemm, opts).run();
}

BidiagSvd diagonalize_bidiagonal(const Matrix& b, GemmExecutor* gemm, const QrOptions& opts) {
    if (b.rows() != b.cols()) throw Error(ErrorCode::ShapeError, "bidiagonal matrix must be square");
    const std::size_t n = b.rows();
    std::vector<double> d(n), e(n ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = b(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = b(i, i + 1);
    return diagonalize_bidiagonal(d, e, gemm, opts);
}

Matrix SvdResult::reconstruct() const {
    Matrix scaled = v_t;
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= sigma[i];
    }
    return matmul_ref(u, scaled);
}

SvdResult svd(const Matrix& a, GemmExecutor& gemm, const QrOptions& opts) {
    if (a.empty()) throw Error(ErrorCode::ShapeError, "svd of an empty matrix");
    if (a.rows() < a.cols()) {
        {
            PhaseScope scope(gemm.trace(), Phase::ReshapeEtc);
            gemm.on_copy(a.size());
        }
        SvdResult t = svd(a.transposed(), gemm, opts);
        PhaseScope scope(gemm.trace(), Phase::ReshapeEtc);
        gemm.on_copy(t.u.size() + t.v_t.size());
        return {t.v_t.transposed(), std::move(t.sigma), t.u.transposed()};
    }

    const BidiagFactorization f = bidiagonalize(a, gemm);
    PhaseScope scope(gemm.trace(), Phase::QRDecomp);
    BidiagSvd inner = diagonalize_bidiagonal(f.diagonal(), f.superdiagonal(), &gemm, opts);
    SvdResult out;
    out.u = gemm.multiply(f.u_b, inner.q_l);
    out.v_t = gemm.multiply(inner.q_r_t, f.v_b_t);
    out.sigma = std::move(inner.sigma);
    return out;
}

SortedSvd sorting_basis(const SvdResult& res, GemmExecutor* gemm) {
    const std::size_t k = res.sigma.size();
    SortedSvd out;
    out.perm.ind.resize(k);
    std::iota(out.perm.ind.begin(), out.perm.ind.end(), std::size_t{0});
    std::vector<double> s = res.sigma;

    for (std::size_t pass = 0; pass + 1 < k; ++pass) {
        bool swapped = false;
        for (std::size_t j = 0; j + 1 < k - pass; ++j) {
            ++out.perm.compares;
            if (s[j] < s[j + 1]) {
                std::swap(s[j], s[j + 1]);
                std::swap(out.perm.ind[j], out.perm.ind[j + 1]);
                ++out.perm.swaps;
                swapped = true;
            }
        }
        if (!swapped) break;
    }

    out.svd.sigma = std::move(s);
    out.svd.u = Matrix(res.u.rows(), k);
    out.svd.v_t = Matrix(k, res.v_t.cols());
    std::uint64_t moved = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = out.perm.ind[j];
        if (src != j) ++moved;
        for (std::size_t r = 0; r < res.u.rows(); ++r) out.svd.u(r, j) = res.u(r, src);
        for (std::size_t c = 0; c < res.v_t.cols(); ++c) out.svd.v_t(j, c) = res.v_t(src, c);
    }
    if (gemm) {
        gemm->on_sort(k, out.perm.compares, out.perm.swaps, moved * (res.u.rows() + res.v_t.cols()));
    }
    return out;
}

double compute_delta(double epsilon, std::size_t n_dims, std::span<const double> sigma_first, GemmExecutor* gemm) {
    if (n_dims < 2) throw Error(ErrorCode::BadDims, "truncation threshold needs at least two dimensions");
    if (!(epsilon >= 0.0)) throw Error(ErrorCode::BadDims, "epsilon must be non-negative");
    if (gemm) gemm->on_norm(sigma_first.size());
    return epsilon / std::sqrt(static_cast<double>(n_dims - 1)) * frobenius_norm(sigma_first);
}

SvdResult delta_truncation(const SvdResult& sorted, double delta, GemmExecutor* gemm) {
    const std::size_t rank = sorted.sigma.size();
    if (rank == 0) return sorted;

    // tail[i] = Σ_{j ≥ i} σ_j², accumulated from the smallest value up.
    std::vector<double> tail(rank + 1, 0.0);
    for (std::size_t i = rank; i-- > 0;) tail[i] = tail[i + 1] + sorted.sigma[i] * sorted.sigma[i];

    // Smallest kept rank r >= 1 whose discarded tail σ[r..] has norm below δ.
    std::size_t keep = rank;
    std::uint64_t checks = 0, examined = 0;
    for (std::size_t r = 1; r < rank; ++r) {
        ++checks;
        examined += rank - r;
        if (std::sqrt(tail[r]) < delta) {
            keep = r;
            break;
        }
    }
    if (gemm) gemm->on_truncation(checks, examined);

    SvdResult out;
    out.u = sorted.u.block(0, 0, sorted.u.rows(), keep);
    out.sigma.assign(sorted.sigma.begin(), sorted.sigma.begin() + static_cast<std::ptrdiff_t>(keep));
    out.v_t = sorted.v_t.block(0, 0, keep, sorted.v_t.cols());
    return out;
}

}  // namespace ttedge
