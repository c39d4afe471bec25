// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ttedge/gemm.hpp"
#include "ttedge/householder.hpp"
#include "ttedge/tensor.hpp"

namespace ttedge {

struct QrOptions {
    // Superdiagonal entry e_i deflates when |e_i| <= rel_tol·(|d_i| + |d_{i+1}|).
    double rel_tol = 1e-14;
    std::size_t max_sweeps_per_dim = 30;

    static QrOptions for_dtype(Dtype dtype);
};

// b = q_l · diag(sigma) · q_r_t
struct BidiagSvd {
    Matrix q_l;
    std::vector<double> sigma;
    Matrix q_r_t;
    std::size_t sweeps = 0;
};

// Implicit-shift (Golub–Kahan) QR on an upper bidiagonal matrix given by its
// diagonal and superdiagonal. Singular values come out non-negative and
// unsorted. Throws NoConvergence after max_sweeps_per_dim·N sweeps.
BidiagSvd diagonalize_bidiagonal(std::span<const double> diag, std::span<const double> superdiag,
                                 GemmExecutor* gemm = nullptr, const QrOptions& opts = {});
BidiagSvd diagonalize_bidiagonal(const Matrix& b, GemmExecutor* gemm = nullptr, const QrOptions& opts = {});

// Thin SVD: u is M×k, v_t is k×N, k = min(M, N).
struct SvdResult {
    Matrix u;
    std::vector<double> sigma;
    Matrix v_t;

    std::size_t rank() const noexcept { return sigma.size(); }
    Matrix reconstruct() const;
};

// Bidiagonalization (HBD phase) followed by bidiagonal QR and the
// U = U_B·Q_L, Vᵀ = Q_Rᵀ·V_Bᵀ compositions (QRDecomp phase).
SvdResult svd(const Matrix& a, GemmExecutor& gemm, const QrOptions& opts = {});

// ind[j] is the original position of the j-th largest singular value.
struct SortPermutation {
    std::vector<std::size_t> ind;
    std::uint64_t compares = 0;
    std::uint64_t swaps = 0;
};

struct SortedSvd {
    SvdResult svd;
    SortPermutation perm;
};

// Descending bubble sort of sigma (swaps only on strict inequality, so ties
// keep their order) and the matching gather of u columns and v_t rows.
SortedSvd sorting_basis(const SvdResult& res, GemmExecutor* gemm = nullptr);

// δ = ε/√(n_dims-1)·‖sigma_first‖₂. ‖sigma_first‖₂ stands in for ‖W‖_F.
double compute_delta(double epsilon, std::size_t n_dims, std::span<const double> sigma_first,
                     GemmExecutor* gemm = nullptr);

// Keeps the leading k terms, k being the smallest 1-based index whose tail
// norm ‖sigma[k..]‖ is below delta; k = rank when no index qualifies.
SvdResult delta_truncation(const SvdResult& sorted, double delta, GemmExecutor* gemm = nullptr);

}  // namespace ttedge
