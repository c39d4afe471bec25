// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/tt.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ttedge/error.hpp"
#include "ttedge/svd.hpp"

namespace ttedge {

Extents TTCores::mode_dims() const {
    Extents dims;
    dims.reserve(cores.size());
    for (const Tensor& c : cores) dims.push_back(c.ndim() == 3 ? c.dims()[1] : 0);
    return dims;
}

std::size_t TTCores::parameter_count() const {
    std::size_t total = 0;
    for (const Tensor& c : cores) total += c.size();
    return total;
}

void TTCores::validate() const {
    if (cores.empty()) throw Error(ErrorCode::RankChainBroken, "no cores");
    if (ranks.size() != cores.size() + 1) {
        throw Error(ErrorCode::RankChainBroken, "rank vector must have N+1 entries");
    }
    if (ranks.front() != 1 || ranks.back() != 1) {
        throw Error(ErrorCode::RankChainBroken, "boundary ranks must be 1");
    }
    for (std::size_t k = 0; k < cores.size(); ++k) {
        const Extents& d = cores[k].dims();
        if (d.size() != 3 || d[0] != ranks[k] || d[2] != ranks[k + 1]) {
            throw Error(ErrorCode::RankChainBroken, "core " + std::to_string(k) + " does not match the rank chain");
        }
    }
}

TTCores tt_decompose(const Tensor& w, double epsilon) {
    GemmExecutor ref;
    return tt_decompose(w, epsilon, ref);
}

TTCores tt_decompose(const Tensor& w, double epsilon, GemmExecutor& gemm) {
    if (w.ndim() == 0 || w.size() == 0) throw Error(ErrorCode::EmptyTensor, "nothing to decompose");
    if (!(epsilon >= 0.0)) throw Error(ErrorCode::BadDims, "epsilon must be non-negative");

    const Extents& n = w.dims();
    const std::size_t order = n.size();
    const QrOptions opts = QrOptions::for_dtype(w.dtype());
    EventTrace* trace = gemm.trace();

    TTCores out;
    out.ranks.push_back(1);
    std::vector<double> w_temp(w.data().begin(), w.data().end());
    std::optional<double> delta;

    for (std::size_t k = 0; k + 1 < order; ++k) {
        const std::size_t r_prev = out.ranks.back();
        const std::size_t rows = r_prev * n[k];
        const std::size_t cols = w_temp.size() / rows;
        const Matrix unfolded(rows, cols, std::move(w_temp));

        const SvdResult full = svd(unfolded, gemm, opts);

        SvdResult kept;
        {
            PhaseScope scope(trace, Phase::SortTrunc);
            if (!delta) delta = compute_delta(epsilon, order, full.sigma, &gemm);
            const SortedSvd sorted = sorting_basis(full, &gemm);
            kept = delta_truncation(sorted.svd, *delta, &gemm);
        }
        const std::size_t rank = kept.sigma.size();

        {
            // Σ_t·V_tᵀ is a diagonal row scaling; it is charged as the k×k by
            // k×cols product the hardware issues.
            PhaseScope scope(trace, Phase::UpdateSVDInput);
            gemm.charge_gemm(rank, cols, rank);
            w_temp.assign(kept.v_t.data().begin(), kept.v_t.data().end());
            for (std::size_t i = 0; i < rank; ++i) {
                for (std::size_t j = 0; j < cols; ++j) w_temp[i * cols + j] *= kept.sigma[i];
            }
        }

        PhaseScope scope(trace, Phase::ReshapeEtc);
        gemm.on_copy(kept.u.size());
        out.cores.emplace_back(Extents{r_prev, n[k], rank},
                               std::vector<double>(kept.u.data().begin(), kept.u.data().end()), w.dtype());
        out.ranks.push_back(rank);
    }

    PhaseScope scope(trace, Phase::ReshapeEtc);
    gemm.on_copy(w_temp.size());
    const std::size_t r_prev = out.ranks.back();
    out.cores.emplace_back(Extents{r_prev, n.back(), 1}, std::move(w_temp), w.dtype());
    out.ranks.push_back(1);
    return out;
}

Tensor tt_decode(const TTCores& cores) {
    cores.validate();
    Tensor acc = cores.cores.front();
    for (std::size_t k = 1; k < cores.size(); ++k) acc = tensor_contract(acc, cores.cores[k]);
    return reshape(acc, cores.mode_dims());
}

double compression_ratio(const Extents& original_dims, const TTCores& cores) {
    return static_cast<double>(element_count(original_dims)) / static_cast<double>(cores.parameter_count());
}

double reconstruction_error(const Tensor& w, const TTCores& cores) {
    const Tensor approx = tt_decode(cores);
    if (approx.dims() != w.dims()) throw Error(ErrorCode::ShapeMismatch, "decoded shape differs from the tensor");
    const double diff = frobenius_norm(w - approx);
    const double scale = frobenius_norm(w);
    if (scale == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / scale;
}

}  // namespace ttedge
