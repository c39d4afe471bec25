// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "ttedge/gemm.hpp"
#include "ttedge/tensor.hpp"

namespace ttedge {

// Core k has dims [r_{k-1}, n_k, r_k]; ranks = [r_0 .. r_N].
struct TTCores {
    std::vector<Tensor> cores;
    std::vector<std::size_t> ranks;

    std::size_t size() const noexcept { return cores.size(); }
    Extents mode_dims() const;
    std::size_t parameter_count() const;

    // Throws RankChainBroken unless r_0 = r_N = 1, every core is 3-D and
    // adjacent cores agree on their shared rank.
    void validate() const;

    friend bool operator==(const TTCores&, const TTCores&) = default;
};

// TT-SVD: sweeps k = 1..N-1 doing reshape, SVD, basis sort, δ-truncation and
// the Σ_t·V_tᵀ update, cutting one core per step. δ is fixed from the first
// SVD's singular values.
TTCores tt_decompose(const Tensor& w, double epsilon, GemmExecutor& gemm);
TTCores tt_decompose(const Tensor& w, double epsilon);

// Left fold of tensor_contract over the cores, squeezed to [n_1..n_N].
Tensor tt_decode(const TTCores& cores);

double compression_ratio(const Extents& original_dims, const TTCores& cores);

// ‖w - decode(cores)‖_F / ‖w‖_F, or 0 when both are exactly zero.
double reconstruction_error(const Tensor& w, const TTCores& cores);

}  // namespace ttedge
