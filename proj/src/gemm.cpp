// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/gemm.hpp"

#include <algorithm>
#include <string>

#include "ttedge/error.hpp"

namespace ttedge {

namespace {

std::uint64_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void check_dims(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimMismatch, "gemm " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

// C += A·B tile by tile. Each C tile accumulates its k-blocks in increasing
// order, which keeps the per-element summation order of matmul_ref.
void blockwise_accumulate(const Matrix& a, const Matrix& b, Matrix& c, std::size_t block) {
    const std::size_t m = a.rows(), n = b.cols(), k = a.cols();
    for (std::size_t i0 = 0; i0 < m; i0 += block) {
        const std::size_t i1 = std::min(m, i0 + block);
        for (std::size_t j0 = 0; j0 < n; j0 += block) {
            const std::size_t j1 = std::min(n, j0 + block);
            for (std::size_t k0 = 0; k0 < k; k0 += block) {
                const std::size_t k1 = std::min(k, k0 + block);
                for (std::size_t i = i0; i < i1; ++i) {
                    for (std::size_t j = j0; j < j1; ++j) {
                        double acc = c(i, j);
                        for (std::size_t kk = k0; kk < k1; ++kk) acc += a(i, kk) * b(kk, j);
                        c(i, j) = acc;
                    }
                }
            }
        }
    }
}

}  // namespace

std::uint64_t gemm_block_count(std::size_t m, std::size_t n, std::size_t k, std::size_t block) {
    return ceil_div(m, block) * ceil_div(n, block) * ceil_div(k, block);
}

GemmExecutor::GemmExecutor(MachineConfig machine, EventTrace& trace) : machine_(std::move(machine)), trace_(&trace) {
    machine_.validate();
}

bool GemmExecutor::on_engine() const { return machine_.variant == Variant::TtEdge; }

bool GemmExecutor::engine_active() const {
    return on_engine() && (machine_.engine_drives_all_gemms || machine_.engine_owns(trace_->phase()));
}

void GemmExecutor::charge_gemm(std::size_t m, std::size_t n, std::size_t k, Operand a_src, Operand b_src) {
    if (!trace_ || m == 0 || n == 0 || k == 0) return;
    const std::size_t blk = machine_.gemm_block;
    const std::size_t working_set = 3 * blk * blk;
    trace_->spm_acquire(working_set);
    trace_->spm_release(working_set);

    PhaseCounters& c = trace_->current();
    const std::uint64_t blocks = gemm_block_count(m, n, k, blk);
    c.gemm_block_calls += blocks;
    c.config_msgs += engine_active() ? 1 : blocks;

    // A is re-streamed once per column tile of C, B once per row tile.
    const std::uint64_t a_words = static_cast<std::uint64_t>(m) * k * ceil_div(n, blk);
    const std::uint64_t b_words = static_cast<std::uint64_t>(k) * n * ceil_div(m, blk);
    auto charge_operand = [&](Operand src, std::uint64_t words) {
        if (src == Operand::Householder) {
            if (on_engine()) return;  // SPM resident, fed directly to the GEMM array
            c.hv_refetch_words += words;
        }
        c.dma_words_in += words;
    };
    charge_operand(a_src, a_words);
    charge_operand(b_src, b_words);
    c.dma_words_out += static_cast<std::uint64_t>(m) * n;
}

Matrix GemmExecutor::multiply(const Matrix& a, const Matrix& b, Operand a_src, Operand b_src) {
    check_dims(a, b);
    if (!trace_) return matmul_ref(a, b);
    charge_gemm(a.rows(), b.cols(), a.cols(), a_src, b_src);
    Matrix c(a.rows(), b.cols());
    blockwise_accumulate(a, b, c, machine_.gemm_block);
    return c;
}

Matrix GemmExecutor::multiply_add(const Matrix& a, const Matrix& b, const Matrix& c, Operand a_src,
                                  Operand b_src) {
    check_dims(a, b);
    if (c.rows() != a.rows() || c.cols() != b.cols()) throw Error(ErrorCode::DimMismatch, "gemm accumulator shape");
    if (!trace_) {
        Matrix out = matmul_ref(a, b);
        for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += c.data()[i];
        return out;
    }
    charge_gemm(a.rows(), b.cols(), a.cols(), a_src, b_src);
    trace_->current().dma_words_in += c.size();
    Matrix out = c;
    blockwise_accumulate(a, b, out, machine_.gemm_block);
    return out;
}

void GemmExecutor::on_house(std::size_t n) {
    if (!trace_) return;
    PhaseCounters& c = trace_->current();
    c.dma_words_in += n;
    if (on_engine()) {
        c.fpalu_ops += 2 * n + 2;
        trace_->spm_acquire(n);
        retained_words_ += n;
    } else {
        c.core_flops += 2 * n + 2;
        c.dma_words_out += 1;
    }
}

void GemmExecutor::on_vector_division(std::size_t n) {
    if (!trace_) return;
    PhaseCounters& c = trace_->current();
    if (on_engine()) {
        c.fpalu_ops += n;
        return;
    }
    c.core_flops += n;
    c.dma_words_in += n;
    c.hv_refetch_words += n;
    c.dma_words_out += n;
}

void GemmExecutor::on_householder_reload(std::size_t n) {
    if (!trace_ || on_engine()) return;
    PhaseCounters& c = trace_->current();
    c.dma_words_in += n;
    c.hv_refetch_words += n;
}

void GemmExecutor::on_hbd_finished() {
    if (!trace_) return;
    trace_->spm_release(retained_words_);
    retained_words_ = 0;
}

void GemmExecutor::on_core_flops(std::uint64_t n) {
    if (trace_) trace_->current().core_flops += n;
}

void GemmExecutor::on_sort(std::size_t k, std::uint64_t compares, std::uint64_t swaps, std::uint64_t reorder_words) {
    if (!trace_) return;
    PhaseCounters& c = trace_->current();
    if (on_engine()) {
        // Singular values are loaded into the SPM once and sorted in place.
        c.fpalu_ops += compares;
        c.dma_words_in += k;
        c.dma_words_out += k;
    } else {
        // Every comparison reads its pair from DRAM, every swap writes it back.
        c.core_flops += compares;
        c.dma_words_in += 2 * compares;
        c.dma_words_out += 2 * swaps;
    }
    c.dma_words_in += reorder_words;
    c.dma_words_out += reorder_words;
}

void GemmExecutor::on_truncation(std::uint64_t checks, std::uint64_t examined_words) {
    if (!trace_) return;
    PhaseCounters& c = trace_->current();
    if (on_engine()) {
        c.fpalu_ops += 2 * examined_words + checks;
    } else {
        c.core_flops += 2 * examined_words + checks;
        c.dma_words_in += examined_words;
    }
}

void GemmExecutor::on_norm(std::size_t n) {
    if (!trace_) return;
    PhaseCounters& c = trace_->current();
    c.dma_words_in += n;
    if (on_engine()) {
        c.fpalu_ops += 2 * n + 1;
    } else {
        c.core_flops += 2 * n + 1;
    }
}

void GemmExecutor::on_copy(std::uint64_t words) {
    if (!trace_) return;
    PhaseCounters& c = trace_->current();
    c.dma_words_in += words;
    c.dma_words_out += words;
}

Matrix blocked_gemm(const Matrix& a, const Matrix& b, GemmExecutor& exec) { return exec.multiply(a, b); }

}  // namespace ttedge
