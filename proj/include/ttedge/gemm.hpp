// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "ttedge/machine.hpp"
#include "ttedge/tensor.hpp"
#include "ttedge/trace.hpp"

namespace ttedge {

// Where a GEMM operand lives before the product starts. Householder vectors
// sit in DRAM on the baseline machine and stay resident in the SPM on TT-Edge.
enum class Operand : std::uint8_t { Streamed, Householder };

// The machine all matrix products and pipeline events are routed through.
//
// Reference mode multiplies with matmul_ref and records nothing. Simulated
// mode runs the blockwise schedule of the GEMM accelerator and charges every
// product and every non-GEMM event to the trace according to the machine
// variant's offload policy. Numerics never depend on the variant.
class GemmExecutor {
public:
    enum class Mode : std::uint8_t { Reference, Simulated };

    GemmExecutor() = default;
    GemmExecutor(MachineConfig machine, EventTrace& trace);

    static GemmExecutor reference() { return {}; }

    Mode mode() const noexcept { return trace_ ? Mode::Simulated : Mode::Reference; }
    bool simulated() const noexcept { return trace_ != nullptr; }
    const MachineConfig& machine() const noexcept { return machine_; }
    EventTrace* trace() const noexcept { return trace_; }

    Matrix multiply(const Matrix& a, const Matrix& b, Operand a_src = Operand::Streamed,
                    Operand b_src = Operand::Streamed);
    // c + a·b, with c loaded into the accumulator blocks first.
    Matrix multiply_add(const Matrix& a, const Matrix& b, const Matrix& c, Operand a_src = Operand::Streamed,
                        Operand b_src = Operand::Streamed);

    // Accounts an (m×k)·(k×n) product without computing it.
    void charge_gemm(std::size_t m, std::size_t n, std::size_t k, Operand a_src = Operand::Streamed,
                     Operand b_src = Operand::Streamed);

    // HOUSE on an n-vector: fetch, norm, signed update of v[1].
    void on_house(std::size_t n);
    // v/β for an n-vector.
    void on_vector_division(std::size_t n);
    // A stored Householder vector read back during accumulation.
    void on_householder_reload(std::size_t n);
    // End of bidiagonalization; retained vectors leave the SPM.
    void on_hbd_finished();
    // Work that always runs on the main core.
    void on_core_flops(std::uint64_t n);
    // Bubble sort over k values followed by reordering reorder_words of basis data.
    void on_sort(std::size_t k, std::uint64_t compares, std::uint64_t swaps, std::uint64_t reorder_words);
    // Tail-norm checks of δ-truncation.
    void on_truncation(std::uint64_t checks, std::uint64_t examined_words);
    // 2-norm of an n-vector.
    void on_norm(std::size_t n);
    // Plain data movement (core extraction, reshape copies).
    void on_copy(std::uint64_t words);

    std::size_t retained_householder_words() const noexcept { return retained_words_; }

private:
    bool engine_active() const;
    bool on_engine() const;

    MachineConfig machine_{};
    EventTrace* trace_ = nullptr;
    std::size_t retained_words_ = 0;
};

// Blockwise product on the executor's machine. Equal to matmul_ref.
Matrix blocked_gemm(const Matrix& a, const Matrix& b, GemmExecutor& exec);

// ceil(m/b)·ceil(n/b)·ceil(k/b) for an (m×k)·(k×n) product.
std::uint64_t gemm_block_count(std::size_t m, std::size_t n, std::size_t k, std::size_t block);

// PREPARE-stage address of the Householder vector for step i.
constexpr std::int64_t hbd_addr(std::int64_t a_addr, std::int64_t a_width, std::int64_t i, int order) {
    return a_addr + i * (a_width + 1) + order;
}

}  // namespace ttedge
