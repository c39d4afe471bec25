// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "ttedge/machine.hpp"

namespace ttedge {

struct PhaseCounters {
    std::uint64_t gemm_block_calls = 0;
    std::uint64_t dma_words_in = 0;
    std::uint64_t dma_words_out = 0;
    std::uint64_t config_msgs = 0;
    std::uint64_t core_flops = 0;
    std::uint64_t fpalu_ops = 0;
    // Subset of dma_words_in spent re-reading Householder vectors from DRAM.
    std::uint64_t hv_refetch_words = 0;

    PhaseCounters& operator+=(const PhaseCounters& o);
    friend bool operator==(const PhaseCounters&, const PhaseCounters&) = default;
};

// Event counters of one simulation run, bucketed by phase. Counters only grow.
class EventTrace {
public:
    explicit EventTrace(std::size_t spm_capacity_words = SIZE_MAX) : spm_capacity_words_(spm_capacity_words) {}

    Phase phase() const noexcept { return phase_; }
    void set_phase(Phase p) noexcept { phase_ = p; }

    PhaseCounters& current() noexcept { return counters_[static_cast<std::size_t>(phase_)]; }
    const PhaseCounters& at(Phase p) const noexcept { return counters_[static_cast<std::size_t>(p)]; }
    PhaseCounters total() const;

    // SPM occupancy. Exceeding the capacity throws Error(SpmOverflow).
    void spm_acquire(std::size_t words);
    void spm_release(std::size_t words) noexcept;
    std::size_t spm_resident_words() const noexcept { return spm_resident_; }
    std::size_t spm_high_water_words() const noexcept { return spm_high_water_; }
    std::size_t spm_capacity_words() const noexcept { return spm_capacity_words_; }

    friend bool operator==(const EventTrace&, const EventTrace&) = default;

private:
    std::array<PhaseCounters, kPhaseCount> counters_{};
    Phase phase_ = Phase::ReshapeEtc;
    std::size_t spm_capacity_words_;
    std::size_t spm_resident_ = 0;
    std::size_t spm_high_water_ = 0;
};

// Switches the trace to `phase` for the lifetime of the guard.
class PhaseScope {
public:
    PhaseScope(EventTrace* trace, Phase phase) : trace_(trace) {
        if (trace_) {
            previous_ = trace_->phase();
            trace_->set_phase(phase);
        }
    }
    ~PhaseScope() {
        if (trace_) trace_->set_phase(previous_);
    }
    PhaseScope(const PhaseScope&) = delete;
    PhaseScope& operator=(const PhaseScope&) = delete;

private:
    EventTrace* trace_;
    Phase previous_ = Phase::ReshapeEtc;
};

}  // namespace ttedge
