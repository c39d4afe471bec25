// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/machine.hpp"

#include "ttedge/error.hpp"
#include "ttedge/trace.hpp"

namespace ttedge {

std::string_view to_string(Variant v) {
    return v == Variant::Baseline ? "baseline" : "tt_edge";
}

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::HBD: return "HBD";
        case Phase::QRDecomp: return "QRDecomp";
        case Phase::SortTrunc: return "SortTrunc";
        case Phase::UpdateSVDInput: return "UpdateSVDInput";
        case Phase::ReshapeEtc: return "ReshapeEtc";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "baseline") return Variant::Baseline;
    if (s == "tt_edge" || s == "tt-edge") return Variant::TtEdge;
    return std::nullopt;
}

std::optional<Phase> parse_phase(std::string_view s) {
    for (Phase p : kAllPhases) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

MachineConfig MachineConfig::baseline() { return MachineConfig{}; }

MachineConfig MachineConfig::tt_edge() {
    MachineConfig m;
    m.variant = Variant::TtEdge;
    m.gating_phases = {Phase::HBD, Phase::SortTrunc};
    return m;
}

void MachineConfig::validate() const {
    if (gemm_block < 1) throw Error(ErrorCode::BadConfig, "gemm_block must be >= 1");
    if (spm_bytes < kWordBytes) throw Error(ErrorCode::BadConfig, "spm_bytes must hold at least one word");
    for (double c : {cost_ns.dma_word, cost_ns.gemm_block_op, cost_ns.core_flop, cost_ns.config_msg,
                     cost_ns.fpalu_op}) {
        if (!(c >= 0.0)) throw Error(ErrorCode::BadConfig, "latency costs must be non-negative");
    }
    for (double p : {power_mw.baseline_total, power_mw.ttedge_active, power_mw.ttedge_gated}) {
        if (!(p >= 0.0)) throw Error(ErrorCode::BadConfig, "power states must be non-negative");
    }
    if (variant == Variant::Baseline && !gating_phases.empty()) {
        throw Error(ErrorCode::BadConfig, "the baseline core is never clock gated");
    }
}

double MachineConfig::power_of(Phase phase) const {
    if (variant == Variant::Baseline) return power_mw.baseline_total;
    return gating_phases.contains(phase) ? power_mw.ttedge_gated : power_mw.ttedge_active;
}

bool MachineConfig::engine_owns(Phase phase) const {
    return variant == Variant::TtEdge && (phase == Phase::HBD || phase == Phase::SortTrunc);
}

PhaseCounters& PhaseCounters::operator+=(const PhaseCounters& o) {
    gemm_block_calls += o.gemm_block_calls;
    dma_words_in += o.dma_words_in;
    dma_words_out += o.dma_words_out;
    config_msgs += o.config_msgs;
    core_flops += o.core_flops;
    fpalu_ops += o.fpalu_ops;
    hv_refetch_words += o.hv_refetch_words;
    return *this;
}

PhaseCounters EventTrace::total() const {
    PhaseCounters sum;
    for (const auto& c : counters_) sum += c;
    return sum;
}

void EventTrace::spm_acquire(std::size_t words) {
    if (words > spm_capacity_words_ || spm_resident_ > spm_capacity_words_ - words) {
        throw Error(ErrorCode::SpmOverflow, "SPM needs " + std::to_string(spm_resident_ + words) +
                                                " words, capacity " + std::to_string(spm_capacity_words_));
    }
    spm_resident_ += words;
    spm_high_water_ = std::max(spm_high_water_, spm_resident_);
}

void EventTrace::spm_release(std::size_t words) noexcept {
    spm_resident_ -= std::min(words, spm_resident_);
}

}  // namespace ttedge
