// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/simulator.hpp"

#include "ttedge/error.hpp"
#include "ttedge/gemm.hpp"

namespace ttedge {

double phase_time_ms(const PhaseCounters& c, const CostModel& cost) {
    const double ns = static_cast<double>(c.gemm_block_calls) * cost.gemm_block_op +
                      static_cast<double>(c.dma_words_in + c.dma_words_out) * cost.dma_word +
                      static_cast<double>(c.config_msgs) * cost.config_msg +
                      static_cast<double>(c.core_flops) * cost.core_flop +
                      static_cast<double>(c.fpalu_ops) * cost.fpalu_op;
    return ns / 1e6;
}

PhaseTimes phase_times(const EventTrace& trace, const MachineConfig& machine) {
    PhaseTimes times;
    for (Phase p : kAllPhases) times[p] = phase_time_ms(trace.at(p), machine.cost_ns);
    return times;
}

std::vector<PhaseReport> energy_report(const PhaseTimes& phase_times_ms, const MachineConfig& machine) {
    std::vector<PhaseReport> out;
    out.reserve(phase_times_ms.size());
    for (const auto& [phase, time_ms] : phase_times_ms) {
        if (!(time_ms >= 0.0)) throw Error(ErrorCode::BadConfig, "phase times must be non-negative");
        const double power = machine.power_of(phase);
        out.push_back({machine.variant, phase, time_ms, power * time_ms / 1000.0,
                       machine.gating_phases.contains(phase)});
    }
    return out;
}

ComparisonSummary summary(const std::vector<PhaseReport>& baseline, const std::vector<PhaseReport>& ttedge) {
    auto phase_set = [](const std::vector<PhaseReport>& r) {
        std::vector<Phase> phases;
        for (const auto& p : r) phases.push_back(p.phase);
        std::sort(phases.begin(), phases.end());
        return phases;
    };
    if (phase_set(baseline) != phase_set(ttedge)) {
        throw Error(ErrorCode::PhaseSetMismatch, "variants report different phases");
    }
    ComparisonSummary s;
    for (const auto& r : baseline) {
        s.baseline_time_ms += r.time_ms;
        s.baseline_energy_mj += r.energy_mj;
    }
    for (const auto& r : ttedge) {
        s.ttedge_time_ms += r.time_ms;
        s.ttedge_energy_mj += r.energy_mj;
    }
    s.speedup = s.ttedge_time_ms > 0.0 ? s.baseline_time_ms / s.ttedge_time_ms : 1.0;
    s.energy_reduction_pct =
        s.baseline_energy_mj > 0.0 ? (1.0 - s.ttedge_energy_mj / s.baseline_energy_mj) * 100.0 : 0.0;
    return s;
}

SimulationResult simulate_ttd(const Tensor& w, double epsilon, const MachineConfig& machine) {
    machine.validate();
    SimulationResult out{TTCores{}, EventTrace(machine.spm_bytes / kWordBytes), {}};
    GemmExecutor exec(machine, out.trace);
    out.cores = tt_decompose(w, epsilon, exec);
    out.reports = energy_report(phase_times(out.trace, machine), machine);
    return out;
}

PhaseTimes measured_phase_times(Variant variant) {
    if (variant == Variant::Baseline) {
        return {{Phase::HBD, 5626.42},
                {Phase::QRDecomp, 1554.66},
                {Phase::SortTrunc, 312.56},
                {Phase::UpdateSVDInput, 46.65},
                {Phase::ReshapeEtc, 189.24}};
    }
    return {{Phase::HBD, 2743.80},
            {Phase::QRDecomp, 1554.66},
            {Phase::SortTrunc, 31.37},
            {Phase::UpdateSVDInput, 46.65},
            {Phase::ReshapeEtc, 189.24}};
}

}  // namespace ttedge
