// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <vector>

#include "ttedge/machine.hpp"
#include "ttedge/tensor.hpp"
#include "ttedge/trace.hpp"
#include "ttedge/tt.hpp"

namespace ttedge {

struct PhaseReport {
    Variant variant = Variant::Baseline;
    Phase phase = Phase::HBD;
    double time_ms = 0.0;
    double energy_mj = 0.0;
    bool core_gated = false;

    friend bool operator==(const PhaseReport&, const PhaseReport&) = default;
};

using PhaseTimes = std::map<Phase, double>;

// Weighted sum of the counters by the machine's per-event latencies.
double phase_time_ms(const PhaseCounters& counters, const CostModel& cost_ns);
PhaseTimes phase_times(const EventTrace& trace, const MachineConfig& machine);

// E = P·T per phase, P chosen by variant and gating.
std::vector<PhaseReport> energy_report(const PhaseTimes& phase_times_ms, const MachineConfig& machine);

struct ComparisonSummary {
    double baseline_time_ms = 0.0;
    double ttedge_time_ms = 0.0;
    double baseline_energy_mj = 0.0;
    double ttedge_energy_mj = 0.0;
    double speedup = 0.0;
    double energy_reduction_pct = 0.0;
};

// Throws PhaseSetMismatch when the two lists cover different phases.
ComparisonSummary summary(const std::vector<PhaseReport>& baseline, const std::vector<PhaseReport>& ttedge);

struct SimulationResult {
    TTCores cores;
    EventTrace trace;
    std::vector<PhaseReport> reports;
};

// Runs tt_decompose on a simulated executor for `machine`.
SimulationResult simulate_ttd(const Tensor& w, double epsilon, const MachineConfig& machine);

// Phase times (ms) measured for TTD compression of ResNet-32 on the FPGA
// prototypes of both machines.
PhaseTimes measured_phase_times(Variant variant);

}  // namespace ttedge
