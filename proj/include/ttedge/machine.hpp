// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace ttedge {

enum class Variant : std::uint8_t { Baseline, TtEdge };

// Pipeline phases, in the order they are reported.
enum class Phase : std::uint8_t { HBD, QRDecomp, SortTrunc, UpdateSVDInput, ReshapeEtc };

inline constexpr std::size_t kPhaseCount = 5;
inline constexpr std::array<Phase, kPhaseCount> kAllPhases = {
    Phase::HBD, Phase::QRDecomp, Phase::SortTrunc, Phase::UpdateSVDInput, Phase::ReshapeEtc};

std::string_view to_string(Variant v);
std::string_view to_string(Phase p);
std::optional<Variant> parse_variant(std::string_view s);
std::optional<Phase> parse_phase(std::string_view s);

struct PowerStates {
    double baseline_total = 171.04;
    double ttedge_active = 178.23;
    double ttedge_gated = 169.96;

    friend bool operator==(const PowerStates&, const PowerStates&) = default;
};

// Per-event latencies in nanoseconds.
struct CostModel {
    double dma_word = 12.0;
    double gemm_block_op = 320.0;
    double core_flop = 6.0;
    double config_msg = 250.0;
    double fpalu_op = 2.5;

    friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct MachineConfig {
    Variant variant = Variant::Baseline;
    std::size_t gemm_block = 16;
    std::size_t spm_bytes = 320 * 1024;
    PowerStates power_mw;
    CostModel cost_ns;
    std::set<Phase> gating_phases;
    // When set, the TT-Edge engine also drives the GEMMs of the phases it
    // does not own (QRDecomp, UpdateSVDInput, ReshapeEtc) with a single
    // configuration message per product. Off by default, so those phases
    // cost the same on both machines.
    bool engine_drives_all_gemms = false;

    static MachineConfig baseline();
    static MachineConfig tt_edge();

    // Throws Error(BadConfig) on a violated invariant.
    void validate() const;

    // Power drawn while `phase` runs, in mW.
    double power_of(Phase phase) const;

    // Phases whose Householder/sort/truncate work runs on the TTD engine.
    bool engine_owns(Phase phase) const;

    friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

inline constexpr std::size_t kWordBytes = 4;

}  // namespace ttedge
