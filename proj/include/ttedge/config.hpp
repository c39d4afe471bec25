// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttedge/machine.hpp"
#include "ttedge/simulator.hpp"

namespace ttedge {

// MachineConfig <-> JSON. Keys mirror the struct fields; unknown keys and
// wrong types throw Error(BadConfig). Missing keys keep the defaults of the
// document's variant.
MachineConfig machine_from_json(std::string_view text);
std::string machine_to_json(const MachineConfig& machine);
MachineConfig load_machine(const std::filesystem::path& path);

// Resolves "baseline", "tt-edge"/"tt_edge", a file path, or a file name found
// under the directory named by $TTEDGE_MACHINE_DIR (with or without .json).
MachineConfig resolve_machine(std::string_view spec);

struct VariantReport {
    Variant variant;
    std::vector<PhaseReport> phases;
};

std::string reports_to_json(const std::vector<VariantReport>& runs, const std::optional<ComparisonSummary>& cmp);
// Columns: variant, phase, time_ms, energy_mj, core_gated.
std::string reports_to_csv(const std::vector<VariantReport>& runs);
std::string reports_to_text(const std::vector<VariantReport>& runs, const std::optional<ComparisonSummary>& cmp);

}  // namespace ttedge
