// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "ttedge/error.hpp"

namespace ttedge {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); }

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) bad("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) bad(std::string(key) + " must be a number");
    return v.get<double>();
}

std::size_t count(const json& obj, const char* key, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) bad(std::string(key) + " must be a non-negative integer");
    return v.get<std::size_t>();
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

MachineConfig machine_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("machine config must be a JSON object");
    reject_unknown(doc,
                   {"variant", "gemm_block", "spm_bytes", "power_mw", "cost_ns", "gating_phases",
                    "engine_drives_all_gemms"},
                   "machine config");
    if (!doc.contains("variant") || !doc["variant"].is_string()) bad("variant is required");
    const auto variant = parse_variant(doc["variant"].get<std::string>());
    if (!variant) bad("unknown variant '" + doc["variant"].get<std::string>() + "'");

    MachineConfig m = *variant == Variant::Baseline ? MachineConfig::baseline() : MachineConfig::tt_edge();
    m.gemm_block = count(doc, "gemm_block", m.gemm_block);
    m.spm_bytes = count(doc, "spm_bytes", m.spm_bytes);

    if (doc.contains("power_mw")) {
        const json& p = doc["power_mw"];
        if (!p.is_object()) bad("power_mw must be an object");
        reject_unknown(p, {"baseline_total", "ttedge_active", "ttedge_gated"}, "power_mw");
        m.power_mw.baseline_total = number(p, "baseline_total", m.power_mw.baseline_total);
        m.power_mw.ttedge_active = number(p, "ttedge_active", m.power_mw.ttedge_active);
        m.power_mw.ttedge_gated = number(p, "ttedge_gated", m.power_mw.ttedge_gated);
    }
    if (doc.contains("cost_ns")) {
        const json& c = doc["cost_ns"];
        if (!c.is_object()) bad("cost_ns must be an object");
        reject_unknown(c, {"dma_word", "gemm_block_op", "core_flop", "config_msg", "fpalu_op"}, "cost_ns");
        m.cost_ns.dma_word = number(c, "dma_word", m.cost_ns.dma_word);
        m.cost_ns.gemm_block_op = number(c, "gemm_block_op", m.cost_ns.gemm_block_op);
        m.cost_ns.core_flop = number(c, "core_flop", m.cost_ns.core_flop);
        m.cost_ns.config_msg = number(c, "config_msg", m.cost_ns.config_msg);
        m.cost_ns.fpalu_op = number(c, "fpalu_op", m.cost_ns.fpalu_op);
    }
    if (doc.contains("gating_phases")) {
        const json& g = doc["gating_phases"];
        if (!g.is_array()) bad("gating_phases must be an array");
        m.gating_phases.clear();
        for (const json& name : g) {
            if (!name.is_string()) bad("gating_phases entries must be strings");
            const auto phase = parse_phase(name.get<std::string>());
            if (!phase) bad("unknown phase '" + name.get<std::string>() + "'");
            m.gating_phases.insert(*phase);
        }
    }
    if (doc.contains("engine_drives_all_gemms")) {
        if (!doc["engine_drives_all_gemms"].is_boolean()) bad("engine_drives_all_gemms must be a boolean");
        m.engine_drives_all_gemms = doc["engine_drives_all_gemms"].get<bool>();
    }
    m.validate();
    return m;
}

std::string machine_to_json(const MachineConfig& m) {
    json gating = json::array();
    for (Phase p : m.gating_phases) gating.push_back(std::string(to_string(p)));
    json doc = {
        {"variant", std::string(to_string(m.variant))},
        {"gemm_block", m.gemm_block},
        {"spm_bytes", m.spm_bytes},
        {"power_mw",
         {{"baseline_total", m.power_mw.baseline_total},
          {"ttedge_active", m.power_mw.ttedge_active},
          {"ttedge_gated", m.power_mw.ttedge_gated}}},
        {"cost_ns",
         {{"dma_word", m.cost_ns.dma_word},
          {"gemm_block_op", m.cost_ns.gemm_block_op},
          {"core_flop", m.cost_ns.core_flop},
          {"config_msg", m.cost_ns.config_msg},
          {"fpalu_op", m.cost_ns.fpalu_op}}},
        {"gating_phases", gating},
        {"engine_drives_all_gemms", m.engine_drives_all_gemms},
    };
    return doc.dump(2);
}

MachineConfig load_machine(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open machine config " + path.string());
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return machine_from_json(text);
}

MachineConfig resolve_machine(std::string_view spec) {
    if (spec == "baseline") return MachineConfig::baseline();
    if (spec == "tt-edge" || spec == "tt_edge") return MachineConfig::tt_edge();
    const std::filesystem::path direct{std::string(spec)};
    if (std::filesystem::is_regular_file(direct)) return load_machine(direct);
    if (const char* dir = std::getenv("TTEDGE_MACHINE_DIR")) {
        const std::filesystem::path base = std::filesystem::path(dir) / direct;
        if (std::filesystem::is_regular_file(base)) return load_machine(base);
        std::filesystem::path with_ext = base;
        with_ext += ".json";
        if (std::filesystem::is_regular_file(with_ext)) return load_machine(with_ext);
    }
    bad("no machine config named '" + std::string(spec) + "'");
}

std::string reports_to_json(const std::vector<VariantReport>& runs, const std::optional<ComparisonSummary>& cmp) {
    json doc;
    doc["reports"] = json::array();
    for (const auto& run : runs) {
        for (const auto& r : run.phases) {
            doc["reports"].push_back({{"variant", std::string(to_string(run.variant))},
                                      {"phase", std::string(to_string(r.phase))},
                                      {"time_ms", r.time_ms},
                                      {"energy_mj", r.energy_mj},
                                      {"core_gated", r.core_gated}});
        }
    }
    if (cmp) {
        doc["summary"] = {{"baseline_time_ms", cmp->baseline_time_ms},
                          {"ttedge_time_ms", cmp->ttedge_time_ms},
                          {"baseline_energy_mj", cmp->baseline_energy_mj},
                          {"ttedge_energy_mj", cmp->ttedge_energy_mj},
                          {"speedup", cmp->speedup},
                          {"energy_reduction_pct", cmp->energy_reduction_pct}};
    }
    return doc.dump(2);
}

std::string reports_to_csv(const std::vector<VariantReport>& runs) {
    std::ostringstream out;
    out << "variant,phase,time_ms,energy_mj,core_gated\n";
    for (const auto& run : runs) {
        for (const auto& r : run.phases) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%s\n", std::string(to_string(run.variant)).c_str(),
                          std::string(to_string(r.phase)).c_str(), r.time_ms, r.energy_mj,
                          r.core_gated ? "true" : "false");
            out << buf;
        }
    }
    return out.str();
}

std::string reports_to_text(const std::vector<VariantReport>& runs, const std::optional<ComparisonSummary>& cmp) {
    std::ostringstream out;
    for (const auto& run : runs) {
        out << "[" << to_string(run.variant) << "]\n";
        out << "  phase            time_ms       energy_mj\n";
        double t = 0.0, e = 0.0;
        for (const auto& r : run.phases) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "  %-14s %12s  %12s%s\n", std::string(to_string(r.phase)).c_str(),
                          fixed(r.time_ms, 4).c_str(), fixed(r.energy_mj, 4).c_str(), r.core_gated ? " *" : "");
            out << buf;
            t += r.time_ms;
            e += r.energy_mj;
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-14s %12s  %12s\n", "Total", fixed(t, 4).c_str(), fixed(e, 4).c_str());
        out << buf;
    }
    if (cmp) {
        out << "speedup: " << fixed(cmp->speedup, 3) << "x\n";
        out << "energy reduction: " << fixed(cmp->energy_reduction_pct, 2) << "%\n";
    }
    bool any_gated = false;
    for (const auto& run : runs) {
        for (const auto& r : run.phases) any_gated = any_gated || r.core_gated;
    }
    if (any_gated) out << "* core clock gated\n";
    return out.str();
}

}  // namespace ttedge
