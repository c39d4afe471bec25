// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttedge/config.hpp"
#include "ttedge/format.hpp"
#include "ttedge/simulator.hpp"
#include "ttedge/synthetic.hpp"
#include "ttedge/tt.hpp"

namespace ttedge::cli {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedFile:
        case ErrorCode::BadConfig:
        case ErrorCode::BadDims:
        case ErrorCode::Io:
            return kBadInput;
        case ErrorCode::SpmOverflow:
            return kSpmOverflow;
        case ErrorCode::ElementCountMismatch:
        case ErrorCode::DimMismatch:
        case ErrorCode::ContractDimMismatch:
        case ErrorCode::DegenerateBeta:
        case ErrorCode::ShapeError:
        case ErrorCode::NoConvergence:
        case ErrorCode::EmptyTensor:
        case ErrorCode::RankChainBroken:
        case ErrorCode::ShapeMismatch:
        case ErrorCode::PhaseSetMismatch:
            return kPipelineFailure;
    }
    return kPipelineFailure;
}

namespace {

enum class ReportFormat { Json, Csv, Text };

// Parsed command line. One input source: --input or --synthetic.
struct RunManifest {
    std::string input;
    std::string synthetic;
    std::string output;
    std::string archive;
    double epsilon = 0.01;
    bool epsilon_given = false;
    std::vector<std::string> machines;
    ReportFormat report = ReportFormat::Text;
    std::uint64_t seed = 0;
    bool paper_times = false;
};

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string list_string(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::filesystem::path meta_path(const std::string& archive) { return archive + ".meta.json"; }

Tensor load_input(const RunManifest& m) {
    if (!m.synthetic.empty()) return synthetic_tensor(parse_synthetic(m.synthetic), m.seed);
    return load_tensor(m.input);
}

void emit_metrics(std::ostream& out, ReportFormat fmt, const Tensor& w, const TTCores& cores, double epsilon,
                  double ratio, double error) {
    switch (fmt) {
        case ReportFormat::Json: {
            json doc = {{"dims", w.dims()},
                        {"ranks", cores.ranks},
                        {"epsilon", epsilon},
                        {"parameters", cores.parameter_count()},
                        {"compression_ratio", ratio},
                        {"reconstruction_error", error}};
            out << doc.dump(2) << "\n";
            break;
        }
        case ReportFormat::Csv:
            out << "epsilon,ranks,parameters,compression_ratio,reconstruction_error\n"
                << g17(epsilon) << "," << list_string(cores.ranks) << "," << cores.parameter_count() << ","
                << g17(ratio) << "," << g17(error) << "\n";
            break;
        case ReportFormat::Text:
            out << "ranks: " << list_string(cores.ranks) << "\n"
                << "parameters: " << cores.parameter_count() << "\n"
                << "compression_ratio: " << g17(ratio) << "\n"
                << "reconstruction_error: " << g17(error) << "\n";
            break;
    }
}

int cmd_compress(const RunManifest& m, std::ostream& out) {
    const Tensor w = load_input(m);
    const TTCores cores = tt_decompose(w, m.epsilon);
    const double ratio = compression_ratio(w.dims(), cores);
    const double error = reconstruction_error(w, cores);

    save_archive(m.output, cores);
    const json meta = {{"epsilon", m.epsilon},
                       {"dims", w.dims()},
                       {"ranks", cores.ranks},
                       {"compression_ratio", ratio},
                       {"reconstruction_error", error}};
    const std::string text = meta.dump(2) + "\n";
    write_file_atomic(meta_path(m.output),
                      std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));

    emit_metrics(out, m.report, w, cores, m.epsilon, ratio, error);
    return kOk;
}

int cmd_decompress(const RunManifest& m, std::ostream& out) {
    const TTCores cores = load_archive(m.input);
    const Tensor w = tt_decode(cores);
    save_tensor(m.output, w);
    if (m.report == ReportFormat::Json) {
        out << json{{"dims", w.dims()}, {"ranks", cores.ranks}}.dump(2) << "\n";
    } else {
        out << "decoded " << list_string(w.dims()) << " from ranks " << list_string(cores.ranks) << "\n";
    }
    return kOk;
}

double recorded_epsilon(const std::string& archive) {
    std::ifstream in(meta_path(archive));
    if (!in) throw Error(ErrorCode::Io, "no --epsilon given and no run metadata at " + meta_path(archive).string());
    try {
        const json meta = json::parse(in);
        return meta.at("epsilon").get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedFile, std::string("run metadata: ") + e.what());
    }
}

int cmd_verify(const RunManifest& m, std::ostream& out) {
    const Tensor w = load_tensor(m.input);
    const TTCores cores = load_archive(m.archive);
    const double epsilon = m.epsilon_given ? m.epsilon : recorded_epsilon(m.archive);
    const double error = reconstruction_error(w, cores);
    // Exact reconstruction is out of reach after two lossy reshapes, so ε = 0
    // is checked against a 1e-10 floor.
    const double bound = std::max(1.05 * epsilon, 1e-10);
    const bool ok = error <= bound;
    if (m.report == ReportFormat::Json) {
        out << json{{"epsilon", epsilon}, {"bound", bound}, {"reconstruction_error", error}, {"ok", ok}}.dump(2)
            << "\n";
    } else {
        out << (ok ? "OK" : "FAIL") << " reconstruction_error=" << g17(error) << " bound=" << g17(bound) << "\n";
    }
    return ok ? kOk : kContractViolated;
}

void print_reports(std::ostream& out, ReportFormat fmt, const std::vector<VariantReport>& runs,
                   const std::optional<ComparisonSummary>& cmp) {
    switch (fmt) {
        case ReportFormat::Json: out << reports_to_json(runs, cmp) << "\n"; break;
        case ReportFormat::Csv: out << reports_to_csv(runs); break;
        case ReportFormat::Text: out << reports_to_text(runs, cmp); break;
    }
}

std::optional<ComparisonSummary> compare(const std::vector<VariantReport>& runs) {
    const VariantReport* base = nullptr;
    const VariantReport* edge = nullptr;
    for (const auto& r : runs) {
        if (r.variant == Variant::Baseline && !base) base = &r;
        if (r.variant == Variant::TtEdge && !edge) edge = &r;
    }
    if (!base || !edge) return std::nullopt;
    return summary(base->phases, edge->phases);
}

int cmd_simulate(const RunManifest& m, std::ostream& out) {
    std::vector<MachineConfig> machines;
    if (m.machines.empty()) {
        machines = {MachineConfig::baseline(), MachineConfig::tt_edge()};
    } else {
        for (const auto& spec : m.machines) machines.push_back(resolve_machine(spec));
    }

    std::vector<VariantReport> runs;
    if (m.paper_times) {
        for (const auto& machine : machines) {
            runs.push_back({machine.variant, energy_report(measured_phase_times(machine.variant), machine)});
        }
        print_reports(out, m.report, runs, compare(runs));
        return kOk;
    }

    const Tensor w = load_input(m);
    std::vector<SimulationResult> results;
    for (const auto& machine : machines) {
        results.push_back(simulate_ttd(w, m.epsilon, machine));
        runs.push_back({machine.variant, results.back().reports});
    }
    print_reports(out, m.report, runs, compare(runs));
    if (m.report == ReportFormat::Text) {
        out << "ranks: " << list_string(results.front().cores.ranks) << "\n";
        bool identical = true;
        for (const auto& r : results) identical = identical && r.cores == results.front().cores;
        if (results.size() > 1) out << "cores identical across machines: " << (identical ? "yes" : "no") << "\n";
    }
    return kOk;
}

void add_report_flag(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--report", m.report, "Report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ReportFormat>{
                {"json", ReportFormat::Json}, {"csv", ReportFormat::Csv}, {"text", ReportFormat::Text}},
            CLI::ignore_case));
}

void add_source_flags(CLI::App* cmd, RunManifest& m) {
    auto* in = cmd->add_option("--input", m.input, "Input TTED-T tensor file");
    auto* syn = cmd->add_option("--synthetic", m.synthetic, "Synthetic input: dims like 3x4x5, optional ,ranks");
    in->excludes(syn);
    cmd->add_option("--seed", m.seed, "Seed for --synthetic");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tensor-train compression with a TT-Edge machine model", "ttedge"};
    app.require_subcommand(1);
    RunManifest m;

    auto* compress = app.add_subcommand("compress", "Decompose a tensor into a TTED-A core archive");
    add_source_flags(compress, m);
    compress->add_option("--output", m.output, "Output archive")->required();
    compress->add_option("--epsilon", m.epsilon, "Prescribed relative accuracy")->check(CLI::NonNegativeNumber);
    add_report_flag(compress, m);

    auto* decompress = app.add_subcommand("decompress", "Decode a core archive back into a tensor");
    decompress->add_option("--input", m.input, "Input TTED-A archive")->required();
    decompress->add_option("--output", m.output, "Output TTED-T tensor")->required();
    add_report_flag(decompress, m);

    auto* simulate = app.add_subcommand("simulate", "Run the compression on the machine models");
    add_source_flags(simulate, m);
    simulate->add_option("--epsilon", m.epsilon, "Prescribed relative accuracy")->check(CLI::NonNegativeNumber);
    simulate->add_option("--machine", m.machines, "baseline, tt-edge, or a machine JSON (repeatable)");
    simulate->add_flag("--paper-times", m.paper_times, "Use the measured ResNet-32 phase times");
    add_report_flag(simulate, m);

    auto* verify = app.add_subcommand("verify", "Check an archive against the accuracy contract");
    verify->add_option("--input", m.input, "Original TTED-T tensor")->required();
    verify->add_option("--archive", m.archive, "TTED-A archive")->required();
    auto* eps = verify->add_option("--epsilon", m.epsilon, "Override the recorded epsilon");
    eps->check(CLI::NonNegativeNumber);
    add_report_flag(verify, m);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    m.epsilon_given = eps->count() > 0;

    try {
        if (*compress || *simulate) {
            if (m.input.empty() && m.synthetic.empty() && !m.paper_times) {
                err << "one of --input or --synthetic is required\n";
                return kBadInput;
            }
        }
        if (*compress) return cmd_compress(m, out);
        if (*decompress) return cmd_decompress(m, out);
        if (*simulate) return cmd_simulate(m, out);
        return cmd_verify(m, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}

}  // namespace ttedge::cli
