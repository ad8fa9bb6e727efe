#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrns/companions.hpp"
#include "qrns/estimator.hpp"
#include "qrns/orchestrator.hpp"
#include "qrns/qdmm.hpp"
#include "qrns/rns.hpp"
#include "qrns/tables.hpp"

namespace qrns::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Usage or domain problem detected after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json report_json(const ResourceReport& r) {
    return {{"qubits", r.qubits},         {"toffoli_count", r.toffoli_count},
            {"toffoli_depth", r.toffoli_depth}, {"cnot_count", r.cnot_count},
            {"cnot_depth", r.cnot_depth}, {"t_count", r.t_count}};
}

unsigned default_parallelism() {
    if (const char* env = std::getenv("QRNS_PARALLELISM")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

BigInt parse_operand(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("operand '" + text + "' is not a non-negative integer");
    }
    return BigInt(text);
}

std::optional<Family> parse_channel_family(std::string_view name) {
    if (name == "qdmm" || name == "mod2n+1") return Family::FermatLike;
    if (name == "mod2n") return Family::Pow2;
    if (name == "mod2n-1") return Family::MersenneLike;
    return std::nullopt;
}

ModuliSet resolve_set(std::optional<unsigned> paper_set, const std::vector<std::uint64_t>& moduli,
                      std::optional<unsigned> search_n) {
    if (!moduli.empty()) return ModuliSet::from_values(moduli);
    if (paper_set) return paper_set_lookup(*paper_set);
    if (search_n) {
        if (*search_n >= kPaperSetMin && *search_n <= kPaperSetMax) return paper_set_lookup(*search_n);
        return search_set(*search_n);
    }
    throw UsageError("give --paper-set N, --moduli a,b,c or --n N");
}

// --- estimate ---------------------------------------------------------------

struct EstimateArgs {
    std::string design;
    unsigned n = 0;
    std::string format = "json";
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
    const auto design = parse_design(a.design);
    if (!design) throw UsageError("unknown design '" + a.design + "'");
    const auto format = parse_table_format(a.format);
    if (!format) throw UsageError("unknown format '" + a.format + "'");
    if (a.n < kEstimateMinWidth || a.n > kEstimateMaxWidth) {
        throw UsageError("n must be at least 2 for the resource formulas");
    }
    const FormulaReport fr = estimate(*design, a.n);
    const ResourceReport& r = fr.resources;
    switch (*format) {
    case TableFormat::Json: {
        Json j = {{"design", design_name(fr.design)}, {"n", fr.n}};
        j.update(report_json(r));
        out << j.dump(2) << '\n';
        break;
    }
    case TableFormat::Csv:
        out << "design,n,qubits,toffoli_count,toffoli_depth,cnot_count,cnot_depth,t_count\n"
            << design_name(fr.design) << ',' << fr.n << ',' << r.qubits << ',' << r.toffoli_count
            << ',' << r.toffoli_depth << ',' << r.cnot_count << ',' << r.cnot_depth << ','
            << r.t_count << '\n';
        break;
    case TableFormat::Markdown:
        out << "| design | n | qubits | toffoli_count | toffoli_depth | cnot_count | cnot_depth | t_count |\n"
            << "| --- | --- | --- | --- | --- | --- | --- | --- |\n"
            << "| " << design_name(fr.design) << " | " << fr.n << " | " << r.qubits << " | "
            << r.toffoli_count << " | " << r.toffoli_depth << " | " << r.cnot_count << " | "
            << r.cnot_depth << " | " << r.t_count << " |\n";
        break;
    }
    return kExitOk;
}

// --- tables -----------------------------------------------------------------

struct TablesArgs {
    std::string which = "all";
    std::string format = "markdown";
};

int cmd_tables(const TablesArgs& a, std::ostream& out) {
    const auto format = parse_table_format(a.format);
    if (!format) throw UsageError("unknown format '" + a.format + "'");
    if (a.which == "all") {
        out << emit_tables(*format);
        return kExitOk;
    }
    const auto kind = parse_table_kind(a.which);
    if (!kind) throw UsageError("unknown table '" + a.which + "' (costs, comparison, improvements, all)");
    out << emit_table(*kind, *format);
    return kExitOk;
}

// --- synth ------------------------------------------------------------------

struct SynthArgs {
    std::string family;
    unsigned k = 0;
    std::string out_path;
    std::string format = "json";
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    const auto family = parse_channel_family(a.family);
    if (!family) throw UsageError("unknown family '" + a.family + "' (qdmm, mod2n, mod2n-1)");
    if (a.format != "json" && a.format != "gatelist") {
        throw UsageError("synth format must be json or gatelist");
    }
    MultiplierCircuit m;
    try {
        m = build_channel_circuit(Modulus::make(*family, a.k));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const std::string text = export_gatelist(m.circuit);
    if (!a.out_path.empty()) {
        std::ofstream file(a.out_path, std::ios::binary);
        file << text;
        if (!file) throw std::runtime_error("cannot write " + a.out_path);
    }
    if (a.format == "gatelist") {
        out << text;
        return kExitOk;
    }
    Json j = {{"family", a.family}, {"k", a.k}, {"modulus", Modulus::make(*family, a.k).value}};
    j.update(report_json(measure_resources(m.circuit)));
    j["gatelist"] = a.out_path.empty() ? Json(nullptr) : Json(a.out_path);
    out << j.dump(2) << '\n';
    return kExitOk;
}

// --- multiply ---------------------------------------------------------------

struct MultiplyArgs {
    std::string x;
    std::string y;
    std::optional<unsigned> paper_set;
    std::vector<std::uint64_t> moduli;
    std::optional<unsigned> n;
    unsigned parallelism = 1;
    std::string manifest_dir;
};

int cmd_multiply(const MultiplyArgs& a, std::ostream& out, std::ostream& err) {
    const BigInt x = parse_operand(a.x);
    const BigInt y = parse_operand(a.y);
    const ModuliSet set = resolve_set(a.paper_set, a.moduli, a.n);

    CircuitCache cache;
    std::vector<ChannelJob> jobs;
    try {
        jobs = plan_multiply(x, y, set, cache);
    } catch (const RangeError& e) {
        throw UsageError(e.what());
    }

    std::vector<ChannelResult> results;
    BigInt product;
    try {
        results = execute(jobs, a.parallelism);
        product = assemble(results, set);
    } catch (const JobFailure& e) {
        err << "channel mod " << set.moduli()[e.index()].value << " failed: " << e.what() << '\n';
        return kExitVerifyFailed;
    } catch (const AssemblyError& e) {
        err << e.what() << '\n';
        return kExitVerifyFailed;
    }

    const BigInt expected = x * y;
    Json channels = Json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        channels.push_back({{"modulus", jobs[i].modulus.value},
                            {"family", family_name(jobs[i].modulus.family)},
                            {"k", jobs[i].modulus.k},
                            {"x_residue", jobs[i].x_residue},
                            {"y_residue", jobs[i].y_residue},
                            {"residue", results[i].residue}});
    }
    const bool ok = product == expected;
    Json j = {{"x", bigint_to_json(x)},
              {"y", bigint_to_json(y)},
              {"product", bigint_to_json(product)},
              {"expected", bigint_to_json(expected)},
              {"ok", ok},
              {"moduli_set", to_json(set)},
              {"channels", channels}};
    if (!a.manifest_dir.empty()) {
        write_manifest(a.manifest_dir, x, y, set, jobs, results, product);
        j["manifest"] = (std::filesystem::path(a.manifest_dir) / "manifest.json").string();
    }
    out << j.dump(2) << '\n';
    if (!ok) err << "distributed product " << product << " differs from " << expected << '\n';
    return ok ? kExitOk : kExitVerifyFailed;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string scope;
    std::optional<unsigned> k;
    std::optional<unsigned> n;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> samples;
    std::vector<std::uint64_t> moduli;
    unsigned parallelism = 1;
};

inline constexpr unsigned kChannelExhaustiveMax = 8;
inline constexpr std::uint64_t kDefaultSamples = 1000;

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const auto width = a.k ? a.k : a.n;
    if (!width) throw UsageError("verify needs --k (or --n)");
    Json j = {{"scope", a.scope}, {"width", *width}};
    VerifyReport report;

    if (a.scope == "end-to-end") {
        const ModuliSet set = resolve_set(std::nullopt, a.moduli, width);
        if (required_range(*width) > set.range()) {
            throw UsageError("moduli set range " + set.range().str() + " is too small for " +
                             std::to_string(*width) + "-bit operands");
        }
        VerifyOptions options;
        options.parallelism = a.parallelism;
        const bool exhaustive = !a.samples && *width <= kExhaustiveMaxWidth;
        j["moduli_set"] = to_json(set);
        j["mode"] = exhaustive ? "exhaustive" : "sampled";
        if (exhaustive) {
            report = verify_exhaustive(*width, set, options);
        } else {
            if (*width > 31) throw UsageError("end-to-end verification supports n <= 31");
            j["seed"] = a.seed;
            report = verify_sampled(*width, set, a.samples.value_or(kDefaultSamples), a.seed, options);
        }
    } else {
        const auto family = parse_channel_family(a.scope);
        if (!family) throw UsageError("unknown scope '" + a.scope + "' (qdmm, mod2n, mod2n-1, end-to-end)");
        Modulus m{};
        try {
            m = Modulus::make(*family, *width);
            (void)build_channel_circuit(m);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        const bool exhaustive = !a.samples && *width <= kChannelExhaustiveMax;
        j["modulus"] = m.value;
        j["mode"] = exhaustive ? "exhaustive" : "sampled";
        if (exhaustive) {
            report = verify_channel(m);
        } else {
            j["seed"] = a.seed;
            report = verify_channel(m, a.samples.value_or(kDefaultSamples), a.seed);
        }
    }
    j.update(to_json(report));
    out << j.dump(2) << '\n';
    return report.ok() ? kExitOk : kExitVerifyFailed;
}

// --- plan -------------------------------------------------------------------

struct PlanArgs {
    unsigned n = 0;
    bool paper = false;
    std::string objective = "depth";
};

int cmd_plan(const PlanArgs& a, std::ostream& out) {
    SearchObjective objective = SearchObjective::MinToffoliDepth;
    if (a.objective == "tcount") {
        objective = SearchObjective::MinTCount;
    } else if (a.objective != "depth") {
        throw UsageError("objective must be depth or tcount");
    }
    const ModuliSet set = a.paper ? paper_set_lookup(a.n) : search_set(a.n, objective);
    std::vector<FormulaReport> costs;
    Json channels = Json::array();
    for (const auto& m : set.moduli()) {
        costs.push_back(estimate(design_for(m.family), m.k));
        Json c = {{"modulus", m.value}, {"design", design_name(design_for(m.family))}, {"k", m.k}};
        c.update(report_json(costs.back().resources));
        channels.push_back(std::move(c));
    }
    Json j = {{"n", a.n},
              {"required_range", bigint_to_json(required_range(a.n))},
              {"moduli_set", to_json(set)},
              {"channels", channels},
              {"distributed_max", report_json(aggregate_max(costs))}};
    out << j.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Synthesis, simulation and resource estimation for RNS-distributed quantum "
                 "multiplication"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate_cmd = app.add_subcommand("estimate", "Evaluate a design's resource formulas");
    estimate_cmd->add_option("--design", est.design,
                             "mod2n+1, mod2n, mod2n-1, munoz-original or munoz-qcla")
        ->required();
    estimate_cmd->add_option("--n", est.n, "Operand width")->required();
    estimate_cmd->add_option("--format", est.format, "json, csv or markdown");

    TablesArgs tab;
    auto* tables_cmd = app.add_subcommand("tables", "Regenerate the published resource tables");
    tables_cmd->add_option("which", tab.which, "costs, comparison, improvements or all");
    tables_cmd->add_option("--format", tab.format, "csv, json or markdown");

    SynthArgs syn;
    auto* synth_cmd = app.add_subcommand("synth", "Build a channel multiplier circuit");
    synth_cmd->add_option("--family", syn.family, "qdmm, mod2n or mod2n-1")->required();
    synth_cmd->add_option("--k", syn.k, "Channel width")->required();
    synth_cmd->add_option("--out", syn.out_path, "Write the gate list to this file");
    synth_cmd->add_option("--format", syn.format, "json (measured resources) or gatelist");

    MultiplyArgs mul;
    mul.parallelism = default_parallelism();
    auto* multiply_cmd = app.add_subcommand("multiply", "Multiply through the residue channels");
    multiply_cmd->add_option("x", mul.x)->required();
    multiply_cmd->add_option("y", mul.y)->required();
    multiply_cmd->add_option("--paper-set", mul.paper_set, "Use the published set for width N");
    multiply_cmd->add_option("--moduli", mul.moduli, "Comma-separated moduli")->delimiter(',');
    multiply_cmd->add_option("--n", mul.n, "Operand width; picks a set for it");
    multiply_cmd->add_option("--parallelism", mul.parallelism, "Worker threads")
        ->check(CLI::PositiveNumber);
    multiply_cmd->add_option("--manifest", mul.manifest_dir,
                             "Write manifest.json and channel gate lists to this directory");

    VerifyArgs ver;
    ver.parallelism = default_parallelism();
    auto* verify_cmd = app.add_subcommand("verify", "Check circuits against classical oracles");
    verify_cmd->add_option("scope", ver.scope, "qdmm, mod2n, mod2n-1 or end-to-end")->required();
    verify_cmd->add_option("--k", ver.k, "Channel width");
    verify_cmd->add_option("--n", ver.n, "Operand width (end-to-end)");
    verify_cmd->add_option("--seed", ver.seed, "Seed for sampled runs");
    verify_cmd->add_option("--samples", ver.samples, "Sample this many pairs instead of sweeping");
    verify_cmd->add_option("--moduli", ver.moduli, "Comma-separated moduli (end-to-end)")->delimiter(',');
    verify_cmd->add_option("--parallelism", ver.parallelism, "Worker threads")
        ->check(CLI::PositiveNumber);

    PlanArgs plan;
    auto* plan_cmd = app.add_subcommand("plan", "Choose a moduli set for an operand width");
    plan_cmd->add_option("--n", plan.n, "Operand width")->required();
    plan_cmd->add_flag("--paper-set", plan.paper, "Use the published set");
    plan_cmd->add_option("--objective", plan.objective, "depth or tcount");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (estimate_cmd->parsed()) return cmd_estimate(est, out);
        if (tables_cmd->parsed()) return cmd_tables(tab, out);
        if (synth_cmd->parsed()) return cmd_synth(syn, out);
        if (multiply_cmd->parsed()) return cmd_multiply(mul, out, err);
        if (verify_cmd->parsed()) return cmd_verify(ver, out);
        if (plan_cmd->parsed()) return cmd_plan(plan, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
    return kExitUsage;
}

} // namespace qrns::cli
