#include "qrns/tables.hpp"

#include <sstream>
#include <stdexcept>

namespace qrns {

std::vector<CostRow> cost_estimate_rows() {
    std::vector<CostRow> rows;
    for (unsigned n = 2; n <= 4; ++n) {
        for (Family f : {Family::MersenneLike, Family::Pow2, Family::FermatLike}) {
            rows.push_back({n, Modulus::make(f, n), estimate(design_for(f), n).resources});
        }
    }
    return rows;
}

ComparisonRow comparison_row(unsigned n, const ModuliSet& set) {
    std::vector<FormulaReport> channels;
    for (const auto& m : set.moduli()) channels.push_back(estimate(design_for(m.family), m.k));
    const BigInt top = (BigInt(1) << n) - 1;
    return {n,
            top * top,
            2 * n,
            estimate(DesignId::MunozQcla, n).resources,
            set,
            aggregate_max(channels)};
}

std::vector<ComparisonRow> comparison_rows() {
    std::vector<ComparisonRow> rows;
    for (unsigned n = kPaperSetMin; n <= kPaperSetMax; ++n) {
        rows.push_back(comparison_row(n, paper_set_lookup(n)));
    }
    return rows;
}

std::vector<ImprovementRow> improvement_rows(unsigned first, unsigned last) {
    if (first < kPaperSetMin || last > kPaperSetMax || first > last) {
        throw std::out_of_range("improvement rows are defined for input widths 3..8");
    }
    std::vector<ImprovementRow> rows;
    for (unsigned n = first; n <= last; ++n) {
        const ComparisonRow c = comparison_row(n, paper_set_lookup(n));
        rows.push_back({c.output_size, improvement(c.non_distributed, c.distributed)});
    }
    return rows;
}

// ---------------------------------------------------------------------------

std::optional<TableKind> parse_table_kind(std::string_view name) {
    if (name == "costs") return TableKind::Costs;
    if (name == "comparison") return TableKind::Comparison;
    if (name == "improvements") return TableKind::Improvements;
    return std::nullopt;
}

std::optional<TableFormat> parse_table_format(std::string_view name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "json") return TableFormat::Json;
    if (name == "markdown" || name == "md") return TableFormat::Markdown;
    return std::nullopt;
}

std::string_view table_kind_name(TableKind kind) {
    switch (kind) {
    case TableKind::Costs: return "costs";
    case TableKind::Comparison: return "comparison";
    case TableKind::Improvements: return "improvements";
    }
    return "?";
}

namespace {

using Json = nlohmann::ordered_json;

struct Cell {
    std::string text;
    Json json;
};

Cell cell(std::int64_t v) { return {std::to_string(v), v}; }
Cell cell(const BigInt& v) { return {v.str(), bigint_to_json(v)}; }
Cell cell(const Percent& p) { return {p.to_string(), p.value()}; }
Cell cell(std::string s) { return {s, s}; }

Cell cell(const ModuliSet& set) {
    std::string text = "(";
    Json values = Json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i != 0) text += ", ";
        text += std::to_string(set.moduli()[i].value);
        values.push_back(set.moduli()[i].value);
    }
    return {text + ")", values};
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

void append(std::vector<Cell>& row, const ResourceReport& r) {
    row.push_back(cell(r.qubits));
    row.push_back(cell(r.toffoli_count));
    row.push_back(cell(r.toffoli_depth));
    row.push_back(cell(r.cnot_count));
    row.push_back(cell(r.cnot_depth));
}

std::string family_label(Family f) {
    switch (f) {
    case Family::Pow2: return "2^n";
    case Family::MersenneLike: return "2^n-1";
    case Family::FermatLike: return "2^n+1";
    }
    return "?";
}

Table build_table(TableKind kind) {
    Table t;
    t.name = std::string(table_kind_name(kind));
    switch (kind) {
    case TableKind::Costs:
        t.columns = {"n", "type", "mod", "qubits", "toffoli_count", "toffoli_depth", "cnot_count",
                     "cnot_depth"};
        for (const auto& r : cost_estimate_rows()) {
            std::vector<Cell> row{cell(std::int64_t{r.n}), cell(family_label(r.modulus.family)),
                                  cell(static_cast<std::int64_t>(r.modulus.value))};
            append(row, r.resources);
            t.rows.push_back(std::move(row));
        }
        break;
    case TableKind::Comparison:
        t.columns = {"n", "max_range", "output_size",
                     "nd_qubits", "nd_toffoli_count", "nd_toffoli_depth", "nd_cnot_count", "nd_cnot_depth",
                     "rns_set", "range",
                     "d_qubits", "d_toffoli_count", "d_toffoli_depth", "d_cnot_count", "d_cnot_depth"};
        for (const auto& r : comparison_rows()) {
            std::vector<Cell> row{cell(std::int64_t{r.n}), cell(r.max_range),
                                  cell(std::int64_t{r.output_size})};
            append(row, r.non_distributed);
            row.push_back(cell(r.set));
            row.push_back(cell(r.set.range()));
            append(row, r.distributed);
            t.rows.push_back(std::move(row));
        }
        break;
    case TableKind::Improvements:
        t.columns = {"output_size", "toffoli_count_impr", "toffoli_count_impr_pct",
                     "toffoli_depth_impr", "toffoli_depth_impr_pct", "t_count_impr",
                     "t_count_impr_pct"};
        for (const auto& r : improvement_rows()) {
            const Improvement& i = r.improvement;
            t.rows.push_back({cell(std::int64_t{r.output_size}), cell(i.toffoli_count),
                              cell(i.toffoli_count_pct), cell(i.toffoli_depth),
                              cell(i.toffoli_depth_pct), cell(i.t_count), cell(i.t_count_pct)});
        }
        break;
    }
    return t;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string render_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i].text);
        out << '\n';
    }
    return out.str();
}

std::string render_markdown(const Table& t) {
    std::ostringstream out;
    out << "### " << t.name << "\n\n|";
    for (const auto& c : t.columns) out << ' ' << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : t.rows) {
        out << '|';
        for (const auto& c : row) out << ' ' << c.text << " |";
        out << '\n';
    }
    return out.str();
}

Json to_json(const Table& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i].json;
        rows.push_back(std::move(obj));
    }
    return rows;
}

} // namespace

std::string emit_table(TableKind kind, TableFormat format) {
    const Table t = build_table(kind);
    switch (format) {
    case TableFormat::Csv: return render_csv(t);
    case TableFormat::Markdown: return render_markdown(t);
    case TableFormat::Json: return Json{{"table", t.name}, {"rows", to_json(t)}}.dump(2) + "\n";
    }
    throw std::logic_error("unreachable table format");
}

std::string emit_tables(TableFormat format) {
    constexpr TableKind kinds[] = {TableKind::Costs, TableKind::Comparison, TableKind::Improvements};
    if (format == TableFormat::Json) {
        Json all = Json::object();
        for (TableKind k : kinds) all[std::string(table_kind_name(k))] = to_json(build_table(k));
        return all.dump(2) + "\n";
    }
    std::string out;
    for (TableKind k : kinds) {
        if (!out.empty()) out += '\n';
        out += emit_table(k, format);
    }
    return out;
}

} // namespace qrns
