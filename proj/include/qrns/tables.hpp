#pragma once

// Regenerates the three published resource tables from the formulas alone:
// per-modulus cost estimates, non-distributed vs distributed comparison, and
// the improvement analysis.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrns/estimator.hpp"
#include "qrns/rns.hpp"

namespace qrns {

struct CostRow {
    unsigned n;
    Modulus modulus;
    ResourceReport resources;
};

/// n = 2..4, each with the 2^n - 1, 2^n and 2^n + 1 channels.
std::vector<CostRow> cost_estimate_rows();

struct ComparisonRow {
    unsigned n;
    BigInt max_range;  ///< (2^n - 1)^2
    unsigned output_size;
    ResourceReport non_distributed;
    ModuliSet set;
    ResourceReport distributed;
};

/// Input widths 3..8 against their published moduli sets.
std::vector<ComparisonRow> comparison_rows();
ComparisonRow comparison_row(unsigned n, const ModuliSet& set);

struct ImprovementRow {
    unsigned output_size;
    Improvement improvement;
};

/// One row per input width in [first, last], both within 3..8.
std::vector<ImprovementRow> improvement_rows(unsigned first = kPaperSetMin,
                                             unsigned last = kPaperSetMax);

enum class TableKind { Costs, Comparison, Improvements };
enum class TableFormat { Csv, Json, Markdown };

std::optional<TableKind> parse_table_kind(std::string_view name);
std::optional<TableFormat> parse_table_format(std::string_view name);
std::string_view table_kind_name(TableKind kind);

std::string emit_table(TableKind kind, TableFormat format);

/// All three tables. CSV and markdown separate them with a blank line; JSON
/// wraps them in one object keyed by table name.
std::string emit_tables(TableFormat format);

} // namespace qrns
