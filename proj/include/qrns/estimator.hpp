#pragma once

// Closed-form resource formulas for the five multiplier designs compared in
// this project, evaluated exactly in integer arithmetic.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qrns/circuit.hpp"

namespace qrns {

enum class DesignId { Mod2nPlus1, Mod2n, Mod2nMinus1, MunozOriginal, MunozQcla };

inline constexpr DesignId kAllDesigns[] = {DesignId::Mod2nPlus1, DesignId::Mod2n,
                                           DesignId::Mod2nMinus1, DesignId::MunozOriginal,
                                           DesignId::MunozQcla};

/// Command-line spelling: mod2n+1, mod2n, mod2n-1, munoz-original, munoz-qcla.
std::string_view design_name(DesignId design);
std::optional<DesignId> parse_design(std::string_view name);

struct FormulaReport {
    DesignId design;
    unsigned n;
    ResourceReport resources;
};

/// Number of ones in the binary expansion of n.
int popcount_w(std::uint64_t n);

/// floor(log2(p / q)) for positive p, q, by exact integer comparison. Goes
/// negative when p < q, e.g. floor(log2(1/3)) = -2.
int floor_log2_ratio(std::uint64_t p, std::uint64_t q);

inline constexpr unsigned kEstimateMinWidth = 2;
inline constexpr unsigned kEstimateMaxWidth = 1U << 20;

FormulaReport estimate(DesignId design, unsigned n);

/// Component-wise maximum, the cost of running the reports' circuits side by
/// side. Throws std::invalid_argument on an empty list.
ResourceReport aggregate_max(std::span<const FormulaReport> reports);

/// A percentage held as an exact count of thousandths of a percent.
struct Percent {
    std::int64_t thousandths = 0;

    double value() const { return static_cast<double>(thousandths) / 1000.0; }
    /// Shortest decimal form: "86.25", "46.018", "0".
    std::string to_string() const;

    friend bool operator==(const Percent&, const Percent&) = default;
};

/// part / whole * 100 rounded half away from zero to three decimals.
Percent percent_of(std::int64_t part, std::int64_t whole);

struct Improvement {
    std::int64_t toffoli_count = 0;
    Percent toffoli_count_pct;
    std::int64_t toffoli_depth = 0;
    Percent toffoli_depth_pct;
    std::int64_t t_count = 0;
    Percent t_count_pct;
};

/// Reduction of `distributed` relative to `baseline`.
Improvement improvement(const ResourceReport& baseline, const ResourceReport& distributed);

} // namespace qrns
