#include "qrns/estimator.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qrns {

std::string_view design_name(DesignId design) {
    switch (design) {
    case DesignId::Mod2nPlus1: return "mod2n+1";
    case DesignId::Mod2n: return "mod2n";
    case DesignId::Mod2nMinus1: return "mod2n-1";
    case DesignId::MunozOriginal: return "munoz-original";
    case DesignId::MunozQcla: return "munoz-qcla";
    }
    return "?";
}

std::optional<DesignId> parse_design(std::string_view name) {
    for (DesignId d : kAllDesigns) {
        if (design_name(d) == name) return d;
    }
    return std::nullopt;
}

int popcount_w(std::uint64_t n) { return std::popcount(n); }

int floor_log2_ratio(std::uint64_t p, std::uint64_t q) {
    if (p == 0 || q == 0) throw std::invalid_argument("floor_log2_ratio needs positive arguments");
    using U = unsigned __int128;
    if (p >= q) {
        // largest e with q * 2^e <= p
        int e = 0;
        while ((U{q} << (e + 1)) <= U{p}) ++e;
        return e;
    }
    // smallest k with p * 2^k >= q, so 2^-k <= p/q < 2^-(k-1)
    int k = 0;
    while ((U{p} << k) < U{q}) ++k;
    return -k;
}

namespace {

struct Terms {
    std::int64_t n;
    std::int64_t w_n, w_nm1;
    std::int64_t lg_n, lg_nm1, lg_n_3, lg_nm1_3;
};

Terms terms_for(unsigned n) {
    const std::uint64_t u = n;
    return {static_cast<std::int64_t>(n),
            popcount_w(u),
            popcount_w(u - 1),
            floor_log2_ratio(u, 1),
            floor_log2_ratio(u - 1, 1),
            floor_log2_ratio(u, 3),
            floor_log2_ratio(u - 1, 3)};
}

ResourceReport evaluate(DesignId design, const Terms& t) {
    const std::int64_t n = t.n;
    ResourceReport r;
    switch (design) {
    case DesignId::Mod2nPlus1:
        r.qubits = 2 * n * n + 4 * n + 2;
        r.toffoli_count = 2 * n * n + 6 * n - 1;
        r.toffoli_depth = 2 * n * n + 6 * n - 2;
        r.cnot_count = 10 * n * n + 16 * n - 6;
        r.cnot_depth = 10 * n * n + 13 * n - 1;
        break;
    case DesignId::Mod2n:
        r.qubits = 6 * n - 2 - t.w_nm1 - t.lg_nm1;
        r.toffoli_count = 11 * n * n - 22 * n + 12 - 6 * (n - 1) * (t.w_nm1 + t.lg_nm1);
        r.toffoli_depth = n * n + 12 * n - 12 + (n - 1) * (3 * t.lg_nm1 + t.lg_nm1_3);
        r.cnot_count = 4 * n * n - 9 * n + 5;
        r.cnot_depth = 4 * n - 4;
        break;
    case DesignId::Mod2nMinus1:
        r.qubits = 6 * n - 2;
        r.toffoli_count = 12 * n * n - 22 * n + 11;
        r.toffoli_depth = 2 * n * n + 7 * n - 8 + (n - 1) * (3 * t.lg_nm1 + t.lg_nm1_3);
        r.cnot_count = 4 * n * n - 4 * n;
        r.cnot_depth = 4 * n - 4;
        break;
    case DesignId::MunozOriginal:
        r.qubits = 4 * n + 1;
        r.toffoli_count = 3 * n * n - 2;
        r.toffoli_depth = 3 * n * n - 2;
        r.cnot_count = 5 * n * n - 11 * n + 6;
        r.cnot_depth = 3 * n * n - 5 * n + 2;
        break;
    case DesignId::MunozQcla:
        r.qubits = 6 * n - t.w_n - t.lg_n - 1;
        r.toffoli_count =
            11 * n * n - 15 * n + 5 - 3 * (n - 1) * (t.w_n + t.w_nm1 + t.lg_n + t.lg_nm1);
        r.toffoli_depth = (n - 1) * (t.lg_n + t.lg_nm1 + t.lg_n_3 + t.lg_nm1_3) + 9 * n - 8;
        r.cnot_count = 4 * n * n - 9 * n + 5;
        r.cnot_depth = 4 * n - 4;
        break;
    }
    r.t_count = kTPerToffoli * r.toffoli_count;
    return r;
}

} // namespace

FormulaReport estimate(DesignId design, unsigned n) {
    if (n < kEstimateMinWidth || n > kEstimateMaxWidth) {
        throw std::domain_error("resource formulas need n in [2, 2^20], got " + std::to_string(n));
    }
    return {design, n, evaluate(design, terms_for(n))};
}

ResourceReport aggregate_max(std::span<const FormulaReport> reports) {
    if (reports.empty()) throw std::invalid_argument("aggregate_max of an empty report list");
    ResourceReport out = reports.front().resources;
    for (const auto& fr : reports.subspan(1)) {
        const ResourceReport& r = fr.resources;
        out.qubits = std::max(out.qubits, r.qubits);
        out.toffoli_count = std::max(out.toffoli_count, r.toffoli_count);
        out.toffoli_depth = std::max(out.toffoli_depth, r.toffoli_depth);
        out.cnot_count = std::max(out.cnot_count, r.cnot_count);
        out.cnot_depth = std::max(out.cnot_depth, r.cnot_depth);
        out.t_count = std::max(out.t_count, r.t_count);
    }
    return out;
}

std::string Percent::to_string() const {
    const bool negative = thousandths < 0;
    const std::int64_t mag = negative ? -thousandths : thousandths;
    std::string out = (negative ? "-" : "") + std::to_string(mag / 1000);
    std::int64_t frac = mag % 1000;
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, 3 - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out += "." + digits;
    }
    return out;
}

Percent percent_of(std::int64_t part, std::int64_t whole) {
    if (whole == 0) throw std::domain_error("percentage of a zero baseline");
    using I = __int128;
    I num = I{part} * 100000;
    I den = whole;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const bool negative = num < 0;
    const I mag = negative ? -num : num;
    const I rounded = (2 * mag + den) / (2 * den);
    return {static_cast<std::int64_t>(negative ? -rounded : rounded)};
}

Improvement improvement(const ResourceReport& baseline, const ResourceReport& distributed) {
    Improvement out;
    out.toffoli_count = baseline.toffoli_count - distributed.toffoli_count;
    out.toffoli_count_pct = percent_of(out.toffoli_count, baseline.toffoli_count);
    out.toffoli_depth = baseline.toffoli_depth - distributed.toffoli_depth;
    out.toffoli_depth_pct = percent_of(out.toffoli_depth, baseline.toffoli_depth);
    out.t_count = kTPerToffoli * out.toffoli_count;
    out.t_count_pct = percent_of(out.t_count, kTPerToffoli * baseline.toffoli_count);
    return out;
}

} // namespace qrns
