#include <doctest.h>

#include <cmath>

#include "qrns/estimator.hpp"
#include "qrns/tables.hpp"
#include "reference_tables.hpp"

using namespace qrns;

namespace {

int slow_popcount(std::uint64_t n) {
    int w = 0;
    for (; n != 0; n /= 2) w += static_cast<int>(n % 2);
    return w;
}

// floor(log2(p/q)) by repeated halving/doubling of a rational
int slow_floor_log2(std::uint64_t p, std::uint64_t q) {
    int k = 0;
    long double r = static_cast<long double>(p) / static_cast<long double>(q);
    while (r >= 2) { r /= 2; ++k; }
    while (r < 1) { r *= 2; --k; }
    return k;
}

DesignId design_for_modulus(std::uint64_t modulus, unsigned n) {
    if (modulus == (1ULL << n)) return DesignId::Mod2n;
    if (modulus == (1ULL << n) - 1) return DesignId::Mod2nMinus1;
    return DesignId::Mod2nPlus1;
}

} // namespace

TEST_CASE("popcount") {
    CHECK(popcount_w(7) == 3);
    CHECK(popcount_w(8) == 1);
    CHECK(popcount_w(0) == 0);
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(popcount_w(n) == slow_popcount(n));
}

TEST_CASE("floor log2 of a ratio") {
    CHECK(floor_log2_ratio(1, 3) == -2);
    CHECK(floor_log2_ratio(1, 1) == 0);
    CHECK(floor_log2_ratio(7, 1) == 2);
    CHECK(floor_log2_ratio(8, 1) == 3);
    CHECK(floor_log2_ratio(2, 3) == -1);
    CHECK(floor_log2_ratio(3, 3) == 0);
    for (std::uint64_t p = 1; p < 200; ++p) {
        for (std::uint64_t q = 1; q < 40; ++q) CHECK(floor_log2_ratio(p, q) == slow_floor_log2(p, q));
    }
}

TEST_CASE("design names") {
    for (DesignId d : kAllDesigns) CHECK(parse_design(design_name(d)) == d);
    CHECK_FALSE(parse_design("mod2n+2").has_value());
}

TEST_CASE("estimate examples") {
    auto r = estimate(DesignId::Mod2nPlus1, 2).resources;
    CHECK(r.qubits == 18);
    CHECK(r.toffoli_count == 19);
    CHECK(r.toffoli_depth == 18);
    CHECK(r.cnot_count == 66);
    CHECK(r.cnot_depth == 65);

    r = estimate(DesignId::MunozQcla, 8).resources;
    CHECK(r.toffoli_count == 400);
    CHECK(r.toffoli_depth == 113);
    CHECK(r.cnot_count == 189);

    for (unsigned n = 2; n <= 16; ++n) {
        const auto m = estimate(DesignId::MunozOriginal, n).resources;
        CHECK(m.toffoli_count == 3 * n * n - 2);
        CHECK(m.cnot_depth == 3 * n * n - 5 * n + 2);
        const auto p = estimate(DesignId::Mod2nPlus1, n).resources;
        CHECK(p.toffoli_count == 2 * n * n + 6 * n - 1);
    }

    for (DesignId d : kAllDesigns) {
        for (unsigned n = 2; n <= 64; ++n) {
            const auto e = estimate(d, n).resources;
            CHECK(e.t_count == 7 * e.toffoli_count);
        }
        CHECK_THROWS_AS(estimate(d, 1), std::domain_error);
        CHECK_THROWS_AS(estimate(d, 0), std::domain_error);
    }
}

TEST_CASE("cost estimates reproduce the published table") {
    for (const auto& row : reference::kCosts) {
        CAPTURE(row.modulus);
        const auto r = estimate(design_for_modulus(row.modulus, row.n), row.n).resources;
        CHECK(r.qubits == row.qubits);
        CHECK(r.toffoli_count == row.toffoli_count);
        CHECK(r.toffoli_depth == row.toffoli_depth);
        CHECK(r.cnot_count == row.cnot_count);
        CHECK(r.cnot_depth == row.cnot_depth);
    }
    CHECK(cost_estimate_rows().size() == reference::kCosts.size());
}

TEST_CASE("aggregate_max") {
    const FormulaReport reps[] = {estimate(DesignId::Mod2nMinus1, 2), estimate(DesignId::Mod2n, 2),
                                  estimate(DesignId::Mod2nPlus1, 2)};
    const auto a = aggregate_max(reps);
    CHECK(a.qubits == 18);
    CHECK(a.toffoli_count == 19);
    CHECK(a.toffoli_depth == 18);
    CHECK(a.cnot_count == 66);
    CHECK(a.cnot_depth == 65);

    // maxima come from different rows: (4,5,7,9) takes depth from mod 7
    const FormulaReport mixed[] = {estimate(DesignId::Mod2n, 2), estimate(DesignId::Mod2nPlus1, 2),
                                   estimate(DesignId::Mod2nMinus1, 3), estimate(DesignId::Mod2nPlus1, 3)};
    const auto b = aggregate_max(mixed);
    CHECK(b.qubits == 32);
    CHECK(b.toffoli_count == 53);
    CHECK(b.toffoli_depth == 35);
    CHECK(b.cnot_count == 132);

    CHECK(aggregate_max(std::span(reps, 1)) == reps[0].resources);
    CHECK_THROWS_AS(aggregate_max(std::span<const FormulaReport>{}), std::invalid_argument);
}

TEST_CASE("percent rounding") {
    CHECK(percent_of(345, 400).to_string() == "86.25");
    CHECK(percent_of(52, 113).to_string() == "46.018");
    CHECK(percent_of(0, 37).to_string() == "0");
    CHECK(percent_of(1, 3).thousandths == 33333);
    CHECK(percent_of(2, 3).thousandths == 66667);
    CHECK(percent_of(1, 8).to_string() == "12.5");
    CHECK(percent_of(-1, 3).thousandths == -33333);
    for (std::int64_t part = 0; part <= 300; ++part) {
        const double exact = 100.0 * static_cast<double>(part) / 301.0;
        CHECK(std::abs(percent_of(part, 301).value() - exact) <= 0.0005 + 1e-9);
    }
}

TEST_CASE("improvement") {
    const auto base = estimate(DesignId::MunozQcla, 8).resources;
    ResourceReport d;
    d.toffoli_count = 55;
    d.toffoli_depth = 61;
    d.t_count = 385;
    const Improvement imp = improvement(base, d);
    CHECK(imp.toffoli_count == 345);
    CHECK(imp.toffoli_depth == 52);
    CHECK(imp.t_count == 2415);
    CHECK(imp.toffoli_count_pct.to_string() == "86.25");
    CHECK(imp.toffoli_depth_pct.to_string() == "46.018");
}

TEST_CASE("comparison and improvement tables") {
    const auto rows = comparison_rows();
    REQUIRE(rows.size() == reference::kComparison.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& want = reference::kComparison[i];
        const auto& got = rows[i];
        CAPTURE(want.n);
        CHECK(got.n == want.n);
        CHECK(got.max_range == want.max_range);
        CHECK(got.output_size == want.output_size);
        CHECK(got.non_distributed.qubits == want.non_distributed.qubits);
        CHECK(got.non_distributed.toffoli_count == want.non_distributed.toffoli_count);
        CHECK(got.non_distributed.toffoli_depth == want.non_distributed.toffoli_depth);
        CHECK(got.non_distributed.cnot_count == want.non_distributed.cnot_count);
        CHECK(got.non_distributed.cnot_depth == want.non_distributed.cnot_depth);
        CHECK(got.distributed.qubits == want.distributed.qubits);
        CHECK(got.distributed.toffoli_count == want.distributed.toffoli_count);
        CHECK(got.distributed.toffoli_depth == want.distributed.toffoli_depth);
        CHECK(got.distributed.cnot_count == want.distributed.cnot_count);
        CHECK(got.distributed.cnot_depth == want.distributed.cnot_depth);
        const auto range = got.set.range();
        CHECK((range == want.range || range - 1 == want.range));
    }

    const auto gains = improvement_rows();
    REQUIRE(gains.size() == reference::kGains.size());
    for (std::size_t i = 0; i < gains.size(); ++i) {
        const auto& want = reference::kGains[i];
        const auto& got = gains[i];
        CAPTURE(want.output_size);
        CHECK(got.output_size == want.output_size);
        CHECK(got.improvement.toffoli_count == want.toffoli_count);
        CHECK(got.improvement.toffoli_depth == want.toffoli_depth);
        CHECK(got.improvement.t_count == want.t_count);
        CHECK(std::abs(got.improvement.toffoli_count_pct.value() - want.toffoli_count_pct) <= 0.001);
        CHECK(std::abs(got.improvement.toffoli_depth_pct.value() - want.toffoli_depth_pct) <= 0.001);
        CHECK(std::abs(got.improvement.t_count_pct.value() - want.t_count_pct) <= 0.001);
    }
}
