#include <doctest.h>

#include <set>

#include "qrns/arith_blocks.hpp"
#include "test_support.hpp"

using namespace qrns;

namespace {

struct Run {
    const Circuit& c;
    BasisState state;

    explicit Run(const Circuit& circuit) : c(circuit), state(circuit.qubit_count()) {}
    Run& set(std::string_view reg, std::uint64_t v) {
        state.write(c.register_qubits(reg), v);
        return *this;
    }
    BasisState go() const { return simulate(c, state); }
};

std::uint64_t read(const Circuit& c, const BasisState& s, std::string_view reg) {
    return s.read(c.register_qubits(reg));
}

} // namespace

TEST_CASE("3:2 compressor matches the full-adder table") {
    const Circuit c = compressor32_circuit();
    CHECK(c.qubit_count() == 4);  // a, b, cin and a single ancilla
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int cin = 0; cin < 2; ++cin) {
                const BasisState out = Run(c).set("A", a).set("B", b).set("Sum", cin).go();
                const auto [sum, carry] = testing::full_adder(a, b, cin);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(cin);
                CHECK(read(c, out, "Sum") == static_cast<std::uint64_t>(sum));
                CHECK(read(c, out, "Cout") == static_cast<std::uint64_t>(carry));
                CHECK(read(c, out, "A") == static_cast<std::uint64_t>(a));
                CHECK(read(c, out, "B") == static_cast<std::uint64_t>(b));
                // weight is preserved
                CHECK(a + b + cin == sum + 2 * carry);
            }
        }
    }

    const BasisState zero = Run(c).go();
    CHECK(read(c, zero, "Sum") == 0);
    CHECK(read(c, zero, "Cout") == 0);
    const BasisState two = Run(c).set("A", 1).set("B", 1).go();
    CHECK(read(c, two, "Sum") == 0);
    CHECK(read(c, two, "Cout") == 1);
}

TEST_CASE("compressor rejects overlapping qubits") {
    Circuit c(4);
    CHECK_THROWS_AS(append_compressor32(c, {0, 1, 1, 3}), LayoutError);
    CHECK_THROWS_AS(append_compressor32(c, {0, 1, 2, 0}), LayoutError);
}

TEST_CASE("ripple CPA") {
    CHECK_THROWS_AS(ripple_cpa_circuit(0), WidthError);

    const Circuit c3 = ripple_cpa_circuit(3);
    BasisState out = Run(c3).set("A", 5).set("B", 6).go();
    CHECK(read(c3, out, "B") == 3);
    CHECK(read(c3, out, "Cout") == 1);
    CHECK(read(c3, out, "A") == 5);

    out = Run(c3).set("B", 4).go();
    CHECK(read(c3, out, "B") == 4);
    CHECK(read(c3, out, "Cout") == 0);

    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit c = ripple_cpa_circuit(n);
        const std::uint64_t lim = std::uint64_t{1} << n;
        for (std::uint64_t a = 0; a < lim; ++a) {
            for (std::uint64_t b = 0; b < lim; ++b) {
                for (std::uint64_t cin = 0; cin < 2; ++cin) {
                    const BasisState o = Run(c).set("A", a).set("B", b).set("Cin", cin).go();
                    const std::uint64_t total = a + b + cin;
                    CHECK(read(c, o, "B") == total % lim);
                    CHECK(read(c, o, "Cout") == total / lim);
                    CHECK(read(c, o, "A") == a);
                    CHECK(read(c, o, "Cin") == cin);
                }
            }
        }
    }
}

TEST_CASE("half CPA") {
    CHECK_THROWS_AS(half_cpa_circuit(0), WidthError);

    const Circuit c3 = half_cpa_circuit(3);
    CHECK(read(c3, Run(c3).set("A", 6).go(), "A") == 6);
    const BasisState wrap = Run(c3).set("A", 7).set("C", 1).go();
    CHECK(read(c3, wrap, "A") == 0);
    CHECK(read(c3, wrap, "Cout") == 1);

    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit c = half_cpa_circuit(n);
        const std::uint64_t lim = std::uint64_t{1} << n;
        for (std::uint64_t a = 0; a < lim; ++a) {
            for (std::uint64_t carry = 0; carry < 2; ++carry) {
                const BasisState o = Run(c).set("A", a).set("C", carry).go();
                CHECK(read(c, o, "A") == (a + carry) % lim);
                CHECK(read(c, o, "Cout") == (a + carry) / lim);
                CHECK(read(c, o, "C") == carry);
            }
        }
    }
}

TEST_CASE("partial-product layout") {
    const PPLayout id = layout_partial_products(0, 4);
    CHECK(id.column == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(std::ranges::none_of(id.complemented, [](bool b) { return b; }));

    const PPLayout one = layout_partial_products(1, 4);
    CHECK(one.column[3] == 0);
    CHECK(one.complemented[3]);
    CHECK(one.column[0] == 1);
    CHECK(one.column[1] == 2);
    CHECK(one.column[2] == 3);
    CHECK_FALSE(one.complemented[0]);
    CHECK_FALSE(one.complemented[2]);

    CHECK_THROWS_AS(layout_partial_products(5, 4), std::out_of_range);

    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t i = 0; i <= n; ++i) {
            const PPLayout l = layout_partial_products(i, n);
            std::set<std::size_t> cols(l.column.begin(), l.column.end());
            CHECK(cols.size() == n);
            CHECK(*cols.rbegin() == n - 1);
            CHECK(std::ranges::count(l.complemented, true) == static_cast<long>(i));
        }
    }
}

// Each laid-out row, read as an n-bit number R_i, satisfies
// x_i * b * 2^i = R_i - (2^i - 1)  (mod 2^n + 1); checked by brute force.
TEST_CASE("laid-out rows plus their offsets give the modular product") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::uint64_t M = (std::uint64_t{1} << n) + 1;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
                std::uint64_t rows = 0;
                std::uint64_t offsets = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const PPLayout l = layout_partial_products(i, n);
                    std::uint64_t r = 0;
                    for (std::size_t j = 0; j < n; ++j) {
                        std::uint64_t bit = ((a >> i) & 1U) & ((b >> j) & 1U);
                        if (l.complemented[j]) bit ^= 1U;
                        r |= bit << l.column[j];
                    }
                    rows += r;
                    offsets += (std::uint64_t{1} << i) - 1;
                }
                CHECK((rows + M * n * 4 - offsets) % M == (a * b) % M);
            }
        }
    }
}

TEST_CASE("partial products") {
    const Circuit c = partial_products_circuit(2);
    BasisState out = Run(c).set("X", 3).set("Y", 2).go();
    // row-major (i, j): (0,1) and (1,1) set
    CHECK(read(c, out, "PP") == 0b1010);
    CHECK(read(c, Run(c).set("Y", 3).go(), "PP") == 0);

    const Circuit c3 = partial_products_circuit(3);
    CHECK(measure_resources(c3).toffoli_count == 9);
    for (std::uint64_t x = 0; x < 8; ++x) {
        for (std::uint64_t y = 0; y < 8; ++y) {
            const BasisState o = Run(c3).set("X", x).set("Y", y).go();
            const auto& pp = c3.register_qubits("PP");
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    CHECK(o.get(pp[i * 3 + j]) == (((x >> i) & (y >> j) & 1U) != 0));
                }
            }
        }
    }
    CHECK_THROWS_AS(partial_products_circuit(0), WidthError);
}
