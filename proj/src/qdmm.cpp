#include "qrns/qdmm.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "qrns/arith_blocks.hpp"

namespace qrns {

namespace {

void require_dim1_width(unsigned n) {
    if (n < 1 || n > kMaxChannelWidth) {
        throw WidthError("diminished-1 width must be in [1, " + std::to_string(kMaxChannelWidth) +
                         "], got " + std::to_string(n));
    }
}

std::uint64_t pow2(unsigned n) { return std::uint64_t{1} << n; }

} // namespace

Dim1Value dim1_encode(std::uint64_t v, unsigned n) {
    require_dim1_width(n);
    if (v > pow2(n)) {
        throw DomainError("value " + std::to_string(v) + " outside [0, 2^" + std::to_string(n) + "]");
    }
    if (v == 0) return {true, 0};
    return {false, v - 1};
}

std::uint64_t dim1_decode(const Dim1Value& d, unsigned n) {
    require_dim1_width(n);
    if (d.flag) {
        if (d.low != 0) throw InvariantError("diminished-1 zero flag set with nonzero low bits");
        return 0;
    }
    if (d.low >= pow2(n)) throw InvariantError("diminished-1 low part wider than n bits");
    return d.low + 1;
}

Dim1Value dim1_mul_oracle(const Dim1Value& a, const Dim1Value& b, unsigned n) {
    const unsigned __int128 modulus = pow2(n) + 1;
    const unsigned __int128 product =
        static_cast<unsigned __int128>(dim1_decode(a, n)) * dim1_decode(b, n);
    return dim1_encode(static_cast<std::uint64_t>(product % modulus), n);
}

std::uint64_t dim1_pack(const Dim1Value& d, unsigned n) {
    return d.low | (d.flag ? pow2(n) : 0);
}

Dim1Value dim1_unpack(std::uint64_t bits, unsigned n) {
    return {((bits >> n) & 1U) != 0, bits & (pow2(n) - 1)};
}

// ---------------------------------------------------------------------------

void append_zero_logic(Circuit& circuit, Qubit x_flag, Qubit y_flag, Qubit p_flag,
                       std::span<const Qubit> sum, std::span<const Qubit> p_low,
                       std::optional<Qubit> overflow) {
    if (sum.size() != p_low.size()) throw LayoutError("zero logic: sum and output widths differ");

    circuit.cx(x_flag, p_flag);
    circuit.cx(y_flag, p_flag);
    circuit.ccx(x_flag, y_flag, p_flag);
    if (overflow) circuit.cx(*overflow, p_flag);

    circuit.x(p_flag);
    for (std::size_t i = 0; i < sum.size(); ++i) circuit.ccx(sum[i], p_flag, p_low[i]);
    circuit.x(p_flag);
}

// Arithmetic behind the construction, with M = 2^n + 1, a and b the low
// (diminished) parts of X and Y and the target r = ab + a + b (mod M):
//
//  * row i of ab is x_i * b * 2^i. Rotating it left by i and complementing
//    the i bits that wrap gives an n-bit row R_i with x_i*b*2^i = R_i - (2^i - 1).
//    Summed over the n rows the offsets total 2^n - 1 - n.
//  * the carry-save rows are a, b, R_0 .. R_{n-1}: n stages of 3:2
//    compression. A stage maps rows to S + 2D, and 2D = D' - 1 where D' is
//    D rotated left with its top bit complemented, so each stage adds 1.
//  * the final CPA with carry-in 1 and the complemented carry-out added back
//    produces U = T + !cout with U = S + C + 2 (mod M).
//
// Adding it up, U = r + 2^n + 1 = r (mod M) with both U and r in [0, 2^n],
// so U = r exactly. U = 2^n (overflow of the half CPA) happens only for a
// zero product of two nonzero operands, which needs a composite M (M = 9).
MultiplierCircuit build_qdmm(unsigned n) {
    if (n < kQdmmMinWidth || n > kMaxChannelWidth) {
        throw WidthError("QDMM width must be in [" + std::to_string(kQdmmMinWidth) + ", " +
                         std::to_string(kMaxChannelWidth) + "], got " + std::to_string(n));
    }
    MultiplierCircuit m;
    Circuit& c = m.circuit;
    m.x = c.allocate(n + 1);
    m.y = c.allocate(n + 1);
    m.p = c.allocate(n + 1);
    const std::span<const Qubit> x_low(m.x.data(), n);
    const std::span<const Qubit> y_low(m.y.data(), n);

    auto laid_out_row = [&](std::size_t i) {
        auto products = append_partial_product_row(c, m.x[i], y_low);
        const PPLayout layout = layout_partial_products(i, n);
        std::vector<Qubit> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (layout.complemented[j]) c.x(products[j]);
            row[layout.column[j]] = products[j];
        }
        return row;
    };

    // One carry-save stage: sum stays on `sum`, the rotated carry is returned.
    auto compress = [&](std::span<const Qubit> a, std::span<const Qubit> b,
                        std::span<const Qubit> sum) {
        std::vector<Qubit> carry = c.allocate(n);
        for (std::size_t j = 0; j < n; ++j) append_compressor32(c, {a[j], b[j], sum[j], carry[j]});
        c.x(carry[n - 1]);
        std::rotate(carry.rbegin(), carry.rbegin() + 1, carry.rend());
        return carry;
    };

    std::vector<Qubit> sum = laid_out_row(0);
    std::vector<Qubit> carry = compress(x_low, y_low, sum);
    for (std::size_t i = 1; i < n; ++i) {
        const std::vector<Qubit> row = laid_out_row(i);
        carry = compress(carry, row, sum);
    }

    const Qubit cpa_carry_in = c.allocate_one();
    const Qubit cpa_carry_out = c.allocate_one();
    c.x(cpa_carry_in);
    append_ripple_cpa(c, carry, sum, cpa_carry_in, cpa_carry_out);

    c.x(cpa_carry_out);
    const Qubit overflow = *append_half_cpa(c, sum, cpa_carry_out, true);

    append_zero_logic(c, m.x[n], m.y[n], m.p[n], sum, std::span<const Qubit>(m.p.data(), n),
                      overflow);

    std::vector<Qubit> garbage;
    for (std::size_t q = 3 * (n + 1); q < c.qubit_count(); ++q) {
        garbage.push_back(static_cast<Qubit>(q));
    }
    c.add_register("X", m.x);
    c.add_register("Y", m.y);
    c.add_register("P", m.p);
    c.add_register("garbage", garbage);
    return m;
}

} // namespace qrns
