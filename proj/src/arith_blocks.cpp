#include "qrns/arith_blocks.hpp"

#include <string>
#include <unordered_set>

namespace qrns {

namespace {

void require_width(std::size_t width, const char* what) {
    if (width == 0) throw WidthError(std::string(what) + ": width must be at least 1");
}

} // namespace

void append_compressor32(Circuit& circuit, const CompressorIO& io) {
    std::unordered_set<Qubit> seen{io.a, io.b, io.cin, io.cout};
    if (seen.size() != 4) throw LayoutError("compressor qubits a, b, cin, cout must be distinct");

    circuit.ccx(io.a, io.b, io.cout);
    circuit.cx(io.a, io.b);
    circuit.ccx(io.b, io.cin, io.cout);
    circuit.cx(io.b, io.cin);
    circuit.cx(io.a, io.b);
}

void append_ripple_cpa(Circuit& circuit, std::span<const Qubit> a, std::span<const Qubit> b,
                       Qubit carry_in, std::optional<Qubit> carry_out) {
    require_width(a.size(), "ripple CPA");
    if (a.size() != b.size()) throw LayoutError("ripple CPA operands differ in width");
    const std::size_t n = a.size();

    // MAJ(c, b_i, a_i) leaves the running carry on a_i.
    auto maj = [&](Qubit c, Qubit bi, Qubit ai) {
        circuit.cx(ai, bi);
        circuit.cx(ai, c);
        circuit.ccx(c, bi, ai);
    };
    // UMA(c, b_i, a_i) restores a_i and c and leaves the sum bit on b_i.
    auto uma = [&](Qubit c, Qubit bi, Qubit ai) {
        circuit.ccx(c, bi, ai);
        circuit.cx(ai, c);
        circuit.cx(c, bi);
    };

    maj(carry_in, b[0], a[0]);
    for (std::size_t i = 1; i < n; ++i) maj(a[i - 1], b[i], a[i]);
    if (carry_out) circuit.cx(a[n - 1], *carry_out);
    for (std::size_t i = n - 1; i >= 1; --i) uma(a[i - 1], b[i], a[i]);
    uma(carry_in, b[0], a[0]);
}

std::optional<Qubit> append_half_cpa(Circuit& circuit, std::span<const Qubit> reg, Qubit carry,
                                     bool want_carry_out) {
    require_width(reg.size(), "half CPA");
    const std::size_t n = reg.size();
    Qubit c = carry;
    for (std::size_t i = 0; i < n; ++i) {
        const bool last = i + 1 == n;
        if (!last || want_carry_out) {
            const Qubit next = circuit.allocate_one();
            circuit.ccx(c, reg[i], next);
            circuit.cx(c, reg[i]);
            c = next;
        } else {
            circuit.cx(c, reg[i]);
        }
    }
    if (want_carry_out) return c;
    return std::nullopt;
}

std::vector<Qubit> append_partial_product_row(Circuit& circuit, Qubit x_i,
                                              std::span<const Qubit> y) {
    std::vector<Qubit> out = circuit.allocate(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) circuit.ccx(x_i, y[j], out[j]);
    return out;
}

std::vector<std::vector<Qubit>> append_partial_products(Circuit& circuit,
                                                        std::span<const Qubit> x,
                                                        std::span<const Qubit> y) {
    std::vector<std::vector<Qubit>> rows;
    rows.reserve(x.size());
    for (Qubit xi : x) rows.push_back(append_partial_product_row(circuit, xi, y));
    return rows;
}

PPLayout layout_partial_products(std::size_t row, std::size_t width) {
    require_width(width, "partial-product layout");
    if (row > width) {
        throw std::out_of_range("partial-product row " + std::to_string(row) +
                                " exceeds width " + std::to_string(width));
    }
    PPLayout layout;
    layout.row = row;
    layout.width = width;
    layout.column.resize(width);
    layout.complemented.resize(width);
    for (std::size_t j = 0; j < width; ++j) {
        layout.column[j] = (row + j) % width;
        layout.complemented[j] = row + j >= width;
    }
    return layout;
}

// ---------------------------------------------------------------------------

Circuit compressor32_circuit() {
    Circuit c;
    const Qubit a = c.allocate_one();
    const Qubit b = c.allocate_one();
    const Qubit cin = c.allocate_one();
    const Qubit cout = c.allocate_one();
    c.add_register("A", {a});
    c.add_register("B", {b});
    c.add_register("Sum", {cin});
    c.add_register("Cout", {cout});
    append_compressor32(c, {a, b, cin, cout});
    return c;
}

Circuit ripple_cpa_circuit(std::size_t width) {
    require_width(width, "ripple CPA");
    Circuit c;
    auto a = c.allocate(width);
    auto b = c.allocate(width);
    const Qubit cin = c.allocate_one();
    const Qubit cout = c.allocate_one();
    c.add_register("A", a);
    c.add_register("B", b);
    c.add_register("Cin", {cin});
    c.add_register("Cout", {cout});
    append_ripple_cpa(c, a, b, cin, cout);
    return c;
}

Circuit half_cpa_circuit(std::size_t width) {
    require_width(width, "half CPA");
    Circuit c;
    auto a = c.allocate(width);
    const Qubit carry = c.allocate_one();
    const std::size_t before = c.qubit_count();
    const Qubit cout = *append_half_cpa(c, a, carry, true);
    std::vector<Qubit> garbage;
    for (std::size_t q = before; q < c.qubit_count(); ++q) {
        if (q != cout) garbage.push_back(static_cast<Qubit>(q));
    }
    c.add_register("A", a);
    c.add_register("C", {carry});
    c.add_register("Cout", {cout});
    if (!garbage.empty()) c.add_register("garbage", garbage);
    return c;
}

Circuit partial_products_circuit(std::size_t width) {
    require_width(width, "partial products");
    Circuit c;
    auto x = c.allocate(width);
    auto y = c.allocate(width);
    auto rows = append_partial_products(c, x, y);
    std::vector<Qubit> pp;
    for (const auto& r : rows) pp.insert(pp.end(), r.begin(), r.end());
    c.add_register("X", x);
    c.add_register("Y", y);
    c.add_register("PP", pp);
    return c;
}

} // namespace qrns
