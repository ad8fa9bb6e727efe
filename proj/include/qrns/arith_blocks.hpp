#pragma once

// Reversible arithmetic building blocks shared by the multiplier builders.
// The append_* functions emit a fragment into an existing circuit on caller
// supplied qubits; the *_circuit functions wrap one fragment in a standalone
// circuit with named registers.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qrns/circuit.hpp"

namespace qrns {

/// Qubit roles of one 3:2 compressor. `cout` must be a fresh |0> ancilla.
struct CompressorIO {
    Qubit a;
    Qubit b;
    Qubit cin;
    Qubit cout;
};

/// In-place full adder: cin <- a^b^cin, cout ^= maj(a,b,cin); a and b are
/// restored. Two Toffolis and three CNOTs.
void append_compressor32(Circuit& circuit, const CompressorIO& io);

/// Cuccaro majority-chain adder: b <- (a + b + carry_in) mod 2^n, with a and
/// carry_in restored. When carry_out is given it is XORed with the carry.
void append_ripple_cpa(Circuit& circuit, std::span<const Qubit> a, std::span<const Qubit> b,
                       Qubit carry_in, std::optional<Qubit> carry_out);

/// Incrementer chain: reg <- (reg + carry) mod 2^n. Allocates one garbage
/// ancilla per internal carry. Returns the carry-out qubit when requested.
std::optional<Qubit> append_half_cpa(Circuit& circuit, std::span<const Qubit> reg, Qubit carry,
                                     bool want_carry_out);

/// Writes x_i AND y_j into one fresh qubit per j (one Toffoli each) and
/// returns them in j order. Targets start at |0> because they are fresh.
std::vector<Qubit> append_partial_product_row(Circuit& circuit, Qubit x_i,
                                              std::span<const Qubit> y);

/// All n x n partial products, rows[i][j] = x_i AND y_j.
std::vector<std::vector<Qubit>> append_partial_products(Circuit& circuit,
                                                        std::span<const Qubit> x,
                                                        std::span<const Qubit> y);

/// Placement of row `row` of the modulo 2^n+1 partial-product array: bit
/// (row, j) goes to column (row + j) mod n, and the bits that wrap past the
/// top column are complemented (their weight 2^(row+j) is congruent to
/// -2^(row+j-n)).
struct PPLayout {
    std::size_t row = 0;
    std::size_t width = 0;
    std::vector<std::size_t> column;
    std::vector<bool> complemented;
};

PPLayout layout_partial_products(std::size_t row, std::size_t width);

// Standalone wrappers. Registers are listed with each function.

/// Registers A, B, Sum (the cin qubit), Cout.
Circuit compressor32_circuit();

/// Registers A, B (sum), Cin, Cout.
Circuit ripple_cpa_circuit(std::size_t width);

/// Registers A, C (carry in), Cout, garbage (when width > 1).
Circuit half_cpa_circuit(std::size_t width);

/// Registers X, Y, PP (row-major i*n + j).
Circuit partial_products_circuit(std::size_t width);

} // namespace qrns
