#pragma once

// Diminished-1 modulo (2^n + 1) multiplier: carry-save reduction of
// complemented/rotated partial products with end-around correction, then a
// zero flag derived from the operands' flag qubits.

#include <cstdint>
#include <optional>
#include <span>

#include "qrns/multiplier.hpp"

namespace qrns {

/// Diminished-1 residue for modulus 2^n + 1: the value v in [1, 2^n] is
/// stored as v - 1 in `low`; v = 0 sets `flag` and leaves `low` at 0.
struct Dim1Value {
    bool flag = false;
    std::uint64_t low = 0;

    friend bool operator==(const Dim1Value&, const Dim1Value&) = default;
};

Dim1Value dim1_encode(std::uint64_t v, unsigned n);
std::uint64_t dim1_decode(const Dim1Value& d, unsigned n);

/// (decode(a) * decode(b)) mod (2^n + 1), re-encoded.
Dim1Value dim1_mul_oracle(const Dim1Value& a, const Dim1Value& b, unsigned n);

/// Packs a Dim1Value into n+1 register bits (flag at bit n) and back.
std::uint64_t dim1_pack(const Dim1Value& d, unsigned n);
Dim1Value dim1_unpack(std::uint64_t bits, unsigned n);

inline constexpr unsigned kQdmmMinWidth = 2;

/// Builds the QDMM for modulus 2^n + 1 (n >= 2).
///
/// Register map: X, Y and P are n+1 qubits each with the zero flag on the top
/// qubit. X and Y are preserved. Every other qubit is listed under "garbage";
/// ancillas are not uncomputed.
MultiplierCircuit build_qdmm(unsigned n);

/// Zero handling at the output:
///   p_flag = x_flag OR y_flag            (CNOT, CNOT, Toffoli)
///   p_flag ^= overflow                   (when given, one CNOT)
///   p_low[i] = sum[i] AND NOT p_flag     (one Toffoli per bit, flag negated by NOT pairs)
/// `overflow` must only be set when both operand flags are clear, which makes
/// the XOR an OR.
void append_zero_logic(Circuit& circuit, Qubit x_flag, Qubit y_flag, Qubit p_flag,
                       std::span<const Qubit> sum, std::span<const Qubit> p_low,
                       std::optional<Qubit> overflow);

} // namespace qrns
