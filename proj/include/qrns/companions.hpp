#pragma once

// Shift-and-add multipliers for the 2^n and 2^n - 1 residue channels. They
// accumulate into P with ripple adders; the published designs for these
// moduli are only costed (see estimator.hpp), not reproduced.

#include <cstdint>

#include "qrns/multiplier.hpp"

namespace qrns {

/// P = (X * Y) mod 2^n, n >= 1. Registers X, Y, P (n qubits each) and
/// "ancilla", which is returned to |0>.
MultiplierCircuit build_mod_pow2_mul(unsigned n);

/// P = X * Y (mod 2^n - 1), n >= 2, using end-around carries. P may hold
/// 2^n - 1 for zero. Registers X, Y, P, "ancilla" (returned to |0>) and
/// "garbage" (carry-out and incrementer chains).
MultiplierCircuit build_mod_mersenne_mul(unsigned n);

/// Maps the redundant zero 2^n - 1 to 0.
std::uint64_t canonicalize_mersenne(std::uint64_t r, unsigned n);

} // namespace qrns
