#pragma once

#include <cstdint>
#include <vector>

#include "qrns/circuit.hpp"

namespace qrns {

/// A modulo multiplier netlist plus the qubits of its operand and product
/// registers (also recorded by name in the circuit's register map).
struct MultiplierCircuit {
    Circuit circuit;
    std::vector<Qubit> x;
    std::vector<Qubit> y;
    std::vector<Qubit> p;
};

/// Loads x and y into a zeroed state sized for `m`.
BasisState load_operands(const MultiplierCircuit& m, std::uint64_t x, std::uint64_t y);

/// Widest channel any builder accepts.
inline constexpr unsigned kMaxChannelWidth = 32;

} // namespace qrns
