#pragma once

// Gate-level reversible circuits over NOT / CNOT / Toffoli, exact basis-state
// simulation and measured resource metrics.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrns/errors.hpp"

namespace qrns {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t { Not, Cnot, Toffoli };

/// A classical reversible gate. The last operand is always the target.
class Gate {
public:
    static Gate x(Qubit target);
    static Gate cx(Qubit control, Qubit target);
    static Gate ccx(Qubit control0, Qubit control1, Qubit target);

    GateKind kind() const noexcept { return kind_; }
    std::size_t arity() const noexcept { return static_cast<std::size_t>(kind_) + 1; }
    std::span<const Qubit> operands() const noexcept { return {operands_.data(), arity()}; }
    std::span<const Qubit> controls() const noexcept { return {operands_.data(), arity() - 1}; }
    Qubit target() const noexcept { return operands_[arity() - 1]; }

    friend bool operator==(const Gate& a, const Gate& b) noexcept;

private:
    Gate(GateKind kind, std::array<Qubit, 3> ops);

    GateKind kind_;
    std::array<Qubit, 3> operands_{};
};

/// Computational-basis state of a qubit set, stored as a packed bit vector.
class BasisState {
public:
    BasisState() = default;
    explicit BasisState(std::size_t qubit_count);

    /// Bit i of the string is qubit i (so "011" has qubits 0 and 1 set).
    static BasisState from_bits(std::string_view bits);

    std::size_t size() const noexcept { return size_; }
    bool get(Qubit q) const;
    void set(Qubit q, bool value);
    void flip(Qubit q);

    /// Little-endian read of the listed qubits (qubits[0] is the LSB).
    std::uint64_t read(std::span<const Qubit> qubits) const;
    void write(std::span<const Qubit> qubits, std::uint64_t value);

    std::string to_string() const;

    friend bool operator==(const BasisState& a, const BasisState& b) noexcept = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct Register {
    std::string name;
    std::vector<Qubit> qubits;

    friend bool operator==(const Register&, const Register&) = default;
};

/// Flat gate list over a fixed qubit set with named, disjoint registers.
///
/// Builders grow the qubit set with allocate() while emitting gates; once a
/// circuit is handed out it is treated as immutable and may be shared freely.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(std::size_t qubit_count) : qubit_count_(qubit_count) {}

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    const std::vector<Register>& registers() const noexcept { return registers_; }

    /// Appends `count` fresh qubits and returns their indices.
    std::vector<Qubit> allocate(std::size_t count);
    Qubit allocate_one();

    void add(const Gate& gate);
    void x(Qubit t) { add(Gate::x(t)); }
    void cx(Qubit c, Qubit t) { add(Gate::cx(c, t)); }
    void ccx(Qubit c0, Qubit c1, Qubit t) { add(Gate::ccx(c0, c1, t)); }

    void add_register(std::string name, std::vector<Qubit> qubits);
    const Register* find_register(std::string_view name) const noexcept;
    const std::vector<Qubit>& register_qubits(std::string_view name) const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    std::size_t qubit_count_ = 0;
    std::vector<Gate> gates_;
    std::vector<Register> registers_;
};

struct ResourceReport {
    std::int64_t qubits = 0;
    std::int64_t toffoli_count = 0;
    std::int64_t toffoli_depth = 0;
    std::int64_t cnot_count = 0;
    std::int64_t cnot_depth = 0;
    std::int64_t t_count = 0;

    friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

/// T gates charged per Toffoli in a fault-tolerant Clifford+T decomposition.
inline constexpr std::int64_t kTPerToffoli = 7;

void apply_gate_inplace(BasisState& state, const Gate& gate);
BasisState apply_gate(BasisState state, const Gate& gate);

BasisState simulate(const Circuit& circuit, BasisState input);

Circuit inverse(const Circuit& circuit);

/// Gate tallies plus ASAP layer depth for Toffoli and CNOT, each class with
/// its own per-qubit clock array. NOT gates never add depth.
ResourceReport measure_resources(const Circuit& circuit);

/// Text gate list: "qubits N", one "reg NAME i,j,k" per register, then one
/// gate per line ("x 3", "cx 0 1", "ccx 0 1 2"), LF terminated.
std::string export_gatelist(const Circuit& circuit);
Circuit parse_gatelist(std::string_view text);

} // namespace qrns
