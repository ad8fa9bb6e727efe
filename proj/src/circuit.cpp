#include "qrns/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

namespace qrns {

namespace {

std::string_view mnemonic(GateKind kind) {
    switch (kind) {
    case GateKind::Not: return "x";
    case GateKind::Cnot: return "cx";
    case GateKind::Toffoli: return "ccx";
    }
    return "?";
}

void check_in_range(const Gate& gate, std::size_t qubit_count) {
    for (Qubit q : gate.operands()) {
        if (q >= qubit_count) {
            throw InvalidGate("gate operand " + std::to_string(q) + " out of range for " +
                              std::to_string(qubit_count) + " qubits");
        }
    }
}

} // namespace

Gate::Gate(GateKind kind, std::array<Qubit, 3> ops) : kind_(kind), operands_(ops) {
    auto used = operands();
    for (std::size_t i = 0; i < used.size(); ++i) {
        for (std::size_t j = i + 1; j < used.size(); ++j) {
            if (used[i] == used[j]) {
                throw InvalidGate("gate operands must be distinct (qubit " +
                                  std::to_string(used[i]) + " repeated)");
            }
        }
    }
}

Gate Gate::x(Qubit target) { return Gate(GateKind::Not, {target, 0, 0}); }
Gate Gate::cx(Qubit control, Qubit target) { return Gate(GateKind::Cnot, {control, target, 0}); }
Gate Gate::ccx(Qubit control0, Qubit control1, Qubit target) {
    return Gate(GateKind::Toffoli, {control0, control1, target});
}

bool operator==(const Gate& a, const Gate& b) noexcept {
    return a.kind_ == b.kind_ && std::ranges::equal(a.operands(), b.operands());
}

// ---------------------------------------------------------------------------

BasisState::BasisState(std::size_t qubit_count)
    : words_((qubit_count + 63) / 64, 0), size_(qubit_count) {}

BasisState BasisState::from_bits(std::string_view bits) {
    BasisState s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            s.set(static_cast<Qubit>(i), true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("basis state string must contain only 0/1");
        }
    }
    return s;
}

bool BasisState::get(Qubit q) const {
    if (q >= size_) throw DimensionError("qubit index out of range");
    return (words_[q / 64] >> (q % 64)) & 1U;
}

void BasisState::set(Qubit q, bool value) {
    if (q >= size_) throw DimensionError("qubit index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (q % 64);
    if (value) {
        words_[q / 64] |= mask;
    } else {
        words_[q / 64] &= ~mask;
    }
}

void BasisState::flip(Qubit q) {
    if (q >= size_) throw DimensionError("qubit index out of range");
    words_[q / 64] ^= std::uint64_t{1} << (q % 64);
}

std::uint64_t BasisState::read(std::span<const Qubit> qubits) const {
    if (qubits.size() > 64) throw DimensionError("cannot read more than 64 qubits as an integer");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (get(qubits[i])) v |= std::uint64_t{1} << i;
    }
    return v;
}

void BasisState::write(std::span<const Qubit> qubits, std::uint64_t value) {
    if (qubits.size() < 64 && (value >> qubits.size()) != 0) {
        throw DimensionError("value does not fit in " + std::to_string(qubits.size()) + " qubits");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) set(qubits[i], (value >> i) & 1U);
}

std::string BasisState::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(static_cast<Qubit>(i))) out[i] = '1';
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Qubit> Circuit::allocate(std::size_t count) {
    std::vector<Qubit> out(count);
    for (auto& q : out) q = static_cast<Qubit>(qubit_count_++);
    return out;
}

Qubit Circuit::allocate_one() { return static_cast<Qubit>(qubit_count_++); }

void Circuit::add(const Gate& gate) {
    check_in_range(gate, qubit_count_);
    gates_.push_back(gate);
}

void Circuit::add_register(std::string name, std::vector<Qubit> qubits) {
    if (name.empty() || name.find_first_of(" \t\n,") != std::string::npos) {
        throw std::invalid_argument("register name must be a non-empty token: '" + name + "'");
    }
    if (qubits.empty()) throw std::invalid_argument("register '" + name + "' is empty");
    if (find_register(name) != nullptr) {
        throw std::invalid_argument("duplicate register '" + name + "'");
    }
    std::unordered_set<Qubit> taken;
    for (const auto& r : registers_) taken.insert(r.qubits.begin(), r.qubits.end());
    for (Qubit q : qubits) {
        if (q >= qubit_count_) {
            throw std::invalid_argument("register '" + name + "' references qubit " +
                                        std::to_string(q) + " beyond the circuit");
        }
        if (!taken.insert(q).second) {
            throw std::invalid_argument("register '" + name + "' overlaps qubit " +
                                        std::to_string(q));
        }
    }
    registers_.push_back(Register{std::move(name), std::move(qubits)});
}

const Register* Circuit::find_register(std::string_view name) const noexcept {
    auto it = std::ranges::find(registers_, name, &Register::name);
    return it == registers_.end() ? nullptr : &*it;
}

const std::vector<Qubit>& Circuit::register_qubits(std::string_view name) const {
    const Register* r = find_register(name);
    if (r == nullptr) throw std::out_of_range("no register named '" + std::string(name) + "'");
    return r->qubits;
}

// ---------------------------------------------------------------------------

void apply_gate_inplace(BasisState& state, const Gate& gate) {
    check_in_range(gate, state.size());
    for (Qubit c : gate.controls()) {
        if (!state.get(c)) return;
    }
    state.flip(gate.target());
}

BasisState apply_gate(BasisState state, const Gate& gate) {
    apply_gate_inplace(state, gate);
    return state;
}

BasisState simulate(const Circuit& circuit, BasisState input) {
    if (input.size() != circuit.qubit_count()) {
        throw DimensionError("input state has " + std::to_string(input.size()) +
                             " qubits, circuit has " + std::to_string(circuit.qubit_count()));
    }
    for (const Gate& g : circuit.gates()) apply_gate_inplace(input, g);
    return input;
}

Circuit inverse(const Circuit& circuit) {
    Circuit out(circuit.qubit_count());
    for (const auto& r : circuit.registers()) out.add_register(r.name, r.qubits);
    for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) out.add(*it);
    return out;
}

ResourceReport measure_resources(const Circuit& circuit) {
    ResourceReport report;
    report.qubits = static_cast<std::int64_t>(circuit.qubit_count());
    std::vector<std::int64_t> toffoli_clock(circuit.qubit_count(), 0);
    std::vector<std::int64_t> cnot_clock(circuit.qubit_count(), 0);

    auto advance = [](std::vector<std::int64_t>& clock, std::span<const Qubit> ops,
                      std::int64_t step) {
        std::int64_t m = 0;
        for (Qubit q : ops) m = std::max(m, clock[q]);
        for (Qubit q : ops) clock[q] = m + step;
    };

    for (const Gate& g : circuit.gates()) {
        switch (g.kind()) {
        case GateKind::Toffoli:
            ++report.toffoli_count;
            advance(toffoli_clock, g.operands(), 1);
            break;
        case GateKind::Cnot:
            ++report.cnot_count;
            advance(cnot_clock, g.operands(), 1);
            break;
        case GateKind::Not:
            advance(toffoli_clock, g.operands(), 0);
            advance(cnot_clock, g.operands(), 0);
            break;
        }
    }
    if (!toffoli_clock.empty()) report.toffoli_depth = *std::ranges::max_element(toffoli_clock);
    if (!cnot_clock.empty()) report.cnot_depth = *std::ranges::max_element(cnot_clock);
    report.t_count = kTPerToffoli * report.toffoli_count;
    return report;
}

// ---------------------------------------------------------------------------

std::string export_gatelist(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.qubit_count() << '\n';
    for (const auto& r : circuit.registers()) {
        out << "reg " << r.name << ' ';
        for (std::size_t i = 0; i < r.qubits.size(); ++i) {
            if (i != 0) out << ',';
            out << r.qubits[i];
        }
        out << '\n';
    }
    for (const Gate& g : circuit.gates()) {
        out << mnemonic(g.kind());
        for (Qubit q : g.operands()) out << ' ' << q;
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::uint64_t parse_index(std::string_view tok, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) +
                         "'");
    }
    return v;
}

} // namespace

Circuit parse_gatelist(std::string_view text) {
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("empty gate list");

    auto header = split(lines[0], ' ');
    if (header.size() != 2 || header[0] != "qubits") {
        throw ParseError("line 1: expected 'qubits N'");
    }
    Circuit circuit(parse_index(header[1], 1));

    try {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const std::size_t line_no = i + 1;
            auto toks = split(lines[i], ' ');
            const auto& op = toks[0];
            if (op == "reg") {
                if (toks.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": bad reg line");
                std::vector<Qubit> qubits;
                for (auto t : split(toks[2], ',')) qubits.push_back(static_cast<Qubit>(parse_index(t, line_no)));
                circuit.add_register(std::string(toks[1]), std::move(qubits));
                continue;
            }
            std::vector<Qubit> ops;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                ops.push_back(static_cast<Qubit>(parse_index(toks[k], line_no)));
            }
            if (op == "x" && ops.size() == 1) {
                circuit.x(ops[0]);
            } else if (op == "cx" && ops.size() == 2) {
                circuit.cx(ops[0], ops[1]);
            } else if (op == "ccx" && ops.size() == 3) {
                circuit.ccx(ops[0], ops[1], ops[2]);
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": unrecognized gate '" +
                                 std::string(lines[i]) + "'");
            }
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return circuit;
}

} // namespace qrns
