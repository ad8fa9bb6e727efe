#include "qrns/multiplier.hpp"

namespace qrns {

BasisState load_operands(const MultiplierCircuit& m, std::uint64_t x, std::uint64_t y) {
    BasisState s(m.circuit.qubit_count());
    s.write(m.x, x);
    s.write(m.y, y);
    return s;
}

} // namespace qrns
