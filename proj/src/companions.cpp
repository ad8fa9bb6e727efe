#include "qrns/companions.hpp"

#include <string>

#include "qrns/arith_blocks.hpp"

namespace qrns {

namespace {

void require_width(unsigned n, unsigned min, const char* what) {
    if (n < min || n > kMaxChannelWidth) {
        throw WidthError(std::string(what) + " width must be in [" + std::to_string(min) + ", " +
                         std::to_string(kMaxChannelWidth) + "], got " + std::to_string(n));
    }
}

} // namespace

MultiplierCircuit build_mod_pow2_mul(unsigned n) {
    require_width(n, 1, "mod 2^n multiplier");
    MultiplierCircuit m;
    Circuit& c = m.circuit;
    m.x = c.allocate(n);
    m.y = c.allocate(n);
    m.p = c.allocate(n);
    const std::vector<Qubit> term = c.allocate(n);
    const Qubit carry_in = c.allocate_one();

    for (unsigned i = 0; i < n; ++i) {
        const std::size_t w = n - i;
        for (std::size_t j = 0; j < w; ++j) c.ccx(m.y[i], m.x[j], term[j]);
        append_ripple_cpa(c, std::span(term).first(w), std::span(m.p).subspan(i), carry_in,
                          std::nullopt);
        for (std::size_t j = 0; j < w; ++j) c.ccx(m.y[i], m.x[j], term[j]);
    }

    std::vector<Qubit> ancilla = term;
    ancilla.push_back(carry_in);
    c.add_register("X", m.x);
    c.add_register("Y", m.y);
    c.add_register("P", m.p);
    c.add_register("ancilla", ancilla);
    return m;
}

// X * 2^i mod (2^n - 1) is X rotated left by i, so row i is the rotated X
// gated by y_i. Each accumulation P + T = S + 2^n * cout = S + cout, and the
// sum cannot overflow a second time because P, T <= 2^n - 1.
MultiplierCircuit build_mod_mersenne_mul(unsigned n) {
    require_width(n, 2, "mod 2^n-1 multiplier");
    MultiplierCircuit m;
    Circuit& c = m.circuit;
    m.x = c.allocate(n);
    m.y = c.allocate(n);
    m.p = c.allocate(n);
    const std::vector<Qubit> term = c.allocate(n);
    const Qubit carry_in = c.allocate_one();
    const std::size_t first_garbage = c.qubit_count();

    auto load_term = [&](unsigned i) {
        for (std::size_t j = 0; j < n; ++j) c.ccx(m.y[i], m.x[(j + n - i) % n], term[j]);
    };

    for (unsigned i = 0; i < n; ++i) {
        load_term(i);
        const Qubit carry_out = c.allocate_one();
        append_ripple_cpa(c, term, m.p, carry_in, carry_out);
        append_half_cpa(c, m.p, carry_out, false);
        load_term(i);
    }

    std::vector<Qubit> ancilla = term;
    ancilla.push_back(carry_in);
    std::vector<Qubit> garbage;
    for (std::size_t q = first_garbage; q < c.qubit_count(); ++q) {
        garbage.push_back(static_cast<Qubit>(q));
    }
    c.add_register("X", m.x);
    c.add_register("Y", m.y);
    c.add_register("P", m.p);
    c.add_register("ancilla", ancilla);
    c.add_register("garbage", garbage);
    return m;
}

std::uint64_t canonicalize_mersenne(std::uint64_t r, unsigned n) {
    require_width(n, 2, "mod 2^n-1 residue");
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    if (r > top) {
        throw DomainError("residue " + std::to_string(r) + " exceeds 2^" + std::to_string(n) + "-1");
    }
    return r == top ? 0 : r;
}

} // namespace qrns
