#include "qrns/rns.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <optional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qrns {

std::string_view family_name(Family family) {
    switch (family) {
    case Family::Pow2: return "POW2";
    case Family::MersenneLike: return "MERSENNE_LIKE";
    case Family::FermatLike: return "FERMAT_LIKE";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::Pow2, Family::MersenneLike, Family::FermatLike}) {
        if (family_name(f) == name) return f;
    }
    throw DomainError("unknown modulus family '" + std::string(name) + "'");
}

DesignId design_for(Family family) {
    switch (family) {
    case Family::Pow2: return DesignId::Mod2n;
    case Family::MersenneLike: return DesignId::Mod2nMinus1;
    case Family::FermatLike: return DesignId::Mod2nPlus1;
    }
    throw std::logic_error("unreachable family");
}

Modulus Modulus::make(Family family, unsigned k) {
    if (k < 1 || k > 62) throw DomainError("modulus exponent k must be in [1, 62]");
    const std::uint64_t base = std::uint64_t{1} << k;
    std::uint64_t value = base;
    if (family == Family::MersenneLike) value = base - 1;
    if (family == Family::FermatLike) value = base + 1;
    if (value < 2) {
        throw DomainError(std::string(family_name(family)) + " with k=" + std::to_string(k) +
                          " gives a modulus below 2");
    }
    return {family, k, value};
}

Modulus Modulus::from_value(std::uint64_t value) {
    auto is_pow2 = [](std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; };
    auto log2 = [](std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v) - 1); };
    if (value >= 2 && is_pow2(value)) return make(Family::Pow2, log2(value));
    if (value >= 3 && is_pow2(value + 1)) return make(Family::MersenneLike, log2(value + 1));
    if (value >= 3 && is_pow2(value - 1)) return make(Family::FermatLike, log2(value - 1));
    throw DomainError("modulus " + std::to_string(value) + " is not of the form 2^k, 2^k-1 or 2^k+1");
}

// ---------------------------------------------------------------------------

ModuliSet::ModuliSet(std::vector<Modulus> moduli) : moduli_(std::move(moduli)), range_(1) {
    if (moduli_.empty()) throw DomainError("a moduli set needs at least one modulus");
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        for (std::size_t j = i + 1; j < moduli_.size(); ++j) {
            if (std::gcd(moduli_[i].value, moduli_[j].value) != 1) {
                throw DomainError("moduli " + std::to_string(moduli_[i].value) + " and " +
                                  std::to_string(moduli_[j].value) + " are not coprime");
            }
        }
        range_ *= moduli_[i].value;
    }
}

ModuliSet ModuliSet::from_values(std::span<const std::uint64_t> values) {
    std::vector<Modulus> moduli;
    for (auto v : values) moduli.push_back(Modulus::from_value(v));
    return ModuliSet(std::move(moduli));
}

std::vector<std::uint64_t> ModuliSet::values() const {
    std::vector<std::uint64_t> out;
    for (const auto& m : moduli_) out.push_back(m.value);
    return out;
}

BigInt range_of(const ModuliSet& set) {
    BigInt product = 1;
    for (const auto& m : set.moduli()) product *= m.value;
    return product;
}

BigInt required_range(unsigned n) {
    const BigInt top = (BigInt(1) << n) - 1;
    return top * top + 1;
}

ModuliSet paper_set_lookup(unsigned n) {
    static const std::array<std::vector<std::uint64_t>, 6> kSets = {{
        {3, 4, 5},
        {5, 8, 9},
        {4, 5, 7, 9},
        {5, 7, 9, 16},
        {7, 9, 16, 17},
        {5, 7, 9, 16, 17},
    }};
    if (n < kPaperSetMin || n > kPaperSetMax) {
        throw std::out_of_range("no published moduli set for n=" + std::to_string(n) +
                                " (available for 3..8)");
    }
    return ModuliSet::from_values(kSets[n - kPaperSetMin]);
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
    Modulus modulus;
    ResourceReport cost;
};

using Rank = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::size_t,
                        std::vector<std::uint64_t>>;

class SetSearch {
public:
    SetSearch(unsigned n, SearchObjective objective)
        : objective_(objective), bound_(required_range(n)) {
        for (unsigned k = 2; k <= n; ++k) {
            for (Family f : {Family::MersenneLike, Family::Pow2, Family::FermatLike}) {
                const Modulus m = Modulus::make(f, k);
                candidates_.push_back({m, estimate(design_for(f), k).resources});
            }
        }
        std::ranges::sort(candidates_, {}, [](const Candidate& c) { return c.modulus.value; });
    }

    std::optional<std::vector<Modulus>> run() {
        std::vector<std::size_t> chosen;
        extend(0, chosen, BigInt(1), false);
        return best_;
    }

private:
    std::int64_t primary(const ResourceReport& r) const {
        return objective_ == SearchObjective::MinToffoliDepth ? r.toffoli_depth : r.t_count;
    }
    std::int64_t secondary(const ResourceReport& r) const {
        return objective_ == SearchObjective::MinToffoliDepth ? r.t_count : r.toffoli_depth;
    }

    Rank rank_of(const std::vector<std::size_t>& chosen) const {
        std::int64_t p = 0, s = 0, q = 0;
        std::vector<std::uint64_t> values;
        for (auto i : chosen) {
            const auto& c = candidates_[i];
            p = std::max(p, primary(c.cost));
            s = std::max(s, secondary(c.cost));
            q = std::max(q, c.cost.qubits);
            values.push_back(c.modulus.value);
        }
        return {p, s, q, chosen.size(), values};
    }

    void extend(std::size_t start, std::vector<std::size_t>& chosen, const BigInt& range,
                bool has_pow2) {
        if (range >= bound_) {
            Rank r = rank_of(chosen);
            if (!best_rank_ || r < *best_rank_) {
                best_rank_ = std::move(r);
                best_.emplace();
                for (auto i : chosen) best_->push_back(candidates_[i].modulus);
            }
            return;
        }
        for (std::size_t i = start; i < candidates_.size(); ++i) {
            const auto& c = candidates_[i];
            if (c.modulus.family == Family::Pow2 && has_pow2) continue;
            if (best_rank_ && primary(c.cost) > std::get<0>(*best_rank_)) continue;
            const bool coprime = std::ranges::all_of(chosen, [&](std::size_t j) {
                return std::gcd(candidates_[j].modulus.value, c.modulus.value) == 1;
            });
            if (!coprime) continue;
            chosen.push_back(i);
            extend(i + 1, chosen, range * c.modulus.value,
                   has_pow2 || c.modulus.family == Family::Pow2);
            chosen.pop_back();
        }
    }

    SearchObjective objective_;
    BigInt bound_;
    std::vector<Candidate> candidates_;
    std::optional<Rank> best_rank_;
    std::optional<std::vector<Modulus>> best_;
};

} // namespace

ModuliSet search_set(unsigned n, SearchObjective objective) {
    if (n < 2 || n > kSearchMaxWidth) {
        throw DomainError("moduli search supports n in [2, " + std::to_string(kSearchMaxWidth) +
                          "], got " + std::to_string(n));
    }
    auto best = SetSearch(n, objective).run();
    // {2^n - 1, 2^n, 2^n + 1} is always feasible, so the search cannot come back empty.
    if (!best) throw std::logic_error("no feasible moduli set for n=" + std::to_string(n));
    return ModuliSet(std::move(*best));
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> forward_convert(const BigInt& x, const ModuliSet& set) {
    if (x < 0 || x >= set.range()) {
        throw DomainError("value " + x.str() + " outside [0, " + set.range().str() + ")");
    }
    std::vector<std::uint64_t> residues;
    residues.reserve(set.size());
    for (const auto& m : set.moduli()) {
        residues.push_back(static_cast<std::uint64_t>(x % m.value));
    }
    return residues;
}

namespace {

/// Inverse of a modulo m for gcd(a, m) = 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    BigInt old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::logic_error("inverse_mod of non-coprime arguments");
    BigInt inv = old_s % m;
    if (inv < 0) inv += m;
    return static_cast<std::uint64_t>(inv);
}

} // namespace

BigInt crt_reconstruct(std::span<const std::uint64_t> residues, const ModuliSet& set) {
    if (residues.size() != set.size()) {
        throw DomainError("expected " + std::to_string(set.size()) + " residues, got " +
                          std::to_string(residues.size()));
    }
    const BigInt& range = set.range();
    BigInt x = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const std::uint64_t m = set.moduli()[i].value;
        if (residues[i] >= m) {
            throw DomainError("residue " + std::to_string(residues[i]) + " not below modulus " +
                              std::to_string(m));
        }
        const BigInt partial = range / m;
        const std::uint64_t inv = inverse_mod(static_cast<std::uint64_t>(partial % m), m);
        x += partial * ((BigInt(residues[i]) * inv) % m);
    }
    return x % range;
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json bigint_to_json(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<std::uint64_t>(v);
    }
    return v.str();
}

nlohmann::ordered_json to_json(const ModuliSet& set) {
    nlohmann::ordered_json moduli = nlohmann::ordered_json::array();
    for (const auto& m : set.moduli()) {
        moduli.push_back({{"family", family_name(m.family)}, {"k", m.k}, {"value", m.value}});
    }
    return {{"moduli", moduli}, {"range", bigint_to_json(set.range())}};
}

ModuliSet moduli_set_from_json(const nlohmann::json& j) {
    std::vector<Modulus> moduli;
    try {
        for (const auto& item : j.at("moduli")) {
            const Modulus m = Modulus::make(parse_family(item.at("family").get<std::string>()),
                                            item.at("k").get<unsigned>());
            if (item.contains("value") && item.at("value").get<std::uint64_t>() != m.value) {
                throw DomainError("modulus value " + item.at("value").dump() +
                                  " does not match its family and k");
            }
            moduli.push_back(m);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed moduli set JSON: ") + e.what());
    }
    ModuliSet set(std::move(moduli));
    if (j.contains("range")) {
        const auto& r = j.at("range");
        const BigInt declared = r.is_string() ? BigInt(r.get<std::string>()) : BigInt(r.get<std::uint64_t>());
        if (declared != set.range()) throw DomainError("declared range does not match the moduli product");
    }
    return set;
}

} // namespace qrns
