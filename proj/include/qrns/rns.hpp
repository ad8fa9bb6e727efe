#pragma once

// Residue number system planning: moduli sets drawn from the 2^k - 1, 2^k
// and 2^k + 1 families, residue conversion and CRT reconstruction.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "qrns/estimator.hpp"

namespace qrns {

using BigInt = boost::multiprecision::cpp_int;

enum class Family { Pow2, MersenneLike, FermatLike };

/// "POW2", "MERSENNE_LIKE", "FERMAT_LIKE".
std::string_view family_name(Family family);
Family parse_family(std::string_view name);

/// Multiplier design that serves a channel of this family.
DesignId design_for(Family family);

struct Modulus {
    Family family;
    unsigned k;
    std::uint64_t value;

    /// Validates k and derives the value; throws DomainError when the value
    /// would be < 2 or not fit in 63 bits.
    static Modulus make(Family family, unsigned k);

    /// Classifies a value as 2^k, 2^k - 1 or 2^k + 1. 3 is taken as 2^2 - 1.
    static Modulus from_value(std::uint64_t value);

    friend bool operator==(const Modulus&, const Modulus&) = default;
};

class ModuliSet {
public:
    /// Throws DomainError unless the list is non-empty and pairwise coprime.
    explicit ModuliSet(std::vector<Modulus> moduli);
    static ModuliSet from_values(std::span<const std::uint64_t> values);

    const std::vector<Modulus>& moduli() const noexcept { return moduli_; }
    std::size_t size() const noexcept { return moduli_.size(); }
    const BigInt& range() const noexcept { return range_; }
    std::vector<std::uint64_t> values() const;

    friend bool operator==(const ModuliSet& a, const ModuliSet& b) { return a.moduli_ == b.moduli_; }

private:
    std::vector<Modulus> moduli_;
    BigInt range_;
};

/// Product of the moduli.
BigInt range_of(const ModuliSet& set);

/// Smallest range that holds every product of two n-bit operands: (2^n - 1)^2 + 1.
BigInt required_range(unsigned n);

inline constexpr unsigned kPaperSetMin = 3;
inline constexpr unsigned kPaperSetMax = 8;

/// Published moduli set for input width n in [3, 8]; std::out_of_range otherwise.
ModuliSet paper_set_lookup(unsigned n);

enum class SearchObjective { MinToffoliDepth, MinTCount };

inline constexpr unsigned kSearchMaxWidth = 16;

/// Exhaustive search over pairwise-coprime sets of {2^k - 1, 2^k, 2^k + 1 :
/// 2 <= k <= n} (at most one power of two) whose range exceeds (2^n - 1)^2.
/// Ranked by the maximum per-channel formula cost (Toffoli depth then T-count
/// for MinToffoliDepth, swapped for MinTCount), then max qubits, then fewer
/// moduli, then the ascending value list.
ModuliSet search_set(unsigned n, SearchObjective objective = SearchObjective::MinToffoliDepth);

/// x mod m_i for each modulus, in set order. Requires 0 <= x < range.
std::vector<std::uint64_t> forward_convert(const BigInt& x, const ModuliSet& set);

/// The unique x in [0, range) with the given residues.
BigInt crt_reconstruct(std::span<const std::uint64_t> residues, const ModuliSet& set);

/// {"moduli":[{"family":"FERMAT_LIKE","k":4,"value":17},...],"range":N}
nlohmann::ordered_json to_json(const ModuliSet& set);
ModuliSet moduli_set_from_json(const nlohmann::json& j);

/// Non-negative BigInt to JSON: a number when it fits in 64 bits, else a string.
nlohmann::ordered_json bigint_to_json(const BigInt& v);

} // namespace qrns
