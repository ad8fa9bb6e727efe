#pragma once

// Distributed multiplication flow: split the operands into residues, run one
// modulo multiplier per channel as an independent job, then reassemble the
// product with the CRT.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrns/multiplier.hpp"
#include "qrns/rns.hpp"

namespace qrns {

/// Builds each (family, k) channel circuit once and hands out shared,
/// read-only references. Thread-safe.
class CircuitCache {
public:
    std::shared_ptr<const MultiplierCircuit> get(const Modulus& modulus);

private:
    std::mutex mutex_;
    std::map<std::pair<Family, unsigned>, std::shared_ptr<const MultiplierCircuit>> circuits_;
};

/// Builds the multiplier serving a modulus: QDMM for 2^k + 1, shift-and-add
/// for 2^k and 2^k - 1.
MultiplierCircuit build_channel_circuit(const Modulus& modulus);

struct ChannelJob {
    Modulus modulus;
    std::shared_ptr<const MultiplierCircuit> circuit;
    std::uint64_t x_residue;
    std::uint64_t y_residue;
    BasisState input;  ///< residues loaded; diminished-1 encoded on 2^k + 1 channels
};

struct ChannelResult {
    Modulus modulus;
    std::uint64_t raw;      ///< P register bits
    std::uint64_t residue;  ///< decoded and canonical, < modulus
};

/// Thrown when an operand pair does not fit the set's range.
class RangeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A channel job that could not be simulated.
class JobFailure : public std::runtime_error {
public:
    JobFailure(std::size_t index, const std::string& what)
        : std::runtime_error("job " + std::to_string(index) + ": " + what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A channel result that breaks its encoding invariants.
class AssemblyError : public std::runtime_error {
public:
    AssemblyError(std::uint64_t modulus, const std::string& what)
        : std::runtime_error("channel mod " + std::to_string(modulus) + ": " + what),
          modulus_(modulus) {}
    std::uint64_t modulus() const noexcept { return modulus_; }

private:
    std::uint64_t modulus_;
};

std::vector<ChannelJob> plan_multiply(const BigInt& x, const BigInt& y, const ModuliSet& set,
                                      CircuitCache& cache);

/// Simulates every job on up to `parallelism` worker threads. Results come
/// back in job order whatever the completion order.
std::vector<ChannelResult> execute(const std::vector<ChannelJob>& jobs, unsigned parallelism);

/// Decodes a raw P register for the given channel; throws AssemblyError on
/// a malformed diminished-1 value or an out-of-range residue.
std::uint64_t decode_channel(const Modulus& modulus, std::uint64_t raw);

BigInt assemble(const std::vector<ChannelResult>& results, const ModuliSet& set);

struct Counterexample {
    std::uint64_t x;
    std::uint64_t y;
    BigInt expected;
    std::optional<BigInt> got;             ///< empty when assembly threw
    std::vector<std::uint64_t> failing_channels;  ///< moduli whose residue was wrong
    std::string error;
};

struct VerifyReport {
    std::uint64_t total = 0;
    std::uint64_t passed = 0;
    std::vector<Counterexample> failures;

    bool ok() const noexcept { return passed == total; }
};

/// Hook applied to channel results before assembly (fault injection in tests).
using ResultHook = std::function<void(std::vector<ChannelResult>&)>;

struct VerifyOptions {
    unsigned parallelism = 1;
    ResultHook hook;
    std::size_t max_failures_kept = 32;
};

/// Runs the full flow for one pair and checks it against x * y.
void verify_pair(std::uint64_t x, std::uint64_t y, const ModuliSet& set, CircuitCache& cache,
                 const VerifyOptions& options, VerifyReport& report);

inline constexpr unsigned kExhaustiveMaxWidth = 6;

/// All x, y in [0, 2^n); n <= 6.
VerifyReport verify_exhaustive(unsigned n, const ModuliSet& set, const VerifyOptions& options = {});

/// `samples` pairs drawn from a seeded mt19937_64, uniform on [0, 2^n).
VerifyReport verify_sampled(unsigned n, const ModuliSet& set, std::uint64_t samples,
                            std::uint64_t seed, const VerifyOptions& options = {});

/// Sweeps one channel multiplier against modular multiplication: all operand
/// register values (x, y < 2^k, or <= 2^k for diminished-1 channels) when
/// `samples` is empty, else that many seeded random pairs. Diminished-1
/// outputs must match the oracle bit for bit.
VerifyReport verify_channel(const Modulus& modulus, std::optional<std::uint64_t> samples = {},
                            std::uint64_t seed = 0);

nlohmann::ordered_json to_json(const VerifyReport& report);

/// Writes one gate list per distinct channel circuit plus manifest.json into
/// `dir`, and returns the manifest.
nlohmann::ordered_json write_manifest(const std::filesystem::path& dir, const BigInt& x,
                                      const BigInt& y, const ModuliSet& set,
                                      const std::vector<ChannelJob>& jobs,
                                      const std::vector<ChannelResult>& results,
                                      const BigInt& product);

} // namespace qrns
