#include "qrns/orchestrator.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "qrns/companions.hpp"
#include "qrns/qdmm.hpp"

namespace qrns {

MultiplierCircuit build_channel_circuit(const Modulus& modulus) {
    switch (modulus.family) {
    case Family::Pow2: return build_mod_pow2_mul(modulus.k);
    case Family::MersenneLike: return build_mod_mersenne_mul(modulus.k);
    case Family::FermatLike: return build_qdmm(modulus.k);
    }
    throw std::logic_error("unreachable family");
}

std::shared_ptr<const MultiplierCircuit> CircuitCache::get(const Modulus& modulus) {
    const std::lock_guard lock(mutex_);
    auto& slot = circuits_[{modulus.family, modulus.k}];
    if (!slot) slot = std::make_shared<const MultiplierCircuit>(build_channel_circuit(modulus));
    return slot;
}

std::vector<ChannelJob> plan_multiply(const BigInt& x, const BigInt& y, const ModuliSet& set,
                                      CircuitCache& cache) {
    if (x < 0 || y < 0) throw RangeError("operands must be non-negative");
    if (x * y >= set.range()) {
        throw RangeError("product " + BigInt(x * y).str() + " does not fit the set range " +
                         set.range().str());
    }
    std::vector<ChannelJob> jobs;
    jobs.reserve(set.size());
    for (const Modulus& m : set.moduli()) {
        const auto xr = static_cast<std::uint64_t>(x % m.value);
        const auto yr = static_cast<std::uint64_t>(y % m.value);
        auto circuit = cache.get(m);
        std::uint64_t x_bits = xr;
        std::uint64_t y_bits = yr;
        if (m.family == Family::FermatLike) {
            x_bits = dim1_pack(dim1_encode(xr, m.k), m.k);
            y_bits = dim1_pack(dim1_encode(yr, m.k), m.k);
        }
        BasisState input = load_operands(*circuit, x_bits, y_bits);
        jobs.push_back({m, std::move(circuit), xr, yr, std::move(input)});
    }
    return jobs;
}

std::uint64_t decode_channel(const Modulus& modulus, std::uint64_t raw) {
    try {
        switch (modulus.family) {
        case Family::Pow2:
            if (raw >= modulus.value) throw DomainError("raw value wider than the channel");
            return raw;
        case Family::MersenneLike: return canonicalize_mersenne(raw, modulus.k);
        case Family::FermatLike: {
            if ((raw >> (modulus.k + 1)) != 0) throw DomainError("raw value wider than the channel");
            return dim1_decode(dim1_unpack(raw, modulus.k), modulus.k);
        }
        }
    } catch (const std::exception& e) {
        throw AssemblyError(modulus.value, e.what());
    }
    throw std::logic_error("unreachable family");
}

std::vector<ChannelResult> execute(const std::vector<ChannelJob>& jobs, unsigned parallelism) {
    if (parallelism == 0) throw std::invalid_argument("parallelism must be positive");
    std::vector<ChannelResult> results(jobs.size(), ChannelResult{Modulus{}, 0, 0});
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                const ChannelJob& job = jobs[i];
                const BasisState out = simulate(job.circuit->circuit, job.input);
                const std::uint64_t raw = out.read(job.circuit->p);
                results[i] = {job.modulus, raw, decode_channel(job.modulus, raw)};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t threads = std::min<std::size_t>(parallelism, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            throw JobFailure(i, e.what());
        }
    }
    return results;
}

BigInt assemble(const std::vector<ChannelResult>& results, const ModuliSet& set) {
    if (results.size() != set.size()) {
        throw DomainError("expected " + std::to_string(set.size()) + " channel results, got " +
                          std::to_string(results.size()));
    }
    std::vector<std::uint64_t> residues;
    residues.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Modulus& m = set.moduli()[i];
        if (results[i].modulus != m) throw AssemblyError(m.value, "result belongs to another channel");
        const std::uint64_t decoded = decode_channel(m, results[i].raw);
        if (decoded != results[i].residue) {
            throw AssemblyError(m.value, "residue " + std::to_string(results[i].residue) +
                                             " disagrees with its register value " +
                                             std::to_string(decoded));
        }
        residues.push_back(decoded);
    }
    return crt_reconstruct(residues, set);
}

// ---------------------------------------------------------------------------

void verify_pair(std::uint64_t x, std::uint64_t y, const ModuliSet& set, CircuitCache& cache,
                 const VerifyOptions& options, VerifyReport& report) {
    ++report.total;
    const BigInt expected = BigInt(x) * y;
    Counterexample failure{x, y, expected, std::nullopt, {}, {}};
    try {
        auto results = execute(plan_multiply(x, y, set, cache), options.parallelism);
        if (options.hook) options.hook(results);
        for (const auto& r : results) {
            if (r.residue != static_cast<std::uint64_t>(expected % r.modulus.value)) {
                failure.failing_channels.push_back(r.modulus.value);
            }
        }
        failure.got = assemble(results, set);
        if (*failure.got == expected && failure.failing_channels.empty()) {
            ++report.passed;
            return;
        }
    } catch (const AssemblyError& e) {
        failure.error = e.what();
        if (std::ranges::find(failure.failing_channels, e.modulus()) == failure.failing_channels.end()) {
            failure.failing_channels.push_back(e.modulus());
        }
    } catch (const JobFailure& e) {
        failure.error = e.what();
        failure.failing_channels.push_back(set.moduli()[e.index()].value);
    } catch (const std::exception& e) {
        failure.error = e.what();
    }
    if (report.failures.size() < options.max_failures_kept) {
        report.failures.push_back(std::move(failure));
    }
}

namespace {

void require_verify_width(unsigned n, unsigned max) {
    if (n < 1 || n > max) {
        throw DomainError("verification width must be in [1, " + std::to_string(max) + "], got " +
                          std::to_string(n));
    }
}

} // namespace

VerifyReport verify_exhaustive(unsigned n, const ModuliSet& set, const VerifyOptions& options) {
    require_verify_width(n, kExhaustiveMaxWidth);
    if (required_range(n) > set.range()) {
        throw RangeError("set range " + set.range().str() + " cannot hold all " +
                         std::to_string(n) + "-bit products");
    }
    CircuitCache cache;
    VerifyReport report;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < limit; ++x) {
        for (std::uint64_t y = 0; y < limit; ++y) verify_pair(x, y, set, cache, options, report);
    }
    return report;
}

VerifyReport verify_sampled(unsigned n, const ModuliSet& set, std::uint64_t samples,
                            std::uint64_t seed, const VerifyOptions& options) {
    require_verify_width(n, 31);
    if (required_range(n) > set.range()) {
        throw RangeError("set range " + set.range().str() + " cannot hold all " +
                         std::to_string(n) + "-bit products");
    }
    CircuitCache cache;
    VerifyReport report;
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t s = 0; s < samples; ++s) {
        // Masking raw engine output keeps the stream identical across standard libraries.
        const std::uint64_t x = rng() & mask;
        const std::uint64_t y = rng() & mask;
        verify_pair(x, y, set, cache, options, report);
    }
    return report;
}

VerifyReport verify_channel(const Modulus& modulus, std::optional<std::uint64_t> samples,
                            std::uint64_t seed) {
    const MultiplierCircuit circuit = build_channel_circuit(modulus);
    const bool dim1 = modulus.family == Family::FermatLike;
    const std::uint64_t operand_count = dim1 ? modulus.value : std::uint64_t{1} << modulus.k;
    VerifyReport report;

    auto check = [&](std::uint64_t x, std::uint64_t y) {
        ++report.total;
        const auto expected = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * y) % modulus.value);
        std::uint64_t x_bits = x, y_bits = y, want_raw = 0;
        if (dim1) {
            const Dim1Value a = dim1_encode(x, modulus.k), b = dim1_encode(y, modulus.k);
            x_bits = dim1_pack(a, modulus.k);
            y_bits = dim1_pack(b, modulus.k);
            want_raw = dim1_pack(dim1_mul_oracle(a, b, modulus.k), modulus.k);
        }
        const BasisState out = simulate(circuit.circuit, load_operands(circuit, x_bits, y_bits));
        const std::uint64_t raw = out.read(circuit.p);
        Counterexample failure{x, y, expected, std::nullopt, {modulus.value}, {}};
        try {
            const std::uint64_t got = decode_channel(modulus, raw);
            failure.got = got;
            if (got == expected && (!dim1 || raw == want_raw)) {
                ++report.passed;
                return;
            }
            if (dim1 && raw != want_raw) failure.error = "P register " + std::to_string(raw) +
                                                         " differs from oracle bits " +
                                                         std::to_string(want_raw);
        } catch (const AssemblyError& e) {
            failure.error = e.what();
        }
        if (report.failures.size() < 32) report.failures.push_back(std::move(failure));
    };

    if (samples) {
        std::mt19937_64 rng(seed);
        for (std::uint64_t s = 0; s < *samples; ++s) {
            const std::uint64_t x = rng() % operand_count;
            const std::uint64_t y = rng() % operand_count;
            check(x, y);
        }
    } else {
        for (std::uint64_t x = 0; x < operand_count; ++x) {
            for (std::uint64_t y = 0; y < operand_count; ++y) check(x, y);
        }
    }
    return report;
}

nlohmann::ordered_json to_json(const VerifyReport& report) {
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& f : report.failures) {
        nlohmann::ordered_json item = {{"x", f.x}, {"y", f.y}, {"expected", bigint_to_json(f.expected)}};
        item["got"] = f.got ? bigint_to_json(*f.got) : nlohmann::ordered_json(nullptr);
        item["failing_channels"] = f.failing_channels;
        if (!f.error.empty()) item["error"] = f.error;
        failures.push_back(std::move(item));
    }
    return {{"total", report.total},
            {"passed", report.passed},
            {"failed", report.total - report.passed},
            {"failures", failures}};
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json write_manifest(const std::filesystem::path& dir, const BigInt& x,
                                      const BigInt& y, const ModuliSet& set,
                                      const std::vector<ChannelJob>& jobs,
                                      const std::vector<ChannelResult>& results,
                                      const BigInt& product) {
    std::filesystem::create_directories(dir);
    std::set<std::string> written;
    nlohmann::ordered_json channels = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const ChannelJob& job = jobs[i];
        const std::string file = "channel_" + std::string(family_name(job.modulus.family)) + "_k" +
                                 std::to_string(job.modulus.k) + ".gatelist";
        if (written.insert(file).second) {
            std::ofstream out(dir / file, std::ios::binary);
            out << export_gatelist(job.circuit->circuit);
            if (!out) throw std::runtime_error("cannot write " + (dir / file).string());
        }
        nlohmann::ordered_json ch = {{"modulus", job.modulus.value},
                                     {"family", family_name(job.modulus.family)},
                                     {"k", job.modulus.k},
                                     {"gatelist", file},
                                     {"x_residue", job.x_residue},
                                     {"y_residue", job.y_residue},
                                     {"input_bits", job.input.to_string()}};
        if (i < results.size()) {
            ch["raw"] = results[i].raw;
            ch["residue"] = results[i].residue;
        }
        channels.push_back(std::move(ch));
    }
    nlohmann::ordered_json manifest = {{"x", bigint_to_json(x)},
                                       {"y", bigint_to_json(y)},
                                       {"product", bigint_to_json(product)},
                                       {"moduli_set", to_json(set)},
                                       {"channels", channels}};
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
    return manifest;
}

} // namespace qrns
