#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qrns/orchestrator.hpp"
#include "qrns/qdmm.hpp"

using namespace qrns;

namespace {

ModuliSet set_of(std::initializer_list<std::uint64_t> v) {
    const std::vector<std::uint64_t> values(v);
    return ModuliSet::from_values(values);
}

} // namespace

TEST_CASE("plan_multiply loads residues") {
    CircuitCache cache;
    const ModuliSet s = set_of({3, 4, 5});
    const auto jobs = plan_multiply(7, 6, s, cache);
    REQUIRE(jobs.size() == 3);
    CHECK(jobs[0].x_residue == 1);
    CHECK(jobs[0].y_residue == 0);
    CHECK(jobs[1].x_residue == 3);
    CHECK(jobs[1].y_residue == 2);
    CHECK(jobs[2].x_residue == 2);
    CHECK(jobs[2].y_residue == 1);
    // mod 5 operands go in as v - 1 on two bits plus the flag
    CHECK(jobs[2].input.read(jobs[2].circuit->x) == 1);
    CHECK(jobs[2].input.read(jobs[2].circuit->y) == 0);
    CHECK(jobs[1].input.read(jobs[1].circuit->x) == 3);

    const auto zero = plan_multiply(0, 6, s, cache);
    CHECK(zero[2].input.read(zero[2].circuit->x) == 0b100);

    CHECK(cache.get(Modulus::from_value(5)) == jobs[2].circuit);
    CHECK_THROWS_AS(plan_multiply(10, 6, s, cache), RangeError);
    CHECK_THROWS_AS(plan_multiply(-1, 6, s, cache), RangeError);
}

TEST_CASE("execute and assemble") {
    CircuitCache cache;
    const ModuliSet s = set_of({3, 4, 5});
    const auto jobs = plan_multiply(7, 6, s, cache);
    const auto one = execute(jobs, 1);
    const auto four = execute(jobs, 4);
    REQUIRE(one.size() == 3);
    CHECK(one[0].residue == 0);
    CHECK(one[1].residue == 2);
    CHECK(one[2].residue == 2);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].raw == four[i].raw);
        CHECK(one[i].residue == four[i].residue);
        CHECK(one[i].modulus == jobs[i].modulus);
    }
    CHECK(assemble(one, s) == 42);

    CHECK(execute({}, 2).empty());
    CHECK_THROWS_AS(execute(jobs, 0), std::invalid_argument);

    const ModuliSet wide = paper_set_lookup(8);
    CHECK(assemble(execute(plan_multiply(255, 255, wide, cache), 3), wide) == 65025);
}

TEST_CASE("decode_channel") {
    const Modulus f = Modulus::from_value(17);
    CHECK(decode_channel(f, 14) == 15);
    CHECK(decode_channel(f, 16) == 0);
    CHECK_THROWS(decode_channel(f, 17));
    const Modulus m = Modulus::from_value(7);
    CHECK(decode_channel(m, 7) == 0);
    CHECK(decode_channel(m, 6) == 6);
    CHECK(decode_channel(Modulus::from_value(8), 5) == 5);
}

TEST_CASE("exhaustive end-to-end") {
    const VerifyReport r3 = verify_exhaustive(3, set_of({3, 4, 5}));
    CHECK(r3.total == 64);
    CHECK(r3.passed == 64);
    VerifyOptions opts;
    opts.parallelism = 3;
    const VerifyReport r4 = verify_exhaustive(4, set_of({5, 8, 9}), opts);
    CHECK(r4.total == 256);
    CHECK(r4.ok());
    CHECK_THROWS(verify_exhaustive(kExhaustiveMaxWidth + 1, paper_set_lookup(7)));
}

TEST_CASE("sampled verification is reproducible") {
    const ModuliSet s = paper_set_lookup(6);
    const VerifyReport a = verify_sampled(6, s, 100, 7);
    const VerifyReport b = verify_sampled(6, s, 100, 7);
    CHECK(a.total == 100);
    CHECK(a.ok());
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("a corrupted channel is named") {
    VerifyOptions opts;
    opts.hook = [](std::vector<ChannelResult>& results) {
        for (auto& r : results) {
            if (r.modulus.value == 9) r.residue = (r.residue + 1) % 9;
        }
    };
    const VerifyReport r = verify_exhaustive(3, set_of({5, 8, 9}), opts);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.failures.empty());
    for (const auto& f : r.failures) CHECK(f.failing_channels == std::vector<std::uint64_t>{9});
    CHECK(r.failures.size() <= opts.max_failures_kept);
}

TEST_CASE("channel verification") {
    const VerifyReport f = verify_channel(Modulus::from_value(9));
    CHECK(f.total == 81);
    CHECK(f.ok());
    CHECK(verify_channel(Modulus::from_value(7)).total == 64);
    CHECK(verify_channel(Modulus::from_value(16)).ok());
    const VerifyReport sampled = verify_channel(Modulus::from_value(257), 50, 3);
    CHECK(sampled.total == 50);
    CHECK(sampled.ok());
}

TEST_CASE("manifest") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qrns_manifest_test";
    fs::remove_all(dir);
    CircuitCache cache;
    const ModuliSet s = set_of({3, 4, 5});
    const auto jobs = plan_multiply(7, 6, s, cache);
    const auto results = execute(jobs, 2);
    const auto m = write_manifest(dir, 7, 6, s, jobs, results, assemble(results, s));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(m["channels"].size() == 3);
    std::size_t gatelists = 0;
    for (const auto& e : fs::directory_iterator(dir)) gatelists += e.path().extension() == ".gatelist";
    CHECK(gatelists == 3);
    std::ifstream in(dir / "manifest.json");
    const auto parsed = nlohmann::json::parse(in);
    CHECK(parsed["product"] == 42);
    fs::remove_all(dir);
}
