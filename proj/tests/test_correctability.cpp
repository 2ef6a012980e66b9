#include "degbound/correctability.hpp"
#include "degbound/manifolds.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace degbound;

namespace {

StabilizerCode from_strings(const std::vector<std::string>& gens) {
    std::vector<PauliOp> ops;
    for (const auto& g : gens) ops.push_back(PauliOp::from_string(g));
    return build_code(gens.front().size(), ops);
}

struct NamedCode {
    std::string name;
    StabilizerCode code;
};

std::vector<NamedCode> small_codes() {
    std::vector<NamedCode> out;
    out.push_back({"repetition-3", from_strings({"ZZI", "IZZ"})});
    out.push_back({"five-qubit", from_strings({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})});
    out.push_back({"steane", from_strings({"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"})});
    out.push_back({"four-two-two", from_strings({"XXXX", "ZZZZ"})});
    out.push_back({"toric-2x2", toric_code(2, 2).code});
    out.push_back({"bell", from_strings({"XX", "ZZ"})});
    out.push_back({"sphere-surface", surface_code_on_complex(manifold_generator(ManifoldKind::sphere)).code});
    return out;
}

// Number of distinct stabilizer elements supported on the region, by
// enumerating all products of generators (few generators only).
std::size_t brute_stabilizers_on(const StabilizerCode& code, const QuditSet& region) {
    const auto& gens = code.generators();
    const std::size_t n = code.size();
    std::set<std::string> seen;
    for (std::uint32_t mask = 0; mask < (1u << gens.size()); ++mask) {
        PauliOp p(n);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (mask & (1u << i)) p *= gens[i];
        }
        bool inside = true;
        for (std::size_t q : p.support()) inside = inside && std::binary_search(region.begin(), region.end(), q);
        if (inside) seen.insert(p.to_string());
    }
    return seen.size();
}

QuditSet random_region(std::size_t n, std::size_t max_size, std::mt19937_64& rng) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t size = std::uniform_int_distribution<std::size_t>(0, std::min(n, max_size))(rng);
    all.resize(size);
    return make_qudit_set(all);
}

}  // namespace

TEST_CASE("textbook regions") {
    const auto rep = from_strings({"ZZI", "IZZ"});
    const auto single = is_correctable(rep, {0});
    CHECK_FALSE(single.correctable);
    REQUIRE(single.witness.has_value());
    CHECK(single.witness->support() == std::vector<std::size_t>{0});

    const auto five = from_strings({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"});
    CHECK(is_correctable(five, {0, 3}).correctable);
    CHECK(is_correctable(five, {1, 4}).correctable);
    CHECK_FALSE(is_correctable(five, {0, 1, 2}).correctable);

    const auto bell = from_strings({"XX", "ZZ"});
    CHECK(is_correctable(bell, {0, 1}).correctable);
    CHECK(is_correctable(bell, {}).correctable);

    const auto v = is_correctable(five, {2});
    CHECK(v.region_size == 1);
    CHECK(v.commutant_dim == 0);
    CHECK(v.stabilizer_dim == 0);
    CHECK_THROWS_AS((void)is_correctable(rep, {3}), InputError);
}

TEST_CASE("stabilizer dimension on a region matches enumeration") {
    std::mt19937_64 rng(11);
    for (const auto& [name, code] : small_codes()) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto region = random_region(code.size(), code.size(), rng);
            INFO(name);
            CHECK((std::size_t{1} << stabilizer_dim_on(code, region)) == brute_stabilizers_on(code, region));
        }
    }
}

TEST_CASE("rank test agrees with the dense Knill-Laflamme check") {
    std::mt19937_64 rng(2024);
    std::size_t checked = 0, correctable = 0;
    for (const auto& [name, code] : small_codes()) {
        const auto basis = code_space_basis(code);
        CHECK(basis.size() == (std::size_t{1} << degeneracy(code)));
        for (int trial = 0; trial < 32; ++trial) {
            const auto region = random_region(code.size(), 6, rng);
            const auto rank_verdict = is_correctable(code, region);
            const auto kl = knill_laflamme_dense(basis, code.size(), region);
            INFO(name);
            CHECK(rank_verdict.correctable == kl.consistent);
            CHECK(kl.violator.has_value() == !kl.consistent);
            if (kl.consistent) CHECK(kl.scalars.size() == (std::size_t{1} << (2 * region.size())));
            ++checked;
            correctable += rank_verdict.correctable ? 1 : 0;
        }
    }
    CHECK(checked >= 200);
    CHECK(correctable > 0);
    CHECK(correctable < checked);
}

TEST_CASE("Knill-Laflamme scalars are the stabilizer expectations") {
    const auto code = from_strings({"XXXX", "ZZZZ"});
    const auto basis = code_space_basis(code);
    const auto kl = knill_laflamme_dense(basis, 4, {0});
    REQUIRE(kl.consistent);
    REQUIRE(kl.scalars.size() == 4);
    for (const auto& [op, c] : kl.scalars) {
        CHECK(std::abs(c - std::complex<double>(op == "IIII" ? 1.0 : 0.0, 0.0)) < 1e-9);
    }
    const auto two = knill_laflamme_dense(basis, 4, {0, 1});
    CHECK_FALSE(two.consistent);

    std::vector<Eigen::VectorXcd> bad = basis;
    bad.push_back(basis.front());
    CHECK_THROWS_AS((void)knill_laflamme_dense(bad, 4, {0}), InputError);
    CHECK_THROWS_AS((void)code_space_basis(toric_code(2, 3).code), InputError);
}

TEST_CASE("correctability is monotone under shrinking") {
    std::mt19937_64 rng(5);
    const auto t = toric_code(2, 4);
    for (int trial = 0; trial < 60; ++trial) {
        auto region = random_region(t.code.size(), 12, rng);
        const bool big = is_correctable(t.code, region).correctable;
        while (!region.empty()) {
            region.erase(region.begin() + static_cast<long>(rng() % region.size()));
            const bool small = is_correctable(t.code, region).correctable;
            if (big) CHECK(small);
        }
    }
}

TEST_CASE("witnesses are nontrivial logical operators on the region") {
    std::mt19937_64 rng(9);
    const auto t = toric_code(2, 3);
    std::size_t seen = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const auto region = random_region(t.code.size(), t.code.size(), rng);
        const auto v = is_correctable(t.code, region);
        if (v.correctable) {
            CHECK_FALSE(v.witness.has_value());
            continue;
        }
        REQUIRE(v.witness.has_value());
        ++seen;
        for (std::size_t q : v.witness->support()) CHECK(std::binary_search(region.begin(), region.end(), q));
        for (const auto& g : t.code.generators()) CHECK(v.witness->commutes(g));
        // Not a stabilizer: some logical operator anticommutes with it.
        bool detected = false;
        for (const auto& l : logical_generators(t.code)) detected = detected || v.witness->anticommutes(l);
        CHECK(detected);
    }
    CHECK(seen > 0);
}

TEST_CASE("homogeneous sweeps") {
    const auto t = toric_code(2, 8);
    SweepOptions opt;
    opt.ball_radius = 1.0;
    opt.n_balls = 2;
    opt.samples = 30;
    opt.seed = 4;
    opt.label = "toric-8";
    const auto report = homogeneous_sweep(t.code, t.layout, opt);
    CHECK(report.samples.size() == 30);
    CHECK(report.fraction() == 1.0);
    for (const auto& s : report.samples) {
        CHECK(s.centers.size() == 2);
        CHECK(s.region_size <= s.union_size);
    }

    std::ostringstream a, b;
    report.write_text(a);
    homogeneous_sweep(t.code, t.layout, opt).write_text(b);
    CHECK(a.str() == b.str());

    SweepOptions wide = opt;
    wide.ball_radius = 4.0;
    CHECK_THROWS_AS((void)homogeneous_sweep(t.code, t.layout, wide), InputError);
    wide.ball_radius = 0.5;
    CHECK_THROWS_AS((void)homogeneous_sweep(t.code, t.layout, wide), InputError);

    SweepOptions crowded = opt;
    crowded.ball_radius = 3.5;
    crowded.n_balls = 40;
    crowded.max_attempts = 50;
    CHECK_THROWS_AS((void)homogeneous_sweep(t.code, t.layout, crowded), PlacementError);
}

TEST_CASE("sweep detects a planted local logical qubit") {
    const auto t = toric_code(2, 4);
    const auto control = planted_local_logical_code(t.code.size(), 5);
    CHECK(degeneracy(control) == 1);
    SweepOptions opt;
    opt.ball_radius = 1.5;
    opt.samples = 200;
    opt.seed = 7;
    const auto report = homogeneous_sweep(control, t.layout, opt);
    CHECK(report.correctable_count() < report.samples.size());
    for (const auto& s : report.samples) {
        if (s.correctable) continue;
        REQUIRE(s.witness.has_value());
        CHECK(s.witness->support() == std::vector<std::size_t>{5});
    }
    std::ostringstream out;
    report.write_text(out);
    CHECK(out.str().find("NOT correctable") != std::string::npos);
}
