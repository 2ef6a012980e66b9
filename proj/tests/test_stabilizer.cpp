#include "degbound/manifolds.hpp"
#include "degbound/stabilizer.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace degbound;

namespace {

// Generator matrix (x | z) rebuilt from the Pauli strings as ints.
oracle::Dense dense_from_strings(const StabilizerCode& code) {
    const std::size_t n = code.size();
    oracle::Dense m;
    for (const auto& g : code.generators()) {
        const std::string s = g.to_string();
        std::vector<int> row(2 * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = s[i] == 'X' || s[i] == 'Y';
            row[n + i] = s[i] == 'Z' || s[i] == 'Y';
        }
        m.push_back(row);
    }
    return m;
}

std::size_t oracle_degeneracy(const StabilizerCode& code) {
    return code.size() - oracle::rank_mod2(dense_from_strings(code));
}

void check_logicals(const StabilizerCode& code) {
    const auto logicals = logical_generators(code);
    const std::size_t k = degeneracy(code);
    REQUIRE(logicals.size() == 2 * k);
    for (const auto& l : logicals) {
        for (const auto& g : code.generators()) REQUIRE(l.commutes(g));
    }
    for (std::size_t i = 0; i < logicals.size(); ++i) {
        for (std::size_t j = 0; j < logicals.size(); ++j) {
            const bool expect = i != j && i / 2 == j / 2;
            CHECK(logicals[i].anticommutes(logicals[j]) == expect);
        }
    }
    // Independent modulo the stabilizers: appending all logicals raises the rank by 2k.
    auto m = dense_from_strings(code);
    const std::size_t r0 = oracle::rank_mod2(m);
    const std::size_t n = code.size();
    for (const auto& l : logicals) {
        std::vector<int> row(2 * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = l.x.get(i);
            row[n + i] = l.z.get(i);
        }
        m.push_back(row);
    }
    CHECK(oracle::rank_mod2(m) == r0 + 2 * k);
}

}  // namespace

TEST_CASE("Pauli operators") {
    const auto p = PauliOp::from_string("XIZY");
    CHECK(p.to_string() == "XIZY");
    CHECK(p.weight() == 3);
    CHECK(p.support() == std::vector<std::size_t>{0, 2, 3});
    CHECK(PauliOp::from_string("XX").commutes(PauliOp::from_string("ZZ")));
    CHECK(PauliOp::from_string("XI").anticommutes(PauliOp::from_string("ZI")));
    CHECK(PauliOp::from_string("Y").anticommutes(PauliOp::from_string("X")));
    auto q = PauliOp::from_string("XZ");
    q *= PauliOp::from_string("ZZ");
    CHECK(q.to_string() == "YI");
    CHECK_THROWS_AS((void)PauliOp::from_string("XQ"), InputError);
    CHECK_THROWS_AS((void)PauliOp::from_string("X").anticommutes(PauliOp::from_string("XX")), InputError);
}

TEST_CASE("build_code") {
    const auto bell = build_code(2, {PauliOp::from_string("XX"), PauliOp::from_string("ZZ")});
    CHECK(bell.rank() == 2);
    CHECK(degeneracy(bell) == 0);
    CHECK(logical_generators(bell).empty());
    try {
        (void)build_code(2, {PauliOp::from_string("XX"), PauliOp::from_string("ZI")});
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("generators 0 and 1 anticommute") != std::string::npos);
    }
    const auto empty = build_code(5, {});
    CHECK(degeneracy(empty) == 5);
    CHECK(logical_generators(empty).size() == 10);
    CHECK_THROWS_AS((void)build_code(3, {PauliOp::from_string("XX")}), InputError);
}

TEST_CASE("toric codes") {
    for (std::size_t L : {2, 4, 6, 8}) {
        const auto t = toric_code(2, L);
        CHECK(t.code.size() == 2 * L * L);
        CHECK(t.layout.size() == t.code.size());
        CHECK(degeneracy(t.code) == 2);
        CHECK(oracle_degeneracy(t.code) == 2);
    }
    for (std::size_t L : {3, 4}) {
        const auto t = toric_code(3, L);
        CHECK(t.code.size() == 3 * L * L * L);
        CHECK(degeneracy(t.code) == 3);
        CHECK(oracle_degeneracy(t.code) == 3);
    }
    CHECK_THROWS_AS((void)toric_code(4, 3), InputError);
    CHECK_THROWS_AS((void)toric_code(2, 1), InputError);
}

TEST_CASE("toric logicals wind around the torus") {
    const std::size_t L = 4;
    const auto t = toric_code(2, L);
    check_logicals(t.code);
    for (const auto& l : logical_generators(t.code)) {
        // A noncontractible cycle (or cocycle) crosses every row or every column.
        std::vector<int> rows(L, 0), cols(L, 0);
        for (std::size_t q : l.support()) {
            const auto& p = t.layout.position(q);
            rows[static_cast<std::size_t>(p[1])] = 1;
            cols[static_cast<std::size_t>(p[0])] = 1;
        }
        const bool spans_rows = std::count(rows.begin(), rows.end(), 1) == static_cast<long>(L);
        const bool spans_cols = std::count(cols.begin(), cols.end(), 1) == static_cast<long>(L);
        CHECK((spans_rows || spans_cols));
        CHECK(l.weight() >= L);
    }
}

TEST_CASE("surface codes on complexes") {
    const auto s2 = surface_code_on_complex(manifold_generator(ManifoldKind::sphere));
    CHECK(s2.code.size() == 6);
    CHECK(degeneracy(s2.code) == 0);
    const auto t2 = manifold_generator(ManifoldKind::torus);
    CHECK(degeneracy(surface_code_on_complex(t2).code) == 2);
    CHECK(degeneracy(surface_code_on_complex(t2, 1).code) == 2);
    for (std::size_t g : {1, 2, 3}) {
        ManifoldParams p;
        p.genus = g;
        const auto K = manifold_generator(ManifoldKind::genus_surface, p);
        const auto code = surface_code_on_complex(K).code;
        CHECK(degeneracy(code) == 2 * g);
        CHECK(degeneracy(code) == betti_numbers(K)[1]);
        CHECK(oracle_degeneracy(code) == 2 * g);
    }
    for (auto kind : {ManifoldKind::klein_bottle, ManifoldKind::projective_plane}) {
        const auto K = manifold_generator(kind);
        CHECK(degeneracy(surface_code_on_complex(K).code) == betti_numbers(K)[1]);
    }
    CHECK_THROWS_AS((void)surface_code_on_complex(manifold_generator(ManifoldKind::torus3)), InputError);
}

TEST_CASE("fracton codes") {
    std::vector<double> xs, ks;
    for (std::size_t L : {3, 4, 5}) {
        const auto x = fracton_code(FractonModel::xcube, L);
        CHECK(x.code.size() == 3 * L * L * L);
        const std::size_t k = degeneracy(x.code);
        CHECK(k == oracle_degeneracy(x.code));
        CHECK(k == 6 * L - 3);
        xs.push_back(static_cast<double>(L));
        ks.push_back(static_cast<double>(k));
    }
    CHECK(ks[0] < ks[1]);
    CHECK(ks[1] < ks[2]);

    for (std::size_t L : {2, 3, 4}) {
        const auto c = fracton_code(FractonModel::cubic1, L);
        CHECK(c.code.size() == 2 * L * L * L);
        const std::size_t k = degeneracy(c.code);
        CHECK(k == oracle_degeneracy(c.code));
        CHECK(k >= 1);
        CHECK(k <= 4 * L);
        for (const auto& g : c.code.generators()) CHECK(g.weight() == 8);
    }

    for (std::size_t L : {2, 4}) {
        const auto cb = fracton_code(FractonModel::checkerboard_model, L);
        CHECK(cb.code.size() == L * L * L);
        CHECK(degeneracy(cb.code) == oracle_degeneracy(cb.code));
        CHECK(degeneracy(cb.code) == 6 * L - 6);
    }
    CHECK_THROWS_AS((void)fracton_code(FractonModel::checkerboard_model, 3), InputError);
    CHECK(parse_fracton_model("xcube") == FractonModel::xcube);
    CHECK_THROWS_AS((void)parse_fracton_model("haah2"), InputError);
}

TEST_CASE("stacked layers") {
    for (std::size_t L : {2, 3, 4, 5}) {
        const auto s = stacked_layers(L);
        CHECK(s.code.size() == 2 * L * L * L);
        CHECK(degeneracy(s.code) == 2 * L);
        CHECK(degeneracy(s.code) == L * degeneracy(toric_code(2, L).code));
    }
    // Generators of different layers have disjoint supports.
    const auto s = stacked_layers(3);
    for (const auto& g : s.code.generators()) {
        const auto sup = g.support();
        const double z0 = s.layout.position(sup.front())[2];
        for (std::size_t q : sup) CHECK(s.layout.position(q)[2] == z0);
    }
}

TEST_CASE("degeneracy is invariant under generator row mixing") {
    std::mt19937_64 rng(3);
    const auto base = fracton_code(FractonModel::xcube, 3).code;
    for (int trial = 0; trial < 5; ++trial) {
        auto gens = base.generators();
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int step = 0; step < 200; ++step) {
            const std::size_t i = pick(rng), j = pick(rng);
            if (i != j) gens[i] *= gens[j];
        }
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(degeneracy(build_code(base.size(), gens)) == degeneracy(base));
    }
}

TEST_CASE("logical generators on several codes") {
    check_logicals(toric_code(3, 3).code);
    check_logicals(fracton_code(FractonModel::xcube, 3).code);
    check_logicals(fracton_code(FractonModel::cubic1, 3).code);
    check_logicals(surface_code_on_complex(manifold_generator(ManifoldKind::projective_plane)).code);
}

TEST_CASE("code text round trip") {
    const auto code = toric_code(2, 3).code;
    std::ostringstream out;
    write_code(out, code);
    const std::string text = out.str();
    CHECK(text.rfind("18 18\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_code(in);
    CHECK(back.generators() == code.generators());
    std::istringstream bad("2 1\nXQ\n");
    CHECK_THROWS_AS((void)read_code(bad), InputError);
    std::istringstream clash("2 2\nXX\nZI\n");
    CHECK_THROWS_AS((void)read_code(clash), ValidationError);
}
