#include "degbound/manifolds.hpp"
#include "degbound/simplicial.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace degbound;

namespace {

const SimplicialComplex::Options open_ok{.require_closed_manifold = false};

SimplicialComplex single_triangle() {
    return SimplicialComplex::build({{0, 1, 2}}, open_ok);
}

// ∂2 built straight from triangle vertex triples, without the complex's facet tables.
oracle::Dense boundary2_from_triangles(const std::vector<std::vector<Vertex>>& tris) {
    std::set<std::pair<Vertex, Vertex>> edge_set;
    for (const auto& t : tris) {
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) edge_set.insert({std::min(t[a], t[b]), std::max(t[a], t[b])});
        }
    }
    std::vector<std::pair<Vertex, Vertex>> edges(edge_set.begin(), edge_set.end());
    oracle::Dense m(edges.size(), std::vector<int>(tris.size(), 0));
    for (std::size_t j = 0; j < tris.size(); ++j) {
        const auto& t = tris[j];
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                const std::pair<Vertex, Vertex> e{std::min(t[a], t[b]), std::max(t[a], t[b])};
                const auto it = std::lower_bound(edges.begin(), edges.end(), e);
                m[static_cast<std::size_t>(it - edges.begin())][j] ^= 1;
            }
        }
    }
    return m;
}

Chain random_chain(const SimplicialComplex& K, std::size_t k, std::mt19937_64& rng) {
    Chain c = zero_chain(K, k);
    for (std::size_t i = 0; i < K.count(k); ++i) c.support.set(i, (rng() & 1) != 0);
    return c;
}

}  // namespace

TEST_CASE("build_complex counts and validation") {
    const auto s2 = manifold_generator(ManifoldKind::sphere);
    CHECK(s2.counts() == std::vector<std::size_t>{4, 6, 4});
    CHECK(s2.euler_characteristic() == 2);

    const auto t2 = manifold_generator(ManifoldKind::torus);
    CHECK(t2.counts() == std::vector<std::size_t>{7, 21, 14});
    CHECK(t2.euler_characteristic() == 0);

    SUBCASE("three triangles on one edge") {
        try {
            (void)SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("{0,1}") != std::string::npos);
        }
    }
    SUBCASE("malformed input") {
        CHECK_THROWS_AS((void)SimplicialComplex::build({{0, 1, 2}, {0, 1}}), InputError);
        CHECK_THROWS_AS((void)SimplicialComplex::build({{0, 0, 1}}, open_ok), InputError);
        CHECK_THROWS_AS((void)SimplicialComplex::build({}), InputError);
    }
    SUBCASE("simplices are canonical and every ridge has two cofaces") {
        for (std::size_t k = 0; k <= 2; ++k) {
            for (std::size_t i = 0; i + 1 < t2.count(k); ++i) {
                const auto a = t2.simplex(k, i);
                const auto b = t2.simplex(k, i + 1);
                CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
            }
        }
        for (std::size_t e = 0; e < t2.count(1); ++e) CHECK(t2.cofaces(1, e).size() == 2);
    }
}

TEST_CASE("boundary_matrix") {
    const auto s2 = manifold_generator(ManifoldKind::sphere);
    const auto d2 = boundary_matrix(s2, 2);
    CHECK(d2.rows() == 6);
    CHECK(d2.cols() == 4);
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t weight = 0;
        for (std::size_t r = 0; r < 6; ++r) weight += d2.get(r, c) ? 1 : 0;
        CHECK(weight == 3);
    }
    CHECK_THROWS_AS((void)boundary_matrix(s2, 0), InputError);
    CHECK_THROWS_AS((void)boundary_matrix(s2, 3), InputError);

    for (auto kind : {ManifoldKind::sphere, ManifoldKind::torus, ManifoldKind::klein_bottle,
                      ManifoldKind::projective_plane, ManifoldKind::torus3}) {
        const auto K = manifold_generator(kind);
        for (std::size_t k = 2; k <= K.dimension(); ++k) {
            CHECK(boundary_matrix(K, k - 1).multiply(boundary_matrix(K, k)).is_zero());
        }
    }

    SUBCASE("torus ranks match the int-matrix oracle") {
        const auto t2 = manifold_generator(ManifoldKind::torus);
        const auto oracle_d2 = boundary2_from_triangles(t2.top_simplices());
        const std::size_t oracle_rank2 = oracle::rank_mod2(oracle_d2);
        CHECK(oracle_rank2 == 13);
        CHECK(gf2::rank(boundary_matrix(t2, 2)) == oracle_rank2);
        CHECK(gf2::rank(boundary_matrix(t2, 1)) == 6);
    }
}

TEST_CASE("betti numbers") {
    using V = std::vector<std::size_t>;
    CHECK(betti_numbers(manifold_generator(ManifoldKind::sphere)) == V{1, 0, 1});
    CHECK(betti_numbers(manifold_generator(ManifoldKind::torus)) == V{1, 2, 1});
    CHECK(betti_numbers(manifold_generator(ManifoldKind::klein_bottle)) == V{1, 2, 1});
    CHECK(betti_numbers(manifold_generator(ManifoldKind::projective_plane)) == V{1, 1, 1});
    CHECK(betti_numbers(manifold_generator(ManifoldKind::torus3)) == V{1, 3, 3, 1});
    CHECK(betti_numbers(manifold_generator(ManifoldKind::sphere, {.dim = 3})) == V{1, 0, 0, 1});
    const auto g2 = manifold_generator(ManifoldKind::genus_surface, {.genus = 2});
    CHECK(g2.euler_characteristic() == -2);
    CHECK(betti_numbers(g2) == V{1, 4, 1});
}

TEST_CASE("barycentric subdivision") {
    SUBCASE("single triangle") {
        const auto sub = barycentric_subdivide(single_triangle());
        CHECK(sub.complex.counts() == std::vector<std::size_t>{7, 12, 6});
        CHECK(sub.complex.euler_characteristic() == 1);
        // Vertex labels follow the parent's simplices: 3 vertices, 3 edges, 1 face.
        CHECK(sub.map.vertex_origin[0] == SimplexRef{0, 0});
        CHECK(sub.map.vertex_origin[3] == SimplexRef{1, 0});
        CHECK(sub.map.vertex_origin[6] == SimplexRef{2, 0});
    }
    SUBCASE("flag counts and invariants on closed manifolds") {
        for (auto kind : {ManifoldKind::sphere, ManifoldKind::torus, ManifoldKind::klein_bottle,
                          ManifoldKind::projective_plane}) {
            const auto K = manifold_generator(kind);
            const auto sub = barycentric_subdivide(K);
            CHECK(sub.complex.count(2) == K.count(2) * 6);
            CHECK(sub.complex.euler_characteristic() == K.euler_characteristic());
            CHECK(sub.complex.is_closed_manifold());
            CHECK(betti_numbers(sub.complex) == betti_numbers(K));
        }
        const auto t3 = manifold_generator(ManifoldKind::torus3);
        const auto sub3 = barycentric_subdivide(t3);
        CHECK(sub3.complex.count(3) == t3.count(3) * 24);
        CHECK(sub3.complex.euler_characteristic() == 0);
    }
    SUBCASE("carriers are disjoint and have (k+1)! members") {
        const auto K = manifold_generator(ManifoldKind::torus);
        const auto sub = barycentric_subdivide(K);
        const std::size_t factorial[] = {1, 2, 6};
        for (std::size_t k = 0; k <= 2; ++k) {
            std::vector<int> hits(sub.complex.count(k), 0);
            for (std::size_t i = 0; i < K.count(k); ++i) {
                const auto set = sub.map.carrier_set(k, i);
                CHECK(set.size() == factorial[k]);
                for (std::size_t j : set) ++hits[j];
            }
            CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; }));
        }
        // Every child top simplex lies in exactly one parent top simplex.
        for (std::size_t j = 0; j < sub.complex.count(2); ++j) {
            CHECK(sub.map.carrier[2][j] != SubdivisionMap::npos);
        }
    }
}

TEST_CASE("push_chain") {
    const auto K = manifold_generator(ManifoldKind::torus);
    const auto sub = barycentric_subdivide(K);

    CHECK(push_chain(sub.map, zero_chain(K, 1)).support.none());

    const std::size_t edge[] = {5};
    const Chain one = chain_from_indices(K, 1, edge);
    const Chain image = push_chain(sub.map, one);
    CHECK(image.weight() == 2);
    CHECK(image.support.ones() == sub.map.carrier_set(1, 5));

    CHECK_THROWS_AS((void)push_chain(sub.map, zero_chain(sub.complex, 1)), InputError);

    SUBCASE("chain map: boundary commutes with B on random chains") {
        std::mt19937_64 rng(11);
        for (auto kind : {ManifoldKind::sphere, ManifoldKind::torus, ManifoldKind::projective_plane}) {
            const auto M = manifold_generator(kind);
            const auto s = barycentric_subdivide(M);
            for (int trial = 0; trial < 20; ++trial) {
                for (std::size_t k = 1; k <= 2; ++k) {
                    const Chain c = random_chain(M, k, rng);
                    CHECK(boundary(s.complex, push_chain(s.map, c)) ==
                          push_chain(s.map, boundary(M, c)));
                }
            }
        }
        // Exhaustive on the tetrahedron boundary (4 triangles, 6 edges).
        const auto S = manifold_generator(ManifoldKind::sphere);
        const auto s = barycentric_subdivide(S);
        for (std::uint32_t mask = 0; mask < (1u << 6); ++mask) {
            Chain c = zero_chain(S, 1);
            for (std::size_t i = 0; i < 6; ++i) c.support.set(i, (mask >> i) & 1u);
            CHECK(boundary(s.complex, push_chain(s.map, c)) == push_chain(s.map, boundary(S, c)));
        }
    }
}

TEST_CASE("full_skeleton_chain") {
    const auto s2 = manifold_generator(ManifoldKind::sphere);
    CHECK(full_skeleton_chain(s2, 1).weight() == 6);
    CHECK(full_skeleton_chain(s2, 0).weight() == 4);

    // On a barycentric subdivision every (d-2)-simplex has an even number of
    // (d-1)-cofaces, so the sum of all (d-1)-simplices is a cycle.
    for (auto kind : {ManifoldKind::sphere, ManifoldKind::torus, ManifoldKind::klein_bottle,
                      ManifoldKind::projective_plane}) {
        const auto sub = barycentric_subdivide(manifold_generator(kind));
        const auto& K = sub.complex;
        for (std::size_t v = 0; v < K.count(0); ++v) CHECK(K.cofaces(0, v).size() % 2 == 0);
        CHECK(boundary(K, full_skeleton_chain(K, 1)).support.none());
    }
}

TEST_CASE("solve_top_boundary agrees with dense elimination") {
    std::mt19937_64 rng(3);
    for (auto kind : {ManifoldKind::torus, ManifoldKind::klein_bottle, ManifoldKind::projective_plane}) {
        const auto sub = barycentric_subdivide(manifold_generator(kind));
        const auto& K = sub.complex;
        const auto d2 = boundary_matrix(K, 2);
        for (int trial = 0; trial < 10; ++trial) {
            const Chain p = random_chain(K, 2, rng);
            const Chain target = boundary(K, p);
            const auto fast = solve_top_boundary(K, target);
            const auto dense = gf2::solve(d2, target.support);
            REQUIRE(fast);
            REQUIRE(dense);
            CHECK(boundary(K, *fast) == target);
            CHECK(d2.multiply(*dense) == target.support);
        }
        // The full 1-skeleton of M' is a cycle; whether it bounds depends on orientability.
        const Chain all = full_skeleton_chain(K, 1);
        CHECK(solve_top_boundary(K, all).has_value() == gf2::solve(d2, all.support).has_value());
    }
}

TEST_CASE("mesh text round trip and OFF export") {
    std::istringstream in("# torus\n0 1 3\n\n0 2 3\n1 2 4\n");
    const auto tops = read_mesh(in);
    CHECK(tops.size() == 3);
    CHECK(tops[2] == std::vector<Vertex>{1, 2, 4});

    std::istringstream bad("0 1 x\n");
    CHECK_THROWS_AS((void)read_mesh(bad), InputError);

    const auto K = manifold_generator(ManifoldKind::torus);
    std::ostringstream out;
    write_mesh(out, K);
    std::istringstream back(out.str());
    CHECK(SimplicialComplex::build(read_mesh(back)).top_simplices() == K.top_simplices());

    std::ostringstream off;
    write_off(off, K);
    CHECK(off.str().rfind("OFF\n7 14 0\n", 0) == 0);
}
