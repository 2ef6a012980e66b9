#include "degbound/bipartition.hpp"
#include "degbound/manifolds.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

using namespace degbound;

namespace {

struct Named {
    const char* name;
    ManifoldKind kind;
    std::size_t genus;
};

const Named surfaces[] = {
    {"sphere", ManifoldKind::sphere, 1},
    {"torus", ManifoldKind::torus, 1},
    {"genus2", ManifoldKind::genus_surface, 2},
    {"klein", ManifoldKind::klein_bottle, 1},
    {"rp2", ManifoldKind::projective_plane, 1},
};

SimplicialComplex make(const Named& m) {
    ManifoldParams p;
    p.genus = m.genus;
    return manifold_generator(m.kind, p);
}

oracle::Dense to_dense(const gf2::BitMatrix& m) {
    oracle::Dense out(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c) ? 1 : 0;
    return out;
}

// N lies in the column space of the top boundary matrix (rank test on an int matrix).
bool null_homologous_dense(const SimplicialComplex& K, const Chain& N) {
    auto m = to_dense(boundary_matrix(K, K.dimension()));
    const std::size_t r0 = oracle::rank_mod2(m);
    for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(N.support.get(r) ? 1 : 0);
    return oracle::rank_mod2(m) == r0;
}

std::vector<Vertex> shared_vertices(std::span<const Vertex> a, std::span<const Vertex> b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

TEST_CASE("defect chain is a null-homologous cycle") {
    for (const auto& m : surfaces) {
        CAPTURE(m.name);
        const auto M = make(m);
        const auto s1 = barycentric_subdivide(M);
        const auto s2 = barycentric_subdivide(s1.complex);
        const Chain N = defect_chain(s1.complex, s2);
        CHECK(boundary(s2.complex, N).support.none());
        CHECK(null_homologous_dense(s2.complex, N));
        const Chain image = push_chain(s2.map, full_skeleton_chain(s1.complex, 1));
        CHECK(N.weight() == s2.complex.count(1) - image.weight());
        CHECK(image.weight() == 2 * s1.complex.count(1));
    }
}

TEST_CASE("defect chain weight on one subdivided triangle") {
    const auto tri = SimplicialComplex::build({{0, 1, 2}}, {.require_closed_manifold = false});
    const auto s1 = barycentric_subdivide(tri);
    const auto s2 = barycentric_subdivide(s1.complex);
    // 60 edges in the second subdivision, 12 first-level edges cut in two.
    CHECK(s2.complex.count(1) == 60);
    CHECK(defect_chain(s1.complex, s2).weight() == 60 - 24);
}

TEST_CASE("partner matching on the subdivided triangle") {
    const auto tri = SimplicialComplex::build({{0, 1, 2}}, {.require_closed_manifold = false});
    const auto sub = barycentric_subdivide(tri);
    const auto& K = sub.complex;
    // Edges joining an original corner to the centre: flags that differ only
    // in their middle edge share exactly such a face.
    std::vector<std::size_t> spokes;
    for (std::size_t e = 0; e < K.count(1); ++e) {
        const auto vs = K.simplex(1, e);
        const auto o0 = sub.map.vertex_origin[vs[0]];
        const auto o1 = sub.map.vertex_origin[vs[1]];
        if (std::min(o0.dim, o1.dim) == 0 && std::max(o0.dim, o1.dim) == 2) spokes.push_back(e);
    }
    REQUIRE(spokes.size() == 3);
    const auto partner = partner_matching(K, chain_from_indices(K, 1, spokes));
    REQUIRE(partner.size() == 6);
    std::size_t pairs = 0;
    for (std::size_t s = 0; s < 6; ++s) {
        CHECK(partner[s] != s);
        CHECK(partner[partner[s]] == s);
        pairs += s < partner[s] ? 1 : 0;
        // Brute force: partners are the two flags through the same corner.
        const auto a = K.simplex(2, s);
        const auto b = K.simplex(2, partner[s]);
        const auto common = shared_vertices(a, b);
        REQUIRE(common.size() == 2);
        CHECK(sub.map.vertex_origin[common[0]].dim == 0);
        CHECK(sub.map.vertex_origin[common[1]].dim == 2);
    }
    CHECK(pairs == 3);

    CHECK_THROWS_AS((void)partner_matching(K, zero_chain(K, 1)), ValidationError);
    // Boundary edges have no partner across them.
    const auto outer = push_chain(sub.map, full_skeleton_chain(tri, 1));
    CHECK_THROWS_AS((void)partner_matching(K, outer), ValidationError);
}

TEST_CASE("general cellulation on every surface") {
    for (const auto& m : surfaces) {
        CAPTURE(m.name);
        const auto g = general_cellulation(make(m));
        const Cellulation& c = g.cellulation;
        const SimplicialComplex& K = *c.base;
        CHECK(g.stats.boundary_verified);
        CHECK(g.stats.matching_involution);
        CHECK(boundary(K, *c.P) == *c.N);
        CHECK(c.cells.size() * 2 == K.count(2));
        CHECK(c.count(Color::red) + c.count(Color::blue) == c.cells.size());
        for (const Cell& cell : c.cells) {
            REQUIRE(cell.simplices.size() == 2);
            CHECK(c.P->support.get(cell.simplices[0]) == c.P->support.get(cell.simplices[1]));
            CHECK((cell.color == Color::red) == c.P->support.get(cell.simplices[0]));
            const auto common = shared_vertices(K.simplex(2, cell.simplices[0]), K.simplex(2, cell.simplices[1]));
            CHECK(common.size() == 2);
        }
        // No two cells of one colour meet along an edge.
        std::size_t bad = 0;
        for (std::size_t f = 0; f < K.count(1); ++f) {
            const auto cof = K.cofaces(1, f);
            const std::size_t a = c.cell_of_simplex[cof[0]];
            const std::size_t b = c.cell_of_simplex[cof[1]];
            if (a != b && c.cells[a].color == c.cells[b].color) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("general cellulation of the 3-torus") {
    const auto g = general_cellulation(manifold_generator(ManifoldKind::torus3));
    CHECK(g.stats.counts_m.back() == 162);
    CHECK(g.stats.counts_m2.back() == 162 * 24 * 24);
    CHECK(g.stats.boundary_verified);
    CHECK(g.stats.matching_involution);
    const auto lay = layout_from_complex(*g.cellulation.base, 0, 1u << 20);
    const auto rep = verify_cellulation(g.cellulation, lay, 2.0, 2.0);
    CHECK(rep.passed());
}

TEST_CASE("orientable shortcut") {
    for (const auto& m : surfaces) {
        CAPTURE(m.name);
        const auto M = make(m);
        const auto m1 = barycentric_subdivide(M).complex;
        const bool orientable = m.kind == ManifoldKind::sphere || m.kind == ManifoldKind::torus ||
                                m.kind == ManifoldKind::genus_surface;
        CHECK(null_homologous_dense(m1, full_skeleton_chain(m1, 1)) == orientable);
        if (orientable) {
            const auto c = two_color_orientable(m1);
            CHECK(boundary(m1, *c.P) == full_skeleton_chain(m1, 1));
            const auto lay = layout_from_complex(*c.base, 0, 1u << 20);
            const auto rep = verify_cellulation(c, lay, 1.0, 2.0);
            CHECK(rep.cells_ok);
            CHECK(rep.coloring_ok);
            CHECK(rep.boundary_ok);
        } else {
            CHECK_THROWS_AS((void)two_color_orientable(m1), ValidationError);
        }
    }
}

TEST_CASE("two_color rejects a defect chain that is not a boundary") {
    const auto M = manifold_generator(ManifoldKind::torus);
    const auto s1 = barycentric_subdivide(M);
    const auto s2 = barycentric_subdivide(s1.complex);
    const Chain image = push_chain(s2.map, full_skeleton_chain(s1.complex, 1));
    const auto matching = partner_matching(s2.complex, image);
    Chain N = defect_chain(s1.complex, s2);
    N.support.flip(0);
    try {
        (void)two_color(s2.complex, N, matching);
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()) == "defect chain not null-homologous");
    }
}

TEST_CASE("verify_cellulation on refined general cellulations") {
    for (const auto& m : surfaces) {
        CAPTURE(m.name);
        const auto g = general_cellulation(make(m));
        const auto lay = layout_from_complex(*g.cellulation.base, 3, 1u << 20);
        const auto rep = verify_cellulation(g.cellulation, lay, 2.0, 2.0);
        CHECK(rep.passed());
        // One surviving component per cell at this refinement.
        CHECK(rep.red_components == g.cellulation.count(Color::red));
        CHECK(rep.blue_components == g.cellulation.count(Color::blue));
        CHECK(rep.c_size < lay.size());
    }
}

TEST_CASE("checkerboard construction") {
    const auto c2 = torus_checkerboard(2, 2);
    CHECK(c2.cells.size() == 4);
    CHECK(c2.count(Color::red) == 2);
    CHECK(c2.count(Color::blue) == 2);
    const auto c3 = torus_checkerboard(3, 2);
    CHECK(c3.cells.size() == 8);
    CHECK(c3.count(Color::red) == 4);
    CHECK_THROWS_AS((void)torus_checkerboard(2, 3), InputError);
    CHECK_THROWS_AS((void)torus_checkerboard(2, 0), InputError);

    // d = 2: the skeleton is the 4 block corners, each touched by 4 edges.
    const auto lay = torus_lattice_layout(2, 8, SitePlacement::edges);
    const auto qc = assign_qudits(c2, lay);
    CHECK(qc.skeleton.size() == 16);
    const auto rep = verify_cellulation(c2, lay, 2.0, 2.0);
    CHECK(rep.passed());
    CHECK(rep.red_components == 2);
    CHECK(rep.blue_components == 2);
}

TEST_CASE("corrupted colourings are caught") {
    auto c = torus_checkerboard(2, 2);
    c.cells[0].color = Color::blue;
    const auto lay = torus_lattice_layout(2, 8, SitePlacement::edges);
    const auto rep = verify_cellulation(c, lay, 2.0, 2.0);
    CHECK_FALSE(rep.coloring_ok);
    REQUIRE_FALSE(rep.problems.empty());
    CHECK(rep.problems.front().find("share a face") != std::string::npos);
    CHECK_THROWS_AS((void)abc_partition(c, lay, 2.0), ContractError);

    auto g = general_cellulation(manifold_generator(ManifoldKind::projective_plane));
    auto& cells = g.cellulation.cells;
    cells[0].color = cells[0].color == Color::red ? Color::blue : Color::red;
    const auto mlay = layout_from_complex(*g.cellulation.base, 0, 1u << 20);
    const auto mrep = verify_cellulation(g.cellulation, mlay, 2.0, 2.0);
    CHECK_FALSE(mrep.coloring_ok);
    REQUIRE_FALSE(mrep.problems.empty());
    CHECK(mrep.problems.front().find("is shared by") != std::string::npos);
}

TEST_CASE("abc partition and |C| scaling") {
    const auto c2 = torus_checkerboard(2, 2);
    std::vector<std::size_t> sizes2;
    for (std::size_t L : {8, 16}) {
        const auto lay = torus_lattice_layout(2, L, SitePlacement::edges);
        const auto p = abc_partition(c2, lay, 2.0);
        CHECK(set_intersection(p.A, p.B).empty());
        CHECK(set_intersection(p.A, p.C).empty());
        CHECK(set_union(set_union(p.A, p.B), p.C) == lay.all());
        sizes2.push_back(p.C.size());
    }
    CHECK(sizes2[0] == sizes2[1]);

    const auto c3 = torus_checkerboard(3, 2);
    std::vector<std::size_t> sizes3;
    std::vector<double> ratio;
    for (std::size_t L : {4, 6, 8}) {
        const auto lay = torus_lattice_layout(3, L, SitePlacement::edges);
        const auto p = abc_partition(c3, lay, 1.0);
        CHECK(set_union(set_union(p.A, p.B), p.C) == lay.all());
        sizes3.push_back(p.C.size());
        const auto thin = assign_qudits(c3, lay).near_skeleton(0.5);
        ratio.push_back(static_cast<double>(thin.size()) / static_cast<double>(L));
    }
    // Equal increments: |C| is affine in L, the skeleton being 12 lines of length L.
    CHECK(sizes3[1] - sizes3[0] == sizes3[2] - sizes3[1]);
    CHECK(sizes3[2] > sizes3[1]);
    CHECK(ratio[2] < 2.0 * ratio[0]);
    CHECK(ratio[0] < 2.0 * ratio[2]);
}

TEST_CASE("cellulation OFF export") {
    const auto g = general_cellulation(manifold_generator(ManifoldKind::sphere));
    std::ostringstream out;
    write_cellulation_off(out, g.cellulation);
    const std::string text = out.str();
    CHECK(text.rfind("OFF\n", 0) == 0);
    std::istringstream in(text.substr(4));
    std::size_t nv = 0, nf = 0;
    in >> nv >> nf;
    CHECK(nv == g.cellulation.base->count(0));
    CHECK(nf == g.cellulation.base->count(2));
    CHECK_THROWS_AS(write_cellulation_off(out, torus_checkerboard(2, 2)), InputError);
}
