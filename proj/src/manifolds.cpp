#include "degbound/manifolds.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace degbound {

namespace {

using Tops = std::vector<std::vector<Vertex>>;

Tops sphere_tops(std::size_t dim) {
    if (dim < 1) throw InputError("sphere dimension must be at least 1");
    Tops tops;
    const std::size_t n = dim + 2;
    for (std::size_t skip = 0; skip < n; ++skip) {
        std::vector<Vertex> s;
        for (std::size_t v = 0; v < n; ++v) {
            if (v != skip) s.push_back(static_cast<Vertex>(v));
        }
        tops.push_back(std::move(s));
    }
    return tops;
}

// Möbius' 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
Tops torus7_tops() {
    Tops tops;
    for (Vertex i = 0; i < 7; ++i) {
        tops.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tops.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return tops;
}

bool same_set(std::vector<Vertex> a, std::vector<Vertex> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// Two vertex-disjoint triangles of the 7-vertex torus used as glue sites.
constexpr std::array<Vertex, 3> glue_in = {0, 1, 3};
constexpr std::array<Vertex, 3> glue_out = {2, 4, 5};

Tops genus_tops(std::size_t genus) {
    if (genus < 1) throw InputError("genus_surface needs genus >= 1");
    const Tops torus = torus7_tops();
    if (genus == 1) return torus;

    Tops tops;
    Vertex next_label = 0;
    std::array<Vertex, 3> prev_out{};  // labels of the previous copy's outgoing glue triangle
    for (std::size_t copy = 0; copy < genus; ++copy) {
        std::array<Vertex, 7> label{};
        std::array<bool, 7> assigned{};
        if (copy > 0) {
            for (std::size_t j = 0; j < 3; ++j) {
                label[glue_in[j]] = prev_out[j];
                assigned[glue_in[j]] = true;
            }
        }
        for (Vertex v = 0; v < 7; ++v) {
            if (!assigned[v]) label[v] = next_label++;
        }
        const bool drop_in = copy > 0;
        const bool drop_out = copy + 1 < genus;
        for (const auto& t : torus) {
            if (drop_in && same_set(t, {glue_in.begin(), glue_in.end()})) continue;
            if (drop_out && same_set(t, {glue_out.begin(), glue_out.end()})) continue;
            tops.push_back({label[t[0]], label[t[1]], label[t[2]]});
        }
        for (std::size_t j = 0; j < 3; ++j) prev_out[j] = label[glue_out[j]];
    }
    return tops;
}

// Square grid on Z_m x Z_n where crossing the top edge reflects the first
// coordinate, each square split along the same diagonal.
Tops klein_tops(Vertex m, Vertex n) {
    auto id = [&](long long i, long long j) {
        while (j >= n) {
            j -= n;
            i = -i;
        }
        i = ((i % m) + m) % m;
        return static_cast<Vertex>(i + static_cast<long long>(m) * j);
    };
    Tops tops;
    for (long long j = 0; j < n; ++j) {
        for (long long i = 0; i < m; ++i) {
            tops.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tops.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    }
    return tops;
}

Tops rp2_tops() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
            {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
}

// Kuhn triangulation of the periodic n^3 grid: every unit cube is cut into the
// six monotone lattice paths from its lowest to its highest corner.
Tops torus3_tops(Vertex n) {
    auto id = [n](std::array<Vertex, 3> p) {
        return (p[0] % n) + n * ((p[1] % n) + n * (p[2] % n));
    };
    Tops tops;
    std::array<int, 3> axes{0, 1, 2};
    for (Vertex z = 0; z < n; ++z) {
        for (Vertex y = 0; y < n; ++y) {
            for (Vertex x = 0; x < n; ++x) {
                std::array<int, 3> order = axes;
                do {
                    std::array<Vertex, 3> p{x, y, z};
                    std::vector<Vertex> tet{id(p)};
                    for (int a : order) {
                        ++p[static_cast<std::size_t>(a)];
                        tet.push_back(id(p));
                    }
                    tops.push_back(std::move(tet));
                } while (std::next_permutation(order.begin(), order.end()));
            }
        }
    }
    return tops;
}

}  // namespace

SimplicialComplex manifold_generator(ManifoldKind kind, const ManifoldParams& params) {
    switch (kind) {
        case ManifoldKind::sphere: return SimplicialComplex::build(sphere_tops(params.dim));
        case ManifoldKind::torus: return SimplicialComplex::build(torus7_tops());
        case ManifoldKind::torus3: return SimplicialComplex::build(torus3_tops(3));
        case ManifoldKind::genus_surface: return SimplicialComplex::build(genus_tops(params.genus));
        case ManifoldKind::klein_bottle: return SimplicialComplex::build(klein_tops(4, 4));
        case ManifoldKind::projective_plane: return SimplicialComplex::build(rp2_tops());
    }
    throw InputError("unknown manifold kind");
}

ManifoldKind parse_manifold_kind(std::string_view name) {
    static const std::map<std::string_view, ManifoldKind> names = {
        {"sphere", ManifoldKind::sphere},
        {"torus", ManifoldKind::torus},
        {"torus3", ManifoldKind::torus3},
        {"genus_surface", ManifoldKind::genus_surface},
        {"klein_bottle", ManifoldKind::klein_bottle},
        {"projective_plane", ManifoldKind::projective_plane},
    };
    const auto it = names.find(name);
    if (it == names.end()) throw InputError("unknown manifold '" + std::string(name) + "'");
    return it->second;
}

std::string_view manifold_name(ManifoldKind kind) {
    switch (kind) {
        case ManifoldKind::sphere: return "sphere";
        case ManifoldKind::torus: return "torus";
        case ManifoldKind::torus3: return "torus3";
        case ManifoldKind::genus_surface: return "genus_surface";
        case ManifoldKind::klein_bottle: return "klein_bottle";
        case ManifoldKind::projective_plane: return "projective_plane";
    }
    return "unknown";
}

}  // namespace degbound
