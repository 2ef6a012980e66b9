#include "degbound/stabilizer.hpp"

#include "degbound/manifolds.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace degbound {

// ---------------------------------------------------------------- PauliOp

PauliOp::PauliOp(gf2::BitVector x_part, gf2::BitVector z_part) : x(std::move(x_part)), z(std::move(z_part)) {
    if (x.size() != z.size()) throw InputError("Pauli x and z parts differ in length");
}

PauliOp PauliOp::from_string(std::string_view s) {
    PauliOp p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I': break;
            case 'X': p.x.set(i); break;
            case 'Z': p.z.set(i); break;
            case 'Y':
                p.x.set(i);
                p.z.set(i);
                break;
            default: throw InputError(std::string("invalid Pauli letter '") + s[i] + "'");
        }
    }
    return p;
}

PauliOp PauliOp::x_on(std::size_t n, const std::vector<std::size_t>& qubits) {
    PauliOp p(n);
    for (std::size_t q : qubits) p.x.flip(q);
    return p;
}

PauliOp PauliOp::z_on(std::size_t n, const std::vector<std::size_t>& qubits) {
    PauliOp p(n);
    for (std::size_t q : qubits) p.z.flip(q);
    return p;
}

std::string PauliOp::to_string() const {
    std::string out(size(), 'I');
    for (std::size_t i = 0; i < size(); ++i) {
        const bool xi = x.get(i);
        const bool zi = z.get(i);
        if (xi && zi) {
            out[i] = 'Y';
        } else if (xi) {
            out[i] = 'X';
        } else if (zi) {
            out[i] = 'Z';
        }
    }
    return out;
}

std::size_t PauliOp::weight() const { return (x | z).count(); }

std::vector<std::size_t> PauliOp::support() const { return (x | z).ones(); }

bool PauliOp::anticommutes(const PauliOp& other) const {
    if (other.size() != size()) throw InputError("Pauli operators act on different numbers of qubits");
    return x.dot(other.z) != z.dot(other.x);
}

PauliOp& PauliOp::operator*=(const PauliOp& other) {
    x ^= other.x;
    z ^= other.z;
    return *this;
}

gf2::BitVector PauliOp::symplectic() const {
    const std::size_t n = size();
    gf2::BitVector v(2 * n);
    for (std::size_t i : x.ones()) v.set(i);
    for (std::size_t i : z.ones()) v.set(n + i);
    return v;
}

// ---------------------------------------------------------------- codes

gf2::BitMatrix StabilizerCode::matrix() const {
    gf2::BitMatrix m(0, 2 * n_);
    for (const auto& g : gens_) m.append_row(g.symplectic());
    return m;
}

std::size_t StabilizerCode::rank() const { return gf2::rank(matrix()); }

StabilizerCode build_code(std::size_t n, std::vector<PauliOp> gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].size() != n) {
            throw InputError("generator " + std::to_string(i) + " acts on " + std::to_string(gens[i].size()) +
                             " qubits, expected " + std::to_string(n));
        }
    }
    // Only generators sharing a qubit can anticommute.
    std::vector<std::vector<std::size_t>> on_qubit(n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t q : gens[i].support()) on_qubit[q].push_back(i);
    }
    std::vector<std::size_t> last_checked(gens.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t q : gens[i].support()) {
            for (std::size_t j : on_qubit[q]) {
                if (j <= i || last_checked[j] == i) continue;
                last_checked[j] = i;
                if (gens[i].anticommutes(gens[j])) {
                    throw ValidationError("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                          " anticommute (" + gens[i].to_string() + ", " + gens[j].to_string() + ")");
                }
            }
        }
    }
    StabilizerCode code;
    code.n_ = n;
    code.gens_ = std::move(gens);
    return code;
}

std::size_t degeneracy(const StabilizerCode& code) { return code.size() - code.rank(); }

std::vector<PauliOp> logical_generators(const StabilizerCode& code) {
    const std::size_t n = code.size();
    // Normalizer: v with s.Lambda.v = 0 for every generator s, i.e. rows (z | x).
    gf2::BitMatrix twisted(0, 2 * n);
    for (const auto& g : code.generators()) {
        gf2::BitVector row(2 * n);
        for (std::size_t i : g.z.ones()) row.set(i);
        for (std::size_t i : g.x.ones()) row.set(n + i);
        twisted.append_row(row);
    }
    std::vector<PauliOp> pool;
    for (const auto& v : gf2::nullspace(twisted)) {
        PauliOp p(n);
        for (std::size_t i : v.ones()) (i < n ? p.x : p.z).set(i % n);
        pool.push_back(std::move(p));
    }

    // Symplectic Gram-Schmidt: vectors left without a partner span the stabilizer group.
    std::vector<PauliOp> out;
    std::vector<char> used(pool.size(), 0);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        std::size_t j = i + 1;
        while (j < pool.size() && (used[j] || pool[i].commutes(pool[j]))) ++j;
        if (j == pool.size()) continue;
        used[j] = 1;
        const PauliOp u = pool[i];
        const PauliOp w = pool[j];
        for (std::size_t k = i + 1; k < pool.size(); ++k) {
            if (used[k]) continue;
            const bool with_w = pool[k].anticommutes(w);
            const bool with_u = pool[k].anticommutes(u);
            if (with_w) pool[k] *= u;
            if (with_u) pool[k] *= w;
        }
        out.push_back(u);
        out.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------- constructions

namespace {

struct Cubic {
    std::size_t L;
    [[nodiscard]] std::size_t vertex(long long x, long long y, long long z) const {
        const auto l = static_cast<long long>(L);
        auto wrap = [l](long long v) { return static_cast<std::size_t>(((v % l) + l) % l); };
        return wrap(x) + L * (wrap(y) + L * wrap(z));
    }
    [[nodiscard]] std::size_t edge(long long x, long long y, long long z, std::size_t axis) const {
        return vertex(x, y, z) * 3 + axis;
    }
};

std::array<long long, 3> unit(std::size_t axis) {
    std::array<long long, 3> u{0, 0, 0};
    u[axis] = 1;
    return u;
}

}  // namespace

BoundCode toric_code(std::size_t dim, std::size_t L) {
    if (dim != 2 && dim != 3) throw InputError("toric code needs dim 2 or 3");
    if (L < 2) throw InputError("toric code needs L >= 2");
    QuditLayout layout = torus_lattice_layout(dim, L, SitePlacement::edges);
    const std::size_t n = layout.size();
    std::size_t vertices = 1;
    for (std::size_t k = 0; k < dim; ++k) vertices *= L;

    auto shift = [&](std::size_t v, std::size_t axis, long long step) {
        std::size_t stride = 1;
        for (std::size_t k = 0; k < axis; ++k) stride *= L;
        const std::size_t coord = (v / stride) % L;
        const auto moved = static_cast<std::size_t>(static_cast<long long>(coord + L) + step) % L;
        return v - coord * stride + moved * stride;
    };

    std::vector<PauliOp> gens;
    for (std::size_t v = 0; v < vertices; ++v) {
        std::vector<std::size_t> star;
        for (std::size_t a = 0; a < dim; ++a) {
            star.push_back(v * dim + a);
            star.push_back(shift(v, a, -1) * dim + a);
        }
        gens.push_back(PauliOp::x_on(n, star));
    }
    for (std::size_t v = 0; v < vertices; ++v) {
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = a + 1; b < dim; ++b) {
                gens.push_back(PauliOp::z_on(
                    n, {v * dim + a, v * dim + b, shift(v, a, 1) * dim + b, shift(v, b, 1) * dim + a}));
            }
        }
    }
    return {build_code(n, std::move(gens)), std::move(layout)};
}

BoundCode surface_code_on_complex(const SimplicialComplex& K, std::size_t refine, std::size_t density_cap) {
    if (K.dimension() != 2) throw InputError("surface code needs a 2-dimensional complex");
    QuditLayout layout = layout_from_complex(K, refine, density_cap);
    SimplicialComplex current = K;
    for (std::size_t level = 0; level < refine; ++level) current = barycentric_subdivide(current).complex;
    const std::size_t n = current.count(1);
    std::vector<PauliOp> gens;
    for (std::size_t v = 0; v < current.count(0); ++v) {
        const auto star = current.cofaces(0, v);
        gens.push_back(PauliOp::x_on(n, {star.begin(), star.end()}));
    }
    for (std::size_t t = 0; t < current.count(2); ++t) {
        const auto edges = current.facets(2, t);
        gens.push_back(PauliOp::z_on(n, {edges.begin(), edges.end()}));
    }
    return {build_code(n, std::move(gens)), std::move(layout)};
}

FractonModel parse_fracton_model(std::string_view name) {
    if (name == "cubic1") return FractonModel::cubic1;
    if (name == "xcube") return FractonModel::xcube;
    if (name == "checkerboard_model" || name == "checkerboard") return FractonModel::checkerboard_model;
    throw InputError("unknown fracton model '" + std::string(name) + "'");
}

BoundCode fracton_code(FractonModel model, std::size_t L) {
    if (L < 2) throw InputError("fracton codes need L >= 2");
    const Cubic lat{L};
    const auto l = static_cast<long long>(L);
    std::vector<PauliOp> gens;

    switch (model) {
        case FractonModel::xcube: {
            QuditLayout layout = torus_lattice_layout(3, L, SitePlacement::edges);
            const std::size_t n = layout.size();
            for (long long z = 0; z < l; ++z) {
                for (long long y = 0; y < l; ++y) {
                    for (long long x = 0; x < l; ++x) {
                        for (std::size_t a = 0; a < 3; ++a) {
                            for (std::size_t b = a + 1; b < 3; ++b) {
                                const auto ua = unit(a);
                                const auto ub = unit(b);
                                gens.push_back(PauliOp::z_on(
                                    n, {lat.edge(x, y, z, a), lat.edge(x - ua[0], y - ua[1], z - ua[2], a),
                                        lat.edge(x, y, z, b), lat.edge(x - ub[0], y - ub[1], z - ub[2], b)}));
                            }
                        }
                    }
                }
            }
            for (long long z = 0; z < l; ++z) {
                for (long long y = 0; y < l; ++y) {
                    for (long long x = 0; x < l; ++x) {
                        std::vector<std::size_t> cube;
                        for (std::size_t a = 0; a < 3; ++a) {
                            const std::size_t b = (a + 1) % 3;
                            const std::size_t c = (a + 2) % 3;
                            for (int sb = 0; sb < 2; ++sb) {
                                for (int sc = 0; sc < 2; ++sc) {
                                    std::array<long long, 3> p{x, y, z};
                                    p[b] += sb;
                                    p[c] += sc;
                                    cube.push_back(lat.edge(p[0], p[1], p[2], a));
                                }
                            }
                        }
                        gens.push_back(PauliOp::x_on(n, cube));
                    }
                }
            }
            return {build_code(n, std::move(gens)), std::move(layout)};
        }
        case FractonModel::checkerboard_model: {
            if (L % 2 != 0) throw InputError("checkerboard model needs even L (got " + std::to_string(L) + ")");
            QuditLayout layout = torus_lattice_layout(3, L, SitePlacement::vertices);
            const std::size_t n = layout.size();
            for (long long z = 0; z < l; ++z) {
                for (long long y = 0; y < l; ++y) {
                    for (long long x = 0; x < l; ++x) {
                        if ((x + y + z) % 2 != 0) continue;
                        std::vector<std::size_t> corners;
                        for (int c = 0; c < 8; ++c) corners.push_back(lat.vertex(x + (c & 1), y + ((c >> 1) & 1), z + (c >> 2)));
                        gens.push_back(PauliOp::x_on(n, corners));
                        gens.push_back(PauliOp::z_on(n, corners));
                    }
                }
            }
            return {build_code(n, std::move(gens)), std::move(layout)};
        }
        case FractonModel::cubic1: {
            QuditLayout layout = torus_lattice_layout(3, L, SitePlacement::vertex_pairs);
            const std::size_t n = layout.size();
            // Offsets of f = 1 + x + y + z and g = 1 + xy + yz + zx.
            const std::array<std::array<long long, 3>, 4> f{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
            const std::array<std::array<long long, 3>, 4> g{{{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}}};
            for (long long z = 0; z < l; ++z) {
                for (long long y = 0; y < l; ++y) {
                    for (long long x = 0; x < l; ++x) {
                        // X-type term: X^f on the first qubit, X^g on the second.
                        std::vector<std::size_t> xs;
                        for (const auto& o : f) xs.push_back(2 * lat.vertex(x + o[0], y + o[1], z + o[2]));
                        for (const auto& o : g) xs.push_back(2 * lat.vertex(x + o[0], y + o[1], z + o[2]) + 1);
                        gens.push_back(PauliOp::x_on(n, xs));
                        // Z-type term: Z^(g reflected) on the first qubit, Z^(f reflected) on the second,
                        // placed on the same cube.
                        std::vector<std::size_t> zs;
                        for (const auto& o : g) zs.push_back(2 * lat.vertex(x + 1 - o[0], y + 1 - o[1], z + 1 - o[2]));
                        for (const auto& o : f) zs.push_back(2 * lat.vertex(x + 1 - o[0], y + 1 - o[1], z + 1 - o[2]) + 1);
                        gens.push_back(PauliOp::z_on(n, zs));
                    }
                }
            }
            return {build_code(n, std::move(gens)), std::move(layout)};
        }
    }
    throw InputError("unknown fracton model");
}

BoundCode stacked_layers(std::size_t L) {
    if (L < 2) throw InputError("stacked layers need L >= 2");
    const auto l = static_cast<long long>(L);
    auto qubit = [&](long long x, long long y, long long z, std::size_t axis) {
        auto wrap = [l](long long v) { return static_cast<std::size_t>(((v % l) + l) % l); };
        return ((wrap(z) * L + wrap(y)) * L + wrap(x)) * 2 + axis;
    };
    std::vector<std::vector<double>> positions;
    for (long long z = 0; z < l; ++z) {
        for (long long y = 0; y < l; ++y) {
            for (long long x = 0; x < l; ++x) {
                positions.push_back({x + 0.5, static_cast<double>(y), static_cast<double>(z)});
                positions.push_back({static_cast<double>(x), y + 0.5, static_cast<double>(z)});
            }
        }
    }
    QuditLayout layout = QuditLayout::flat_torus(3, static_cast<double>(L), std::move(positions));
    const std::size_t n = layout.size();
    std::vector<PauliOp> gens;
    for (long long z = 0; z < l; ++z) {
        for (long long y = 0; y < l; ++y) {
            for (long long x = 0; x < l; ++x) {
                gens.push_back(PauliOp::x_on(
                    n, {qubit(x, y, z, 0), qubit(x - 1, y, z, 0), qubit(x, y, z, 1), qubit(x, y - 1, z, 1)}));
                gens.push_back(PauliOp::z_on(
                    n, {qubit(x, y, z, 0), qubit(x, y, z, 1), qubit(x + 1, y, z, 1), qubit(x, y + 1, z, 0)}));
            }
        }
    }
    return {build_code(n, std::move(gens)), std::move(layout)};
}

// ---------------------------------------------------------------- text form

void write_code(std::ostream& out, const StabilizerCode& code) {
    out << code.size() << ' ' << code.generators().size() << '\n';
    for (const auto& g : code.generators()) out << g.to_string() << '\n';
}

StabilizerCode read_code(std::istream& in) {
    std::size_t n = 0;
    std::size_t m = 0;
    if (!(in >> n >> m)) throw InputError("code text must start with 'n m'");
    std::vector<PauliOp> gens;
    for (std::size_t i = 0; i < m; ++i) {
        std::string line;
        if (!(in >> line)) throw InputError("code text ends after " + std::to_string(i) + " generators");
        if (line.size() != n) throw InputError("generator " + std::to_string(i) + " has the wrong length");
        gens.push_back(PauliOp::from_string(line));
    }
    return build_code(n, std::move(gens));
}

std::size_t family_dimension(std::string_view name) {
    if (name == "toric2" || name == "sphere-surface") return 2;
    if (name == "toric3" || name == "stacked" || name == "xcube" || name == "cubic1" || name == "checkerboard") return 3;
    throw InputError("unknown code family '" + std::string(name) + "'");
}

BoundCode code_family(std::string_view name, std::size_t L) {
    (void)family_dimension(name);
    if (name == "toric2") return toric_code(2, L);
    if (name == "toric3") return toric_code(3, L);
    if (name == "stacked") return stacked_layers(L);
    if (name == "sphere-surface") return surface_code_on_complex(manifold_generator(ManifoldKind::sphere));
    return fracton_code(parse_fracton_model(name), L);
}

}  // namespace degbound
