#include "degbound/bipartition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace degbound {

namespace {

constexpr std::size_t npos = Cell::npos;

std::string color_name(Color c) { return c == Color::red ? "red" : "blue"; }

std::string vertex_list(std::span<const Vertex> vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(vs[i]);
    }
    return out + "}";
}

std::string block_name(const std::vector<std::size_t>& block) {
    std::string out = "(";
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(block[i]);
    }
    return out + ")";
}

std::size_t block_index(const std::vector<std::size_t>& block, std::size_t blocks) {
    std::size_t id = 0;
    for (std::size_t k = block.size(); k-- > 0;) id = id * blocks + block[k];
    return id;
}

const SimplicialComplex& require_base(const Cellulation& c) {
    if (!c.base) throw InputError("cellulation has no base complex");
    return *c.base;
}

// Union-find over qudit ids.
struct Components {
    std::vector<std::size_t> parent;
    explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void check_simplicial_cells(const Cellulation& c, CellulationReport& report) {
    const SimplicialComplex& K = require_base(c);
    const std::size_t d = c.dim;
    std::vector<std::size_t> seen(K.count(d), npos);
    for (std::size_t ci = 0; ci < c.cells.size(); ++ci) {
        const Cell& cell = c.cells[ci];
        for (std::size_t s : cell.simplices) {
            if (s >= K.count(d) || seen[s] != npos) {
                report.cells_ok = false;
                report.problems.push_back("top simplex " + std::to_string(s) + " is not covered exactly once");
                continue;
            }
            seen[s] = ci;
        }
        if (cell.kind == CellKind::simplex) {
            if (cell.simplices.size() != 1) {
                report.cells_ok = false;
                report.problems.push_back("cell " + std::to_string(ci) + " should hold one simplex");
            }
        } else if (cell.kind == CellKind::simplex_pair) {
            bool ok = cell.simplices.size() == 2;
            if (ok) {
                const auto f0 = K.facets(d, cell.simplices[0]);
                const auto f1 = K.facets(d, cell.simplices[1]);
                std::size_t shared = 0;
                for (auto a : f0) shared += static_cast<std::size_t>(std::count(f1.begin(), f1.end(), a));
                ok = shared == 1 && std::find(f0.begin(), f0.end(), cell.shared_face) != f0.end() &&
                     std::find(f1.begin(), f1.end(), cell.shared_face) != f1.end();
            }
            if (!ok) {
                report.cells_ok = false;
                report.problems.push_back("cell " + std::to_string(ci) +
                                          " is not two top simplices glued along one face");
            }
        } else {
            report.cells_ok = false;
            report.problems.push_back("cube cell " + std::to_string(ci) + " in a simplicial cellulation");
        }
    }
    for (std::size_t s = 0; s < seen.size(); ++s) {
        if (seen[s] == npos || c.cell_of_simplex.size() != seen.size() || c.cell_of_simplex[s] != seen[s]) {
            report.cells_ok = false;
            report.problems.push_back("top simplex " + std::to_string(s) + " has an inconsistent cell");
            break;
        }
    }

    if (!report.cells_ok) return;
    for (std::size_t f = 0; f < K.count(d - 1); ++f) {
        const auto cof = K.cofaces(d - 1, f);
        if (cof.size() != 2) continue;
        const std::size_t a = c.cell_of_simplex[cof[0]];
        const std::size_t b = c.cell_of_simplex[cof[1]];
        if (a != b && c.cells[a].color == c.cells[b].color) {
            report.coloring_ok = false;
            report.problems.push_back("face " + std::to_string(f) + " " + vertex_list(K.simplex(d - 1, f)) +
                                      " is shared by " + color_name(c.cells[a].color) + " cells " +
                                      std::to_string(std::min(a, b)) + " and " + std::to_string(std::max(a, b)));
        }
    }

    if (c.P && c.N) {
        if (!(boundary(K, *c.P) == *c.N)) {
            report.boundary_ok = false;
            report.problems.push_back("boundary(P) differs from N");
        }
    }
}

void check_cubical_cells(const Cellulation& c, CellulationReport& report) {
    const std::size_t b = c.blocks;
    std::size_t expected = 1;
    for (std::size_t k = 0; k < c.dim; ++k) expected *= b;
    if (c.cells.size() != expected) {
        report.cells_ok = false;
        report.problems.push_back("checkerboard has " + std::to_string(c.cells.size()) + " cells, expected " +
                                  std::to_string(expected));
        return;
    }
    for (std::size_t ci = 0; ci < c.cells.size(); ++ci) {
        const Cell& cell = c.cells[ci];
        bool ok = cell.kind == CellKind::cube && cell.block.size() == c.dim;
        for (std::size_t x : cell.block) ok = ok && x < b;
        if (!ok || block_index(cell.block, b) != ci) {
            report.cells_ok = false;
            report.problems.push_back("cube cell " + std::to_string(ci) + " has invalid block coordinates");
        }
    }
    if (!report.cells_ok) return;
    for (std::size_t ci = 0; ci < c.cells.size(); ++ci) {
        for (std::size_t axis = 0; axis < c.dim; ++axis) {
            auto next = c.cells[ci].block;
            next[axis] = (next[axis] + 1) % b;
            const std::size_t cj = block_index(next, b);
            if (cj != ci && c.cells[ci].color == c.cells[cj].color) {
                report.coloring_ok = false;
                report.problems.push_back("cells " + block_name(c.cells[ci].block) + " and " + block_name(next) +
                                          " share a face across axis " + std::to_string(axis) + " and are both " +
                                          color_name(c.cells[ci].color));
            }
        }
    }
}

}  // namespace

std::size_t Cellulation::count(Color c) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [c](const Cell& cell) { return cell.color == c; }));
}

Chain defect_chain(const SimplicialComplex& m1, const Subdivision& sub) {
    const std::size_t d = m1.dimension();
    if (d < 1) throw InputError("defect chain needs dimension >= 1");
    return add(full_skeleton_chain(sub.complex, d - 1), push_chain(sub.map, full_skeleton_chain(m1, d - 1)));
}

std::vector<std::size_t> partner_matching(const SimplicialComplex& m2, const Chain& delta_image) {
    const std::size_t d = m2.dimension();
    if (delta_image.complex_uid != m2.uid() || delta_image.degree + 1 != d) {
        throw InputError("partner matching needs a (d-1)-chain of the same complex");
    }
    std::vector<std::size_t> partner(m2.count(d), npos);
    for (std::size_t s = 0; s < partner.size(); ++s) {
        std::size_t face = npos;
        std::size_t hits = 0;
        for (auto f : m2.facets(d, s)) {
            if (delta_image.support.get(f)) {
                face = f;
                ++hits;
            }
        }
        if (hits != 1) {
            throw ValidationError("top simplex " + std::to_string(s) + " " + vertex_list(m2.simplex(d, s)) + " has " +
                                  std::to_string(hits) + " faces in the chain (expected 1)");
        }
        const auto cof = m2.cofaces(d - 1, face);
        if (cof.size() != 2) throw ValidationError("face " + std::to_string(face) + " does not have two cofaces");
        partner[s] = cof[0] == s ? cof[1] : cof[0];
    }
    for (std::size_t s = 0; s < partner.size(); ++s) {
        if (partner[partner[s]] != s) {
            throw ValidationError("partner relation is not an involution at top simplex " + std::to_string(s));
        }
    }
    return partner;
}

Cellulation two_color(const SimplicialComplex& m2, const Chain& N, const std::vector<std::size_t>& matching) {
    const std::size_t d = m2.dimension();
    if (matching.size() != m2.count(d)) throw InputError("matching size differs from the top simplex count");
    const auto P = solve_top_boundary(m2, N);
    if (!P) throw ValidationError("defect chain not null-homologous");
    if (!(boundary(m2, *P) == N)) throw ValidationError("boundary(P) differs from N");

    Cellulation c;
    c.dim = d;
    c.base = m2;
    c.cell_of_simplex.assign(m2.count(d), npos);
    std::size_t split = 0;
    for (std::size_t s = 0; s < matching.size(); ++s) {
        const std::size_t t = matching[s];
        if (P->support.get(s) != P->support.get(t)) ++split;
        if (s > t) continue;
        Cell cell;
        cell.kind = CellKind::simplex_pair;
        cell.color = P->support.get(s) ? Color::red : Color::blue;
        cell.simplices = {s, t};
        for (auto f : m2.facets(d, s)) {
            const auto ft = m2.facets(d, t);
            if (std::find(ft.begin(), ft.end(), f) != ft.end()) cell.shared_face = f;
        }
        c.cell_of_simplex[s] = c.cell_of_simplex[t] = c.cells.size();
        c.cells.push_back(std::move(cell));
    }
    if (split > 0) {
        throw ValidationError("P splits " + std::to_string(split / 2) + " matched pairs");
    }
    c.P = *P;
    c.N = N;
    return c;
}

Cellulation two_color_orientable(const SimplicialComplex& m1) {
    const std::size_t d = m1.dimension();
    const Chain target = full_skeleton_chain(m1, d - 1);
    const auto P = solve_top_boundary(m1, target);
    if (!P) throw ValidationError("sum of (d-1)-simplices is not null-homologous (non-orientable input)");
    Cellulation c;
    c.dim = d;
    c.base = m1;
    c.cell_of_simplex.resize(m1.count(d));
    for (std::size_t s = 0; s < m1.count(d); ++s) {
        Cell cell;
        cell.kind = CellKind::simplex;
        cell.color = P->support.get(s) ? Color::red : Color::blue;
        cell.simplices = {s};
        c.cell_of_simplex[s] = s;
        c.cells.push_back(std::move(cell));
    }
    c.P = *P;
    c.N = target;
    return c;
}

GeneralCellulation general_cellulation(const SimplicialComplex& m) {
    const std::size_t d = m.dimension();
    if (d < 1) throw InputError("cellulation needs dimension >= 1");
    if (!m.is_closed_manifold()) throw ValidationError("cellulation needs a closed manifold");
    const Subdivision first = barycentric_subdivide(m);
    const Subdivision second = barycentric_subdivide(first.complex);
    const SimplicialComplex& m2 = second.complex;

    const Chain delta_image = push_chain(second.map, full_skeleton_chain(first.complex, d - 1));
    const Chain N = defect_chain(first.complex, second);
    const auto matching = partner_matching(m2, delta_image);

    GeneralCellulation out{two_color(m2, N, matching), {}};
    PipelineStats& st = out.stats;
    st.counts_m = m.counts();
    st.counts_m1 = first.complex.counts();
    st.counts_m2 = m2.counts();
    st.delta_weight = delta_image.weight();
    st.defect_weight = N.weight();
    st.p_weight = out.cellulation.P->weight();
    st.boundary_verified = boundary(m2, *out.cellulation.P) == N;
    st.matching_involution = true;
    for (std::size_t s = 0; s < matching.size(); ++s) {
        st.matching_involution = st.matching_involution && matching[matching[s]] == s && matching[s] != s;
    }
    return out;
}

Cellulation torus_checkerboard(std::size_t dim, std::size_t blocks) {
    if (dim < 2) throw InputError("checkerboard needs d >= 2");
    if (blocks == 0 || blocks % 2 != 0) {
        throw InputError("checkerboard needs an even number of blocks per axis (got " + std::to_string(blocks) + ")");
    }
    Cellulation c;
    c.dim = dim;
    c.blocks = blocks;
    std::size_t total = 1;
    for (std::size_t k = 0; k < dim; ++k) total *= blocks;
    for (std::size_t id = 0; id < total; ++id) {
        Cell cell;
        cell.kind = CellKind::cube;
        std::size_t rest = id;
        std::size_t parity = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            cell.block.push_back(rest % blocks);
            parity += rest % blocks;
            rest /= blocks;
        }
        cell.color = parity % 2 == 0 ? Color::red : Color::blue;
        c.cells.push_back(std::move(cell));
    }
    return c;
}

QuditSet QuditCells::near_skeleton(double r) const {
    QuditSet out;
    for (std::size_t q = 0; q < skeleton_distance.size(); ++q) {
        if (skeleton_distance[q] <= r + 1e-9) out.push_back(q);
    }
    return out;
}

QuditCells assign_qudits(const Cellulation& c, const QuditLayout& layout) {
    QuditCells out;
    out.cell.assign(layout.size(), npos);
    out.skeleton_distance.assign(layout.size(), 0.0);

    if (c.is_cubical()) {
        if (layout.kind() != QuditLayout::Kind::flat_torus || layout.dimension() != c.dim) {
            throw InputError("a checkerboard needs a flat-torus layout of the same dimension");
        }
        const double side = layout.diameter() / static_cast<double>(c.blocks);
        for (std::size_t q = 0; q < layout.size(); ++q) {
            const auto& p = layout.position(q);
            std::vector<std::size_t> block(c.dim);
            std::vector<double> gap(c.dim);
            for (std::size_t k = 0; k < c.dim; ++k) {
                const double t = p[k] / side;
                const double nearest = std::round(t);
                gap[k] = std::fabs(t - nearest) * side;
                const auto raw = static_cast<long long>(std::floor(t + 1e-9));
                const auto b = static_cast<long long>(c.blocks);
                block[k] = static_cast<std::size_t>(((raw % b) + b) % b);
            }
            std::sort(gap.begin(), gap.end());
            const double to_skeleton = std::hypot(gap[0], gap[1]);
            out.skeleton_distance[q] = to_skeleton;
            if (to_skeleton <= 0.5 * layout.spacing() + 1e-9) {
                out.skeleton.push_back(q);
            } else {
                out.cell[q] = block_index(block, c.blocks);
            }
        }
        return out;
    }

    const SimplicialComplex& K = require_base(c);
    if (layout.kind() != QuditLayout::Kind::mesh || layout.base_uid() != K.uid()) {
        throw InputError("layout was not built on the cellulation's base complex");
    }
    const std::size_t d = c.dim;
    std::vector<std::size_t> skeleton_vertices;
    for (std::size_t v = 0; v < layout.mesh_vertex_count(); ++v) {
        if (layout.vertex_carrier(v).dim + 2 <= d) skeleton_vertices.push_back(v);
    }
    const auto hops = layout.vertex_distances(skeleton_vertices, -1);
    const double a = layout.spacing();
    for (std::size_t q = 0; q < layout.size(); ++q) {
        const SimplexRef carrier = layout.carrier(q);
        const auto ends = layout.endpoints(q);
        int h = -1;
        for (std::size_t v : ends) {
            if (hops[v] >= 0 && (h < 0 || hops[v] < h)) h = hops[v];
        }
        out.skeleton_distance[q] = carrier.dim + 2 <= d ? 0.0
                                   : h < 0            ? std::numeric_limits<double>::infinity()
                                                      : a * (0.5 + h);
        if (out.skeleton_distance[q] <= 0.5 * a + 1e-9) {
            out.skeleton.push_back(q);
            continue;
        }
        if (carrier.dim == d) {
            out.cell[q] = c.cell_of_simplex[carrier.index];
        } else {
            const auto cof = K.cofaces(d - 1, carrier.index);
            std::size_t pick = c.cell_of_simplex[cof[0]];
            for (auto s : cof) {
                const std::size_t ci = c.cell_of_simplex[s];
                const bool better = c.cells[ci].color == Color::red && c.cells[pick].color != Color::red;
                if (better || (c.cells[ci].color == c.cells[pick].color && ci < pick)) pick = ci;
            }
            out.cell[q] = pick;
        }
    }
    return out;
}

CellulationReport verify_cellulation(const Cellulation& c, const QuditLayout& layout, double r_skel, double r_sep) {
    if (r_skel < 0.0 || r_sep < 0.0) throw InputError("radii must be non-negative");
    CellulationReport report;
    report.r_skel = r_skel;
    report.r_sep = r_sep;
    report.red_cells = c.count(Color::red);
    report.blue_cells = c.count(Color::blue);
    if (c.is_cubical()) {
        check_cubical_cells(c, report);
    } else {
        check_simplicial_cells(c, report);
    }
    if (!report.cells_ok) {
        report.separation_ok = false;
        return report;
    }

    const QuditCells qc = assign_qudits(c, layout);
    const QuditSet C = qc.near_skeleton(r_skel);
    report.skeleton_qudits = qc.skeleton.size();
    report.c_size = C.size();

    std::vector<char> removed(layout.size(), 0);
    for (std::size_t q : C) removed[q] = 1;
    auto color_of = [&](std::size_t q) { return c.cells[qc.cell[q]].color; };

    Components comp(layout.size());
    if (layout.kind() == QuditLayout::Kind::mesh) {
        std::vector<std::size_t> first_red(layout.mesh_vertex_count(), npos);
        std::vector<std::size_t> first_blue(layout.mesh_vertex_count(), npos);
        for (std::size_t q = 0; q < layout.size(); ++q) {
            if (removed[q]) continue;
            auto& first = color_of(q) == Color::red ? first_red : first_blue;
            for (std::size_t v : layout.endpoints(q)) {
                if (first[v] == npos) {
                    first[v] = q;
                } else {
                    comp.unite(first[v], q);
                }
            }
        }
    } else {
        for (std::size_t q = 0; q < layout.size(); ++q) {
            if (removed[q]) continue;
            const std::size_t one[] = {q};
            for (std::size_t p : layout.neighborhood(one, layout.spacing())) {
                if (!removed[p] && color_of(p) == color_of(q)) comp.unite(p, q);
            }
        }
    }

    std::vector<std::vector<std::size_t>> members(layout.size());
    for (std::size_t q = 0; q < layout.size(); ++q) {
        if (!removed[q]) members[comp.find(q)].push_back(q);
    }
    const double reach = std::max(0.0, r_sep - 1e-6);
    std::size_t reported = 0;
    auto note = [&](const std::string& msg) {
        report.separation_ok = false;
        if (reported++ < 20) report.problems.push_back(msg);
    };
    for (std::size_t root = 0; root < layout.size(); ++root) {
        const auto& group = members[root];
        if (group.empty()) continue;
        const Color col = color_of(root);
        (col == Color::red ? report.red_components : report.blue_components) += 1;
        for (std::size_t q : group) {
            if (qc.cell[q] != qc.cell[root]) {
                note(color_name(col) + " component of qudit " + std::to_string(root) + " spans cells " +
                     std::to_string(qc.cell[root]) + " and " + std::to_string(qc.cell[q]));
                break;
            }
        }
        if (reach > 0.0) {
            for (std::size_t p : layout.neighborhood(group, reach)) {
                if (!removed[p] && color_of(p) == col && comp.find(p) != root) {
                    note(color_name(col) + " components of qudits " + std::to_string(root) + " and " +
                         std::to_string(comp.find(p)) + " are closer than r_sep");
                    break;
                }
            }
        }
    }
    return report;
}

AbcPartition abc_partition(const Cellulation& c, const QuditLayout& layout, double r_skel) {
    const CellulationReport report = verify_cellulation(c, layout, r_skel, 2.0 * layout.spacing());
    if (!report.passed()) {
        std::string msg = "cellulation failed verification";
        if (!report.problems.empty()) msg += ": " + report.problems.front();
        throw ContractError(msg);
    }
    const QuditCells qc = assign_qudits(c, layout);
    AbcPartition out;
    out.C = qc.near_skeleton(r_skel);
    std::vector<char> in_c(layout.size(), 0);
    for (std::size_t q : out.C) in_c[q] = 1;
    for (std::size_t q = 0; q < layout.size(); ++q) {
        if (in_c[q]) continue;
        (c.cells[qc.cell[q]].color == Color::red ? out.A : out.B).push_back(q);
    }
    return out;
}

void CellulationReport::write_text(std::ostream& out) const {
    out << "cells_ok: " << (cells_ok ? "true" : "false") << '\n'
        << "coloring_ok: " << (coloring_ok ? "true" : "false") << '\n'
        << "boundary_ok: " << (boundary_ok ? "true" : "false") << '\n'
        << "separation_ok: " << (separation_ok ? "true" : "false") << '\n'
        << "red_cells: " << red_cells << '\n'
        << "blue_cells: " << blue_cells << '\n'
        << "r_skel: " << r_skel << '\n'
        << "r_sep: " << r_sep << '\n'
        << "skeleton_qudits: " << skeleton_qudits << '\n'
        << "C_size: " << c_size << '\n'
        << "red_components: " << red_components << '\n'
        << "blue_components: " << blue_components << '\n'
        << "problems: " << problems.size() << '\n';
    for (const auto& p : problems) out << "  - " << p << '\n';
    out << "verdict: " << (passed() ? "PASS" : "FAIL") << '\n';
}

void write_cellulation_off(std::ostream& out, const Cellulation& c) {
    const SimplicialComplex& K = require_base(c);
    if (c.dim != 2 && c.dim != 3) throw InputError("OFF export needs dimension 2 or 3");
    const Rgb red{0.85, 0.15, 0.15};
    const Rgb blue{0.15, 0.3, 0.85};
    const Rgb hidden{-1.0, 0.0, 0.0};
    std::vector<Rgb> colors(K.count(2), hidden);
    for (std::size_t f = 0; f < K.count(2); ++f) {
        if (c.dim == 2) {
            colors[f] = c.cells[c.cell_of_simplex[f]].color == Color::red ? red : blue;
        } else {
            const auto cof = K.cofaces(2, f);
            if (cof.size() == 2 &&
                c.cells[c.cell_of_simplex[cof[0]]].color != c.cells[c.cell_of_simplex[cof[1]]].color) {
                colors[f] = red;
            }
        }
    }
    write_off(out, K, colors);
}

}  // namespace degbound
