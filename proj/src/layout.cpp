#include "degbound/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>
#include <numeric>

namespace degbound {

namespace {

constexpr double length_eps = 1e-9;

}  // namespace

QuditSet make_qudit_set(std::vector<std::size_t> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

QuditSet set_union(const QuditSet& a, const QuditSet& b) {
    QuditSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

QuditSet set_difference(const QuditSet& a, const QuditSet& b) {
    QuditSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

QuditSet set_intersection(const QuditSet& a, const QuditSet& b) {
    QuditSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const QuditSet& small, const QuditSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// ---------------------------------------------------------------- QuditLayout

QuditLayout QuditLayout::flat_torus(std::size_t dim, double side, std::vector<std::vector<double>> positions,
                                    std::size_t density_cap) {
    if (dim < 1) throw InputError("flat torus needs dimension >= 1");
    if (!(side > 0.0)) throw InputError("flat torus side must be positive");
    for (const auto& p : positions) {
        if (p.size() != dim) throw InputError("qudit position has the wrong dimension");
    }
    QuditLayout layout;
    layout.kind_ = Kind::flat_torus;
    layout.dim_ = dim;
    layout.size_ = positions.size();
    layout.L_ = side;
    layout.a_ = 1.0;
    layout.density_cap_ = density_cap;
    layout.positions_ = std::move(positions);
    layout.check_density();
    return layout;
}

void QuditLayout::check_density() {
    for (std::size_t i = 0; i < size_; ++i) {
        std::size_t count = 0;
        if (kind_ == Kind::mesh) {
            const auto [u, v] = endpoints_[i];
            count = (adj_offsets_[u + 1] - adj_offsets_[u]) + (adj_offsets_[v + 1] - adj_offsets_[v]) - 1;
        } else {
            const std::size_t one[] = {i};
            count = neighborhood(one, a_).size();
        }
        if (count > density_cap_) {
            throw InputError("qudit " + std::to_string(i) + " has " + std::to_string(count) +
                             " qudits within distance a, above the density cap " +
                             std::to_string(density_cap_));
        }
    }
}

double QuditLayout::distance(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_) throw InputError("qudit id out of range");
    if (kind_ == Kind::flat_torus) {
        double sum = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            double dx = std::fmod(std::fabs(positions_[i][k] - positions_[j][k]), L_);
            dx = std::min(dx, L_ - dx);
            sum += dx * dx;
        }
        return std::sqrt(sum);
    }
    if (i == j) return 0.0;
    const std::size_t src[] = {endpoints_[i][0], endpoints_[i][1]};
    const auto dist = vertex_distances(src, -1);
    const int hops = std::min(dist[endpoints_[j][0]], dist[endpoints_[j][1]]);
    return a_ * (hops + 1);
}

std::vector<int> QuditLayout::vertex_distances(std::span<const std::size_t> sources, int max_depth) const {
    std::vector<int> dist(vertex_carrier_.size(), -1);
    std::deque<std::size_t> queue;
    for (std::size_t s : sources) {
        if (dist[s] < 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        if (max_depth >= 0 && dist[u] >= max_depth) continue;
        for (std::size_t k = adj_offsets_[u]; k < adj_offsets_[u + 1]; ++k) {
            const std::size_t w = adj_vertices_[k];
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

QuditSet QuditLayout::neighborhood(std::span<const std::size_t> s, double r) const {
    if (r < 0.0) throw InputError("neighborhood radius must be non-negative");
    for (std::size_t i : s) {
        if (i >= size_) throw InputError("qudit id out of range");
    }
    QuditSet seed = make_qudit_set({s.begin(), s.end()});
    if (seed.empty()) return seed;

    if (kind_ == Kind::flat_torus) {
        QuditSet out;
        for (std::size_t j = 0; j < size_; ++j) {
            for (std::size_t i : seed) {
                if (distance(i, j) <= r + length_eps) {
                    out.push_back(j);
                    break;
                }
            }
        }
        return out;
    }

    // Distinct edges are 1 + (endpoint hops) apart, so radius r reaches every
    // edge with an endpoint within floor(r/a) - 1 hops of the seed's endpoints.
    const int depth = static_cast<int>(std::floor(r / a_ + length_eps)) - 1;
    if (depth < 0) return seed;
    std::vector<std::size_t> sources;
    for (std::size_t i : seed) {
        sources.push_back(endpoints_[i][0]);
        sources.push_back(endpoints_[i][1]);
    }
    const auto dist = vertex_distances(sources, depth);
    QuditSet out;
    for (std::size_t j = 0; j < size_; ++j) {
        if (dist[endpoints_[j][0]] >= 0 || dist[endpoints_[j][1]] >= 0) out.push_back(j);
    }
    return out;
}

QuditSet QuditLayout::all() const {
    QuditSet out(size_);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

// ---------------------------------------------------------------- factories

QuditLayout torus_lattice_layout(std::size_t dim, std::size_t side, SitePlacement placement,
                                 std::size_t density_cap) {
    if (dim < 2) throw InputError("torus lattice needs d >= 2");
    if (side < 2) throw InputError("torus lattice needs L >= 2");
    std::size_t vertices = 1;
    for (std::size_t k = 0; k < dim; ++k) vertices *= side;

    std::vector<std::vector<double>> positions;
    for (std::size_t v = 0; v < vertices; ++v) {
        std::vector<double> base(dim);
        std::size_t rest = v;
        for (std::size_t k = 0; k < dim; ++k) {
            base[k] = static_cast<double>(rest % side);
            rest /= side;
        }
        switch (placement) {
            case SitePlacement::edges:
                for (std::size_t axis = 0; axis < dim; ++axis) {
                    auto p = base;
                    p[axis] += 0.5;
                    positions.push_back(std::move(p));
                }
                break;
            case SitePlacement::vertices: positions.push_back(base); break;
            case SitePlacement::vertex_pairs:
                positions.push_back(base);
                positions.push_back(base);
                break;
        }
    }
    return QuditLayout::flat_torus(dim, static_cast<double>(side), std::move(positions), density_cap);
}

QuditLayout layout_from_complex(const SimplicialComplex& complex, std::size_t refine, std::size_t density_cap) {
    // Carrier in the base complex of every vertex of the current refinement.
    std::vector<SimplexRef> carriers(complex.count(0));
    for (std::size_t v = 0; v < carriers.size(); ++v) carriers[v] = {0, v};

    SimplicialComplex current = complex;
    for (std::size_t level = 0; level < refine; ++level) {
        Subdivision sub = barycentric_subdivide(current);
        std::vector<SimplexRef> next(sub.complex.count(0));
        for (std::size_t v = 0; v < next.size(); ++v) {
            const SimplexRef origin = sub.map.vertex_origin[sub.complex.vertex_label(v)];
            if (level == 0) {
                next[v] = origin;
                continue;
            }
            SimplexRef best{0, 0};
            bool first = true;
            for (Vertex u : current.simplex(origin.dim, origin.index)) {
                const Vertex label[1] = {u};
                const SimplexRef c = carriers[*current.index_of(label)];
                if (first || c.dim > best.dim) best = c;
                first = false;
            }
            next[v] = best;
        }
        carriers = std::move(next);
        current = std::move(sub.complex);
    }

    QuditLayout layout;
    layout.kind_ = QuditLayout::Kind::mesh;
    layout.dim_ = complex.dimension();
    layout.base_uid_ = complex.uid();
    layout.a_ = 1.0;
    layout.density_cap_ = density_cap;
    layout.size_ = current.count(1);
    layout.vertex_carrier_ = carriers;

    const std::size_t nv = current.count(0);
    layout.endpoints_.resize(layout.size_);
    layout.carrier_.resize(layout.size_);
    layout.adj_offsets_.assign(nv + 1, 0);
    for (std::size_t e = 0; e < layout.size_; ++e) {
        const auto f = current.facets(1, e);
        // facets(1, e)[j] omits vertex j, so entry 1 is the lower endpoint.
        const std::size_t u = f[1];
        const std::size_t w = f[0];
        layout.endpoints_[e] = {u, w};
        if (refine == 0) {
            layout.carrier_[e] = {1, e};
        } else {
            layout.carrier_[e] = carriers[u].dim >= carriers[w].dim ? carriers[u] : carriers[w];
        }
        ++layout.adj_offsets_[u + 1];
        ++layout.adj_offsets_[w + 1];
    }
    std::partial_sum(layout.adj_offsets_.begin(), layout.adj_offsets_.end(), layout.adj_offsets_.begin());
    layout.adj_vertices_.resize(2 * layout.size_);
    layout.adj_edges_.resize(2 * layout.size_);
    std::vector<std::size_t> fill(layout.adj_offsets_.begin(), layout.adj_offsets_.end() - 1);
    for (std::size_t e = 0; e < layout.size_; ++e) {
        const auto [u, w] = layout.endpoints_[e];
        layout.adj_vertices_[fill[u]] = w;
        layout.adj_edges_[fill[u]++] = e;
        layout.adj_vertices_[fill[w]] = u;
        layout.adj_edges_[fill[w]++] = e;
    }

    // Qudit diameter: exact when affordable, otherwise the bound 2 ecc(v0) + 1.
    const double work = static_cast<double>(layout.size_) * static_cast<double>(nv + layout.size_);
    if (work <= 2e8) {
        int best = 0;
        for (std::size_t e = 0; e < layout.size_; ++e) {
            const std::size_t src[] = {layout.endpoints_[e][0], layout.endpoints_[e][1]};
            const auto dist = layout.vertex_distances(src, -1);
            for (std::size_t f = 0; f < layout.size_; ++f) {
                if (f == e) continue;
                best = std::max(best, std::min(dist[layout.endpoints_[f][0]], dist[layout.endpoints_[f][1]]) + 1);
            }
        }
        layout.L_ = layout.a_ * best;
        layout.diameter_exact_ = true;
    } else {
        const std::size_t src[] = {0};
        const auto dist = layout.vertex_distances(src, -1);
        layout.L_ = layout.a_ * (2 * *std::max_element(dist.begin(), dist.end()) + 1);
        layout.diameter_exact_ = false;
    }

    layout.check_density();
    return layout;
}

}  // namespace degbound
