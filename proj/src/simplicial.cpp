#include "degbound/simplicial.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <sstream>

namespace degbound {

namespace {

std::uint64_t next_uid() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

bool row_less(const Vertex* a, const Vertex* b, std::size_t stride) {
    return std::lexicographical_compare(a, a + stride, b, b + stride);
}

/// Sorts fixed-stride rows lexicographically and drops duplicates.
std::vector<Vertex> sort_unique_rows(const std::vector<Vertex>& flat, std::size_t stride) {
    const std::size_t n = flat.size() / stride;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return row_less(flat.data() + a * stride, flat.data() + b * stride, stride);
    });
    std::vector<Vertex> out;
    out.reserve(flat.size());
    const Vertex* prev = nullptr;
    for (std::uint32_t i : order) {
        const Vertex* row = flat.data() + static_cast<std::size_t>(i) * stride;
        if (prev != nullptr && std::equal(prev, prev + stride, row)) continue;
        out.insert(out.end(), row, row + stride);
        prev = row;
    }
    return out;
}

std::string format_simplex(std::span<const Vertex> s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- construction

SimplicialComplex SimplicialComplex::build(std::vector<std::vector<Vertex>> top_simplices) {
    return build(std::move(top_simplices), Options{});
}

SimplicialComplex SimplicialComplex::build(std::vector<std::vector<Vertex>> top_simplices,
                                           Options options) {
    if (top_simplices.empty()) throw InputError("complex needs at least one top simplex");
    const std::size_t width = top_simplices.front().size();
    if (width < 2) throw InputError("top simplices must have dimension at least 1");

    SimplicialComplex K;
    K.dim_ = width - 1;
    K.uid_ = next_uid();
    K.verts_.resize(width);
    K.facets_.resize(width);

    std::vector<Vertex> flat;
    flat.reserve(top_simplices.size() * width);
    for (auto& s : top_simplices) {
        if (s.size() != width) {
            throw InputError("top simplices have mixed sizes (" + std::to_string(width) + " and " +
                             std::to_string(s.size()) + ")");
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw InputError("simplex " + format_simplex(s) + " repeats a vertex");
        }
        flat.insert(flat.end(), s.begin(), s.end());
    }
    K.verts_[K.dim_] = sort_unique_rows(flat, width);

    for (std::size_t k = K.dim_; k >= 1; --k) {
        const std::size_t stride = k + 1;
        const auto& upper = K.verts_[k];
        const std::size_t n = upper.size() / stride;
        std::vector<Vertex> faces;
        faces.reserve(n * stride * k);
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex* s = upper.data() + i * stride;
            for (std::size_t omit = 0; omit < stride; ++omit) {
                for (std::size_t j = 0; j < stride; ++j) {
                    if (j != omit) faces.push_back(s[j]);
                }
            }
        }
        K.verts_[k - 1] = sort_unique_rows(faces, k);

        auto& fac = K.facets_[k];
        fac.resize(n * stride);
        std::vector<Vertex> face(k);
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex* s = upper.data() + i * stride;
            for (std::size_t omit = 0; omit < stride; ++omit) {
                std::size_t w = 0;
                for (std::size_t j = 0; j < stride; ++j) {
                    if (j != omit) face[w++] = s[j];
                }
                fac[i * stride + omit] = static_cast<std::uint32_t>(*K.index_of(face));
            }
        }
    }

    K.coface_offsets_.resize(K.dim_);
    K.coface_data_.resize(K.dim_);
    for (std::size_t k = 0; k < K.dim_; ++k) {
        const std::size_t nk = K.count(k);
        const std::size_t nup = K.count(k + 1);
        auto& off = K.coface_offsets_[k];
        auto& data = K.coface_data_[k];
        off.assign(nk + 1, 0);
        for (std::uint32_t f : K.facets_[k + 1]) ++off[f + 1];
        std::partial_sum(off.begin(), off.end(), off.begin());
        data.resize(K.facets_[k + 1].size());
        std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
        for (std::size_t i = 0; i < nup; ++i) {
            for (std::uint32_t f : K.facets(k + 1, i)) data[fill[f]++] = static_cast<std::uint32_t>(i);
        }
    }

    bool closed = true;
    for (std::size_t i = 0; i < K.count(K.dim_ - 1); ++i) {
        const std::size_t degree = K.cofaces(K.dim_ - 1, i).size();
        if (degree != 2) {
            closed = false;
            if (options.require_closed_manifold) {
                throw ValidationError("not a closed manifold: " + std::to_string(K.dim_ - 1) +
                                      "-simplex " + format_simplex(K.simplex(K.dim_ - 1, i)) +
                                      " has " + std::to_string(degree) + " cofaces (expected 2)");
            }
        }
    }
    K.closed_manifold_ = closed;
    return K;
}

std::size_t SimplicialComplex::count(std::size_t k) const {
    if (k > dim_ || verts_.empty()) return 0;
    return verts_[k].size() / (k + 1);
}

std::vector<std::size_t> SimplicialComplex::counts() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k <= dim_ && !verts_.empty(); ++k) out.push_back(count(k));
    return out;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (std::size_t k = 0; k <= dim_ && !verts_.empty(); ++k) {
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
    }
    return chi;
}

std::span<const Vertex> SimplicialComplex::simplex(std::size_t k, std::size_t i) const {
    return {verts_[k].data() + i * (k + 1), k + 1};
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const Vertex> sorted) const {
    if (sorted.empty() || sorted.size() > dim_ + 1) return std::nullopt;
    const std::size_t k = sorted.size() - 1;
    const auto& flat = verts_[k];
    std::size_t lo = 0;
    std::size_t hi = flat.size() / (k + 1);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (row_less(flat.data() + mid * (k + 1), sorted.data(), k + 1)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < flat.size() / (k + 1) &&
        std::equal(sorted.begin(), sorted.end(), flat.data() + lo * (k + 1))) {
        return lo;
    }
    return std::nullopt;
}

std::span<const std::uint32_t> SimplicialComplex::facets(std::size_t k, std::size_t i) const {
    return {facets_[k].data() + i * (k + 1), k + 1};
}

std::span<const std::uint32_t> SimplicialComplex::cofaces(std::size_t k, std::size_t i) const {
    if (k >= dim_) return {};
    const auto& off = coface_offsets_[k];
    return {coface_data_[k].data() + off[i], off[i + 1] - off[i]};
}

void SimplicialComplex::set_positions(std::vector<Point3> positions) {
    if (positions.size() != count(0)) {
        throw InputError("expected one position per vertex");
    }
    positions_ = std::move(positions);
}

std::vector<std::vector<Vertex>> SimplicialComplex::top_simplices() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(count(dim_));
    for (std::size_t i = 0; i < count(dim_); ++i) {
        const auto s = simplex(dim_, i);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

// ---------------------------------------------------------------- chains

Chain zero_chain(const SimplicialComplex& complex, std::size_t k) {
    if (k > complex.dimension()) throw InputError("chain degree exceeds complex dimension");
    return Chain{complex.uid(), k, gf2::BitVector(complex.count(k))};
}

Chain chain_from_indices(const SimplicialComplex& complex, std::size_t k,
                         std::span<const std::size_t> indices) {
    Chain c = zero_chain(complex, k);
    c.support = gf2::BitVector::from_indices(complex.count(k), indices);
    return c;
}

Chain full_skeleton_chain(const SimplicialComplex& complex, std::size_t k) {
    Chain c = zero_chain(complex, k);
    for (std::size_t i = 0; i < complex.count(k); ++i) c.support.set(i);
    return c;
}

Chain add(const Chain& a, const Chain& b) {
    if (a.complex_uid != b.complex_uid || a.degree != b.degree) {
        throw InputError("cannot add chains of different complexes or degrees");
    }
    return Chain{a.complex_uid, a.degree, a.support ^ b.support};
}

gf2::BitMatrix boundary_matrix(const SimplicialComplex& complex, std::size_t k) {
    if (k < 1 || k > complex.dimension()) {
        throw InputError("boundary_matrix: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(complex.dimension()) + "]");
    }
    gf2::BitMatrix m(complex.count(k - 1), complex.count(k));
    for (std::size_t i = 0; i < complex.count(k); ++i) {
        for (std::uint32_t f : complex.facets(k, i)) m.set(f, i);
    }
    return m;
}

Chain boundary(const SimplicialComplex& complex, const Chain& c) {
    if (c.complex_uid != complex.uid()) throw InputError("chain belongs to a different complex");
    if (c.degree == 0) throw InputError("boundary of a 0-chain is not defined here");
    Chain out = zero_chain(complex, c.degree - 1);
    for (std::size_t i : c.support.ones()) {
        for (std::uint32_t f : complex.facets(c.degree, i)) out.support.flip(f);
    }
    return out;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& complex) {
    const std::size_t d = complex.dimension();
    std::vector<std::size_t> ranks(d + 2, 0);  // ranks[k] = rank ∂_k
    for (std::size_t k = 1; k <= d; ++k) ranks[k] = gf2::rank(boundary_matrix(complex, k));
    std::vector<std::size_t> betti(d + 1);
    for (std::size_t k = 0; k <= d; ++k) betti[k] = complex.count(k) - ranks[k] - ranks[k + 1];
    return betti;
}

// ---------------------------------------------------------------- subdivision

std::vector<std::size_t> SubdivisionMap::carrier_set(std::size_t k, std::size_t i) const {
    std::vector<std::size_t> out;
    const auto& car = carrier.at(k);
    for (std::size_t j = 0; j < car.size(); ++j) {
        if (car[j] == i) out.push_back(j);
    }
    return out;
}

Subdivision barycentric_subdivide(const SimplicialComplex& parent) {
    const std::size_t d = parent.dimension();
    std::vector<std::size_t> offset(d + 2, 0);
    for (std::size_t k = 0; k <= d; ++k) offset[k + 1] = offset[k] + parent.count(k);

    SubdivisionMap map;
    map.parent_uid = parent.uid();
    map.dimension = d;
    map.vertex_origin.resize(offset[d + 1]);
    for (std::size_t k = 0; k <= d; ++k) {
        for (std::size_t i = 0; i < parent.count(k); ++i) map.vertex_origin[offset[k] + i] = {k, i};
    }

    // Each flag of a top simplex corresponds to an ordering of its vertices:
    // face k keeps the last k+1 vertices of the ordering.
    std::vector<std::vector<Vertex>> tops;
    tops.reserve(parent.count(d) * [d] {
        std::size_t f = 1;
        for (std::size_t i = 2; i <= d + 1; ++i) f *= i;
        return f;
    }());
    std::vector<std::size_t> perm(d + 1);
    std::vector<Vertex> face;
    for (std::size_t t = 0; t < parent.count(d); ++t) {
        const auto top = parent.simplex(d, t);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<Vertex> flag(d + 1);
            for (std::size_t k = 0; k <= d; ++k) {
                face.clear();
                for (std::size_t j = d - k; j <= d; ++j) face.push_back(top[perm[j]]);
                std::sort(face.begin(), face.end());
                flag[k] = static_cast<Vertex>(offset[k] + *parent.index_of(face));
            }
            tops.push_back(std::move(flag));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    SimplicialComplex child = SimplicialComplex::build(
        std::move(tops), SimplicialComplex::Options{.require_closed_manifold = parent.is_closed_manifold()});
    map.child_uid = child.uid();

    map.carrier.resize(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        auto& car = map.carrier[k];
        car.assign(child.count(k), SubdivisionMap::npos);
        for (std::size_t j = 0; j < child.count(k); ++j) {
            // Labels increase with the dimension of the subdivided simplex, so the
            // last vertex is the barycenter of the largest simplex of the flag.
            const SimplexRef origin = map.vertex_origin[child.simplex(k, j).back()];
            if (origin.dim == k) car[j] = origin.index;
        }
    }

    if (parent.has_positions()) {
        std::vector<Point3> pos(child.count(0));
        for (std::size_t v = 0; v < child.count(0); ++v) {
            const SimplexRef origin = map.vertex_origin[child.vertex_label(v)];
            Point3 p{0.0, 0.0, 0.0};
            const auto s = parent.simplex(origin.dim, origin.index);
            for (Vertex u : s) {
                const Vertex label[1] = {u};
                const Point3& q = parent.positions()[*parent.index_of(label)];
                for (int a = 0; a < 3; ++a) p[a] += q[a];
            }
            for (int a = 0; a < 3; ++a) p[a] /= static_cast<double>(s.size());
            pos[v] = p;
        }
        child.set_positions(std::move(pos));
    }

    return Subdivision{std::move(child), std::move(map)};
}

Chain push_chain(const SubdivisionMap& map, const Chain& c) {
    if (c.complex_uid != map.parent_uid) {
        throw InputError("push_chain: chain does not belong to the subdivided complex");
    }
    if (c.degree > map.dimension) throw InputError("push_chain: degree exceeds dimension");
    const auto& car = map.carrier[c.degree];
    Chain out{map.child_uid, c.degree, gf2::BitVector(car.size())};
    for (std::size_t j = 0; j < car.size(); ++j) {
        if (car[j] != SubdivisionMap::npos && c.support.get(car[j])) out.support.set(j);
    }
    return out;
}

std::optional<Chain> solve_top_boundary(const SimplicialComplex& complex, const Chain& target) {
    const std::size_t d = complex.dimension();
    if (target.complex_uid != complex.uid() || target.degree + 1 != d) {
        throw InputError("solve_top_boundary: target must be a (d-1)-chain of this complex");
    }
    if (!complex.is_closed_manifold()) {
        throw InputError("solve_top_boundary requires every (d-1)-simplex to have two cofaces");
    }
    const std::size_t n = complex.count(d);
    Chain p = zero_chain(complex, d);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        queue.push_back(root);
        while (!queue.empty()) {
            const std::size_t s = queue.front();
            queue.pop_front();
            for (std::uint32_t f : complex.facets(d, s)) {
                const auto co = complex.cofaces(d - 1, f);
                const std::size_t other = co[0] == s ? co[1] : co[0];
                const bool want = p.support.get(s) != target.support.get(f);
                if (!seen[other]) {
                    seen[other] = true;
                    p.support.set(other, want);
                    queue.push_back(other);
                } else if (p.support.get(other) != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return p;
}

}  // namespace degbound
