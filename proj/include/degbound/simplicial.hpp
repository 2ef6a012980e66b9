#pragma once

#include "degbound/gf2.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace degbound {

/// Raised when a complex fails the closed-manifold conditions.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vertex = std::uint32_t;
using Point3 = std::array<double, 3>;

/// Reference to one simplex of a complex: its dimension and its index in the
/// canonical (lexicographic) ordering of simplices of that dimension.
struct SimplexRef {
    std::size_t dim = 0;
    std::size_t index = 0;
    friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
    friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

/// A pure simplicial complex stored as canonically sorted simplex lists for
/// every dimension, together with facet and coface incidence.
///
/// Simplices are sorted vertex sets (no orientation). Construction generates
/// the full face closure and, unless disabled, checks that every
/// (d-1)-simplex has exactly two d-dimensional cofaces.
class SimplicialComplex {
public:
    struct Options {
        bool require_closed_manifold = true;
    };

    SimplicialComplex() = default;

    static SimplicialComplex build(std::vector<std::vector<Vertex>> top_simplices);
    static SimplicialComplex build(std::vector<std::vector<Vertex>> top_simplices, Options options);

    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] std::size_t count(std::size_t k) const;
    [[nodiscard]] std::vector<std::size_t> counts() const;
    [[nodiscard]] long long euler_characteristic() const;
    [[nodiscard]] bool is_closed_manifold() const { return closed_manifold_; }

    /// Vertices of the i-th k-simplex in increasing order.
    [[nodiscard]] std::span<const Vertex> simplex(std::size_t k, std::size_t i) const;
    /// Index of a sorted vertex set, if it is a simplex of this complex.
    [[nodiscard]] std::optional<std::size_t> index_of(std::span<const Vertex> sorted) const;
    /// Indices of the (k-1)-faces of the i-th k-simplex; entry j omits vertex j.
    [[nodiscard]] std::span<const std::uint32_t> facets(std::size_t k, std::size_t i) const;
    /// Indices of the (k+1)-simplices having the i-th k-simplex as a face.
    [[nodiscard]] std::span<const std::uint32_t> cofaces(std::size_t k, std::size_t i) const;

    /// Label of the i-th vertex (0-simplex). Labels need not be contiguous.
    [[nodiscard]] Vertex vertex_label(std::size_t i) const { return simplex(0, i)[0]; }

    /// Identity token shared by copies; distinguishes chains of different complexes.
    [[nodiscard]] std::uint64_t uid() const { return uid_; }

    [[nodiscard]] const std::vector<Point3>& positions() const { return positions_; }
    [[nodiscard]] bool has_positions() const { return !positions_.empty(); }
    /// Attach one point per vertex (indexed like the 0-simplices).
    void set_positions(std::vector<Point3> positions);

    [[nodiscard]] std::vector<std::vector<Vertex>> top_simplices() const;

private:
    std::size_t dim_ = 0;
    bool closed_manifold_ = false;
    std::uint64_t uid_ = 0;
    std::vector<std::vector<Vertex>> verts_;          // per k, stride k+1
    std::vector<std::vector<std::uint32_t>> facets_;  // per k >= 1, stride k+1
    std::vector<std::vector<std::uint32_t>> coface_offsets_;
    std::vector<std::vector<std::uint32_t>> coface_data_;
    std::vector<Point3> positions_;
};

/// A Z2 k-chain of a particular complex.
struct Chain {
    std::uint64_t complex_uid = 0;
    std::size_t degree = 0;
    gf2::BitVector support;

    [[nodiscard]] std::size_t weight() const { return support.count(); }
    friend bool operator==(const Chain&, const Chain&) = default;
};

[[nodiscard]] Chain zero_chain(const SimplicialComplex& complex, std::size_t k);
[[nodiscard]] Chain chain_from_indices(const SimplicialComplex& complex, std::size_t k,
                                       std::span<const std::size_t> indices);
[[nodiscard]] Chain full_skeleton_chain(const SimplicialComplex& complex, std::size_t k);
[[nodiscard]] Chain add(const Chain& a, const Chain& b);

/// Dense ∂_k: rows are (k-1)-simplices, columns k-simplices. 1 <= k <= d.
[[nodiscard]] gf2::BitMatrix boundary_matrix(const SimplicialComplex& complex, std::size_t k);

/// ∂c computed from the facet lists, without forming a matrix.
[[nodiscard]] Chain boundary(const SimplicialComplex& complex, const Chain& c);

/// Z2 Betti numbers b_0..b_d.
[[nodiscard]] std::vector<std::size_t> betti_numbers(const SimplicialComplex& complex);

/// Records how a barycentric subdivision sits inside its parent.
struct SubdivisionMap {
    std::uint64_t parent_uid = 0;
    std::uint64_t child_uid = 0;
    std::size_t dimension = 0;
    /// For each child vertex, the parent simplex it is the barycenter of.
    std::vector<SimplexRef> vertex_origin;
    /// carrier[k][j]: the parent k-simplex containing child k-simplex j, or
    /// npos when that child simplex passes through a higher-dimensional cell.
    std::vector<std::vector<std::size_t>> carrier;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Child k-simplices contained in parent k-simplex i, in increasing order.
    [[nodiscard]] std::vector<std::size_t> carrier_set(std::size_t k, std::size_t i) const;
};

struct Subdivision {
    SimplicialComplex complex;
    SubdivisionMap map;
};

/// Barycentric subdivision. Child vertex labels are assigned by walking the
/// parent's simplices in order of dimension, then canonical order.
[[nodiscard]] Subdivision barycentric_subdivide(const SimplicialComplex& parent);

/// The chain map B: each parent simplex goes to the sum of child simplices
/// of the same dimension it contains.
[[nodiscard]] Chain push_chain(const SubdivisionMap& map, const Chain& c);

/// Solves ∂_d P = target for a (d-1)-chain target on a closed pseudomanifold.
///
/// Every row of ∂_d has exactly two ones, so the system is a parity labelling
/// of the dual graph: propagate across each (d-1)-face, flipping membership
/// exactly when that face is in target. Each dual component is rooted at its
/// lowest-index d-simplex, which is left out of P. Returns nullopt when some
/// cycle of the dual graph crosses target an odd number of times.
[[nodiscard]] std::optional<Chain> solve_top_boundary(const SimplicialComplex& complex,
                                                      const Chain& target);

// ---------------------------------------------------------------- mesh I/O

/// Mesh text: one top simplex per line as whitespace-separated vertex
/// labels; blank lines and lines starting with '#' are ignored.
[[nodiscard]] std::vector<std::vector<Vertex>> read_mesh(std::istream& in);
[[nodiscard]] std::vector<std::vector<Vertex>> read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const SimplicialComplex& complex);

/// RGB colour per face for OFF output.
using Rgb = std::array<double, 3>;

/// OFF export of the 2-simplices of a complex of dimension 2 or 3. When
/// face_colors is non-empty it must hold one colour per 2-simplex; faces
/// whose colour has a negative first component are omitted.
void write_off(std::ostream& out, const SimplicialComplex& complex,
               std::span<const Rgb> face_colors = {});

/// Deterministic 3D positions for the vertices of a small complex from the
/// low-frequency eigenvectors of its graph Laplacian.
[[nodiscard]] std::vector<Point3> spectral_positions(const SimplicialComplex& complex);

}  // namespace degbound
