#pragma once

#include "degbound/simplicial.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace degbound {

/// Sorted, duplicate-free list of qudit ids.
using QuditSet = std::vector<std::size_t>;

[[nodiscard]] QuditSet make_qudit_set(std::vector<std::size_t> ids);
[[nodiscard]] QuditSet set_union(const QuditSet& a, const QuditSet& b);
[[nodiscard]] QuditSet set_difference(const QuditSet& a, const QuditSet& b);
[[nodiscard]] QuditSet set_intersection(const QuditSet& a, const QuditSet& b);
[[nodiscard]] bool is_subset(const QuditSet& small, const QuditSet& big);

/// Where qudits sit on the periodic cubic lattice.
enum class SitePlacement {
    edges,         // one qudit per edge midpoint (d per vertex)
    vertices,      // one qudit per vertex
    vertex_pairs,  // two qudits per vertex, sharing its position
};

/// Qudits placed on a space with a metric: either the flat d-torus of side L
/// with the Euclidean quotient metric, or the edges of a (refined) simplicial
/// complex with the 1-skeleton graph metric.
///
/// Lengths are in lattice units. For mesh layouts each edge has length a = 1
/// and two distinct edge qudits are 1 + (graph distance between their nearest
/// endpoints) apart; L is the qudit diameter in those units.
class QuditLayout {
public:
    enum class Kind { flat_torus, mesh };

    static constexpr std::size_t default_density_cap = 64;

    static QuditLayout flat_torus(std::size_t dim, double side, std::vector<std::vector<double>> positions,
                                  std::size_t density_cap = default_density_cap);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] double spacing() const { return a_; }
    [[nodiscard]] double diameter() const { return L_; }
    [[nodiscard]] bool diameter_exact() const { return diameter_exact_; }
    [[nodiscard]] unsigned local_dim() const { return 2; }
    [[nodiscard]] std::size_t density_cap() const { return density_cap_; }
    /// True when L < 10a, i.e. the system is too small for the asymptotic regime.
    [[nodiscard]] bool small_system_warning() const { return L_ < 10.0 * a_; }

    [[nodiscard]] double distance(std::size_t i, std::size_t j) const;
    /// Every qudit within distance r of some member of s (s included).
    [[nodiscard]] QuditSet neighborhood(std::span<const std::size_t> s, double r) const;
    [[nodiscard]] QuditSet all() const;

    // flat-torus layouts
    [[nodiscard]] const std::vector<double>& position(std::size_t i) const { return positions_.at(i); }

    // mesh layouts
    [[nodiscard]] std::uint64_t base_uid() const { return base_uid_; }
    /// Simplex of the base complex whose relative interior contains qudit i.
    [[nodiscard]] SimplexRef carrier(std::size_t i) const { return carrier_.at(i); }
    /// Simplex of the base complex containing mesh vertex v in its interior.
    [[nodiscard]] SimplexRef vertex_carrier(std::size_t v) const { return vertex_carrier_.at(v); }
    [[nodiscard]] std::array<std::size_t, 2> endpoints(std::size_t i) const { return endpoints_.at(i); }
    [[nodiscard]] std::size_t mesh_vertex_count() const { return vertex_carrier_.size(); }
    /// Hop distances on the mesh graph from a vertex set (-1 when unreached),
    /// explored no further than max_depth hops (unbounded when negative).
    [[nodiscard]] std::vector<int> vertex_distances(std::span<const std::size_t> sources, int max_depth) const;

    friend QuditLayout layout_from_complex(const SimplicialComplex& complex, std::size_t refine,
                                           std::size_t density_cap);

private:
    QuditLayout() = default;
    void check_density();

    Kind kind_ = Kind::flat_torus;
    std::size_t size_ = 0;
    std::size_t dim_ = 0;
    double a_ = 1.0;
    double L_ = 0.0;
    bool diameter_exact_ = true;
    std::size_t density_cap_ = default_density_cap;

    std::vector<std::vector<double>> positions_;

    std::uint64_t base_uid_ = 0;
    std::vector<SimplexRef> carrier_;
    std::vector<SimplexRef> vertex_carrier_;
    std::vector<std::array<std::size_t, 2>> endpoints_;
    std::vector<std::size_t> adj_offsets_;
    std::vector<std::size_t> adj_vertices_;
    std::vector<std::size_t> adj_edges_;
};

/// Qudits on the edges of the d-torus cubic lattice of side L (lattice spacing 1).
/// Edge qudit ids are vertex_index * d + axis; vertex indices are
/// x_0 + L x_1 + L^2 x_2 + ...
[[nodiscard]] QuditLayout torus_lattice_layout(std::size_t dim, std::size_t side, SitePlacement placement,
                                               std::size_t density_cap = QuditLayout::default_density_cap);

/// One qudit per edge of the complex after `refine` further barycentric
/// subdivisions, in the canonical edge order of the refined complex.
[[nodiscard]] QuditLayout layout_from_complex(const SimplicialComplex& complex, std::size_t refine,
                                              std::size_t density_cap = QuditLayout::default_density_cap);

}  // namespace degbound
