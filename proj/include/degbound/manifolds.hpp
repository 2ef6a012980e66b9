#pragma once

#include "degbound/simplicial.hpp"

#include <string>
#include <string_view>

namespace degbound {

enum class ManifoldKind { sphere, torus, torus3, genus_surface, klein_bottle, projective_plane };

struct ManifoldParams {
    std::size_t dim = 2;    // sphere only
    std::size_t genus = 1;  // genus_surface only
};

/// Built-in closed-manifold triangulations.
///   sphere            boundary of the (dim+1)-simplex
///   torus             7-vertex minimal torus
///   torus3            3x3x3 periodic cube grid, 6 tetrahedra per cube
///   genus_surface     chain of g 7-vertex tori glued along removed triangles
///   klein_bottle      4x4 square grid with a reflected identification
///   projective_plane  6-vertex minimal RP^2
[[nodiscard]] SimplicialComplex manifold_generator(ManifoldKind kind, const ManifoldParams& params = {});

[[nodiscard]] ManifoldKind parse_manifold_kind(std::string_view name);
[[nodiscard]] std::string_view manifold_name(ManifoldKind kind);

}  // namespace degbound
