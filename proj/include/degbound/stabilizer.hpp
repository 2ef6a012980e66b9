#pragma once

#include "degbound/gf2.hpp"
#include "degbound/layout.hpp"
#include "degbound/simplicial.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace degbound {

/// An n-qubit Pauli operator up to phase, as its symplectic pair (x, z).
struct PauliOp {
    gf2::BitVector x;
    gf2::BitVector z;

    PauliOp() = default;
    explicit PauliOp(std::size_t n) : x(n), z(n) {}
    PauliOp(gf2::BitVector x_part, gf2::BitVector z_part);

    /// Parses a string over {I, X, Y, Z}.
    static PauliOp from_string(std::string_view s);
    /// X (or Z) on the listed qubits.
    static PauliOp x_on(std::size_t n, const std::vector<std::size_t>& qubits);
    static PauliOp z_on(std::size_t n, const std::vector<std::size_t>& qubits);

    [[nodiscard]] std::size_t size() const { return x.size(); }
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::size_t weight() const;
    /// Sorted qubits on which the operator is not the identity.
    [[nodiscard]] std::vector<std::size_t> support() const;
    /// Symplectic form x1.z2 + z1.x2: false when the two operators commute.
    [[nodiscard]] bool anticommutes(const PauliOp& other) const;
    [[nodiscard]] bool commutes(const PauliOp& other) const { return !anticommutes(other); }
    PauliOp& operator*=(const PauliOp& other);
    /// Length-2n vector (x | z).
    [[nodiscard]] gf2::BitVector symplectic() const;

    friend bool operator==(const PauliOp&, const PauliOp&) = default;
};

/// A qubit stabilizer code given by commuting generators (not necessarily
/// independent). Qubit i of a code returned with a layout is qudit i there.
class StabilizerCode {
public:
    StabilizerCode() = default;

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] const std::vector<PauliOp>& generators() const { return gens_; }
    /// Generator matrix with rows (x | z).
    [[nodiscard]] gf2::BitMatrix matrix() const;
    [[nodiscard]] std::size_t rank() const;

    friend StabilizerCode build_code(std::size_t n, std::vector<PauliOp> gens);

private:
    std::size_t n_ = 0;
    std::vector<PauliOp> gens_;
};

/// Validates lengths and pairwise commutation. Throws ValidationError naming
/// the first anticommuting pair.
[[nodiscard]] StabilizerCode build_code(std::size_t n, std::vector<PauliOp> gens);

/// log2 of the code space dimension: n - rank(generators).
[[nodiscard]] std::size_t degeneracy(const StabilizerCode& code);

/// 2k logical operators in symplectic pairs (X1, Z1, X2, Z2, ...): each pair
/// anticommutes, operators of different pairs commute, and all commute with
/// the stabilizers.
[[nodiscard]] std::vector<PauliOp> logical_generators(const StabilizerCode& code);

struct BoundCode {
    StabilizerCode code;
    QuditLayout layout;
};

/// Toric code on the edges of the periodic cubic lattice (dim 2 or 3): an
/// X star per vertex and a Z plaquette per face. Qubit ids follow
/// torus_lattice_layout(dim, L, edges).
[[nodiscard]] BoundCode toric_code(std::size_t dim, std::size_t L);

/// Homological code on a closed surface after `refine` barycentric
/// subdivisions: qubits on edges, an X star per vertex, a Z face per triangle.
[[nodiscard]] BoundCode surface_code_on_complex(const SimplicialComplex& K, std::size_t refine = 0,
                                                std::size_t density_cap = QuditLayout::default_density_cap);

enum class FractonModel { cubic1, xcube, checkerboard_model };

[[nodiscard]] FractonModel parse_fracton_model(std::string_view name);

/// Fracton codes on the L^3 periodic lattice.
///   xcube               qubits on edges; Z cross per vertex and plane, X on the 12 edges of each cube
///   checkerboard_model  qubits on vertices; X and Z on the 8 corners of every cube with even
///                       coordinate sum (L even)
///   cubic1              two qubits per vertex; one X-type and one Z-type term per cube (table in
///                       docs/cubic1.md)
[[nodiscard]] BoundCode fracton_code(FractonModel model, std::size_t L);

/// L independent 2D toric codes in the planes z = 0..L-1 of the L^3 torus.
[[nodiscard]] BoundCode stacked_layers(std::size_t L);

/// Named code families with their layouts:
///   toric2, toric3   toric_code(2 or 3, L)
///   stacked          stacked_layers(L)
///   xcube, cubic1, checkerboard   fracton_code(model, L)
///   sphere-surface   surface_code_on_complex(tetrahedron boundary), L ignored
[[nodiscard]] BoundCode code_family(std::string_view name, std::size_t L);

/// Spatial dimension of a named family; throws InputError for unknown names.
[[nodiscard]] std::size_t family_dimension(std::string_view name);

/// Text form: "n m" then one generator per line over {I, X, Y, Z}.
void write_code(std::ostream& out, const StabilizerCode& code);
[[nodiscard]] StabilizerCode read_code(std::istream& in);

}  // namespace degbound
