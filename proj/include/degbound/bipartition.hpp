#pragma once

#include "degbound/layout.hpp"
#include "degbound/simplicial.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace degbound {

/// Raised when a function is called without its stated precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Color { red, blue };

enum class CellKind {
    simplex_pair,  // two top simplices glued along one (d-1)-face
    simplex,       // a single top simplex (orientable shortcut)
    cube,          // one block of the cubical checkerboard
};

struct Cell {
    CellKind kind = CellKind::simplex_pair;
    Color color = Color::blue;
    /// Top-simplex indices of the base complex (simplex cells).
    std::vector<std::size_t> simplices;
    /// Index of the shared (d-1)-face (simplex_pair cells).
    std::size_t shared_face = npos;
    /// Block coordinates (cube cells).
    std::vector<std::size_t> block;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// A two-coloured decomposition of a closed d-manifold into ball-like cells.
/// Simplicial cellulations live on a complex `base`; cubical ones on the flat
/// d-torus cut into blocks^d equal cubes. The skeleton is always the union of
/// all faces of dimension <= d-2.
struct Cellulation {
    std::size_t dim = 0;
    std::vector<Cell> cells;

    // simplicial cellulations
    std::optional<SimplicialComplex> base;
    std::vector<std::size_t> cell_of_simplex;
    /// Null-homology witness and target: boundary(P) == N.
    std::optional<Chain> P;
    std::optional<Chain> N;

    // cubical cellulations
    std::size_t blocks = 0;

    [[nodiscard]] bool is_cubical() const { return blocks > 0; }
    [[nodiscard]] std::size_t count(Color c) const;
};

/// N = (sum of all (d-1)-simplices of M2) + B(sum of all (d-1)-simplices of M1),
/// where sub subdivides M1 into M2.
[[nodiscard]] Chain defect_chain(const SimplicialComplex& m1, const Subdivision& sub);

/// partner[s] for every top simplex s of m2: the top simplex across the unique
/// face of s lying in delta_image. Throws ValidationError when some top simplex
/// does not have exactly one such face.
[[nodiscard]] std::vector<std::size_t> partner_matching(const SimplicialComplex& m2, const Chain& delta_image);

/// Solves boundary(P) = N on m2 and colours the matched pairs inside P red and
/// the rest blue. Throws ValidationError when N is not null-homologous or P
/// splits a matched pair.
[[nodiscard]] Cellulation two_color(const SimplicialComplex& m2, const Chain& N,
                                    const std::vector<std::size_t>& matching);

/// Orientable shortcut: on a single barycentric subdivision m1, solves
/// boundary(P) = (all (d-1)-simplices) and uses single top simplices as cells.
/// Throws ValidationError when the target is not null-homologous.
[[nodiscard]] Cellulation two_color_orientable(const SimplicialComplex& m1);

/// Statistics of one run of the general construction.
struct PipelineStats {
    std::vector<std::size_t> counts_m;
    std::vector<std::size_t> counts_m1;
    std::vector<std::size_t> counts_m2;
    std::size_t delta_weight = 0;        // |B(all (d-1)-simplices of M1)|
    std::size_t defect_weight = 0;       // |N|
    std::size_t p_weight = 0;            // |P|
    bool boundary_verified = false;      // boundary(P) == N recomputed
    bool matching_involution = false;    // partner(partner(s)) == s for all s
};

struct GeneralCellulation {
    Cellulation cellulation;
    PipelineStats stats;
};

/// Subdivide twice, build the defect chain, pair the top simplices and colour.
[[nodiscard]] GeneralCellulation general_cellulation(const SimplicialComplex& m);

/// Checkerboard of blocks^d cubes on the flat d-torus, coloured red when the
/// block coordinate sum is even. Throws InputError for odd or zero blocks.
[[nodiscard]] Cellulation torus_checkerboard(std::size_t dim, std::size_t blocks);

/// Outcome of verify_cellulation.
struct CellulationReport {
    bool cells_ok = true;       // every cell is a glued pair, a single simplex or a cube
    bool coloring_ok = true;    // no same-colour cells share a (d-1)-face
    bool boundary_ok = true;    // boundary(P) == N (simplicial cellulations that carry P)
    bool separation_ok = true;  // components separated and each inside one cell
    std::size_t red_cells = 0;
    std::size_t blue_cells = 0;
    std::size_t skeleton_qudits = 0;
    std::size_t c_size = 0;
    std::size_t red_components = 0;
    std::size_t blue_components = 0;
    double r_skel = 0.0;
    double r_sep = 0.0;
    std::vector<std::string> problems;

    [[nodiscard]] bool passed() const { return cells_ok && coloring_ok && boundary_ok && separation_ok; }
    void write_text(std::ostream& out) const;
};

/// Cell of each qudit of the layout and its distance to the skeleton. Qudits
/// within a/2 of the skeleton get no cell; qudits on a face between a red and
/// a blue cell go to the red one.
///
/// On flat tori the distance is Euclidean. On meshes a qudit sits at its edge
/// midpoint, so it is 0 from the skeleton when its edge lies in the skeleton
/// and otherwise a/2 plus the hop distance from its nearer endpoint to the
/// nearest skeleton vertex.
struct QuditCells {
    std::vector<std::size_t> cell;             // Cell::npos for skeleton qudits
    std::vector<double> skeleton_distance;
    QuditSet skeleton;                         // qudits within a/2 of the skeleton

    /// Qudits within distance r of the skeleton.
    [[nodiscard]] QuditSet near_skeleton(double r) const;
};

[[nodiscard]] QuditCells assign_qudits(const Cellulation& c, const QuditLayout& layout);

/// Checks the cells, the colouring and, after deleting the qudits within r_skel
/// of the skeleton, that same-colour qudit components (linked at
/// distance <= a) lie in single cells and are at least r_sep apart.
[[nodiscard]] CellulationReport verify_cellulation(const Cellulation& c, const QuditLayout& layout,
                                                   double r_skel, double r_sep);

struct AbcPartition {
    QuditSet A;  // red-cell qudits outside C
    QuditSet B;  // blue-cell qudits outside C
    QuditSet C;  // qudits within r_skel of the skeleton
};

/// A/B/C split of the qudits. Throws ContractError unless verify_cellulation
/// passes at (r_skel, r_sep = 2a).
[[nodiscard]] AbcPartition abc_partition(const Cellulation& c, const QuditLayout& layout, double r_skel);

/// OFF export of a simplicial cellulation of dimension 2 or 3: every triangle
/// in its cell colour (d = 2), or only the red/blue interface triangles (d = 3).
void write_cellulation_off(std::ostream& out, const Cellulation& c);

}  // namespace degbound
