#pragma once

#include "degbound/layout.hpp"
#include "degbound/stabilizer.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace degbound {

/// Raised when disjoint balls cannot be placed within the retry budget.
class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Erasure-correctability of a region for a stabilizer code.
///
/// commutant_dim is the dimension of the Paulis on the region that commute
/// with every generator; stabilizer_dim that of the stabilizer elements
/// supported on the region. The region is correctable exactly when they agree.
struct CorrectabilityVerdict {
    bool correctable = true;
    std::optional<PauliOp> witness;  // logical operator supported on the region
    std::size_t region_size = 0;
    std::size_t commutant_dim = 0;
    std::size_t stabilizer_dim = 0;
};

/// Cleaning-lemma rank test. The witness, when present, commutes with all
/// generators, is supported on the region and is not in the stabilizer group.
[[nodiscard]] CorrectabilityVerdict is_correctable(const StabilizerCode& code, const QuditSet& region);

/// Dimension of the stabilizer elements supported inside the region.
[[nodiscard]] std::size_t stabilizer_dim_on(const StabilizerCode& code, const QuditSet& region);

// ---------------------------------------------------------------- dense path

constexpr std::size_t dense_qubit_cap = 12;

/// Orthonormal basis of the code space as state vectors. Qubit i is bit i of
/// the basis-state index. Generators are taken as Hermitian Pauli products
/// (Y where both x and z are set). Throws InputError above dense_qubit_cap
/// qubits, ValidationError when the joint +1 eigenspace has the wrong size.
[[nodiscard]] std::vector<Eigen::VectorXcd> code_space_basis(const StabilizerCode& code);

struct KnillLaflammeVerdict {
    bool consistent = true;
    std::optional<std::string> violator;  // first Pauli on the region failing the criterion
    /// c(O) for every Pauli O on the region (in enumeration order) when consistent.
    std::vector<std::pair<std::string, std::complex<double>>> scalars;
};

/// Checks P O P = c(O) P for every Pauli O on the region, to tolerance 1e-9.
/// Throws InputError when the basis is not orthonormal or too large.
[[nodiscard]] KnillLaflammeVerdict knill_laflamme_dense(const std::vector<Eigen::VectorXcd>& codewords,
                                                        std::size_t n, const QuditSet& region);

// ---------------------------------------------------------------- sweeps

struct SweepSample {
    std::vector<std::size_t> centers;
    std::size_t union_size = 0;
    std::size_t region_size = 0;
    bool shrunk = false;  // the a-neighbourhood condition removed qudits
    bool correctable = true;
    std::optional<PauliOp> witness;
};

struct SweepReport {
    std::string label;
    double ball_radius = 0.0;
    std::size_t n_balls = 0;
    std::uint64_t seed = 0;
    std::vector<SweepSample> samples;

    [[nodiscard]] std::size_t correctable_count() const;
    [[nodiscard]] std::size_t shrunk_count() const;
    [[nodiscard]] double fraction() const;
    void write_text(std::ostream& out) const;
};

struct SweepOptions {
    double ball_radius = 1.0;
    std::size_t n_balls = 1;
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    std::size_t max_attempts = 1000;
    std::string label;
};

/// Samples disjoint metric balls (centres drawn uniformly from the qudits,
/// pairwise further than a apart), takes the qudits whose a-neighbourhood
/// lies inside their union, and tests that region for correctability.
/// Throws InputError when ball_radius < a or 2 ball_radius >= L, and
/// PlacementError when a placement fails max_attempts times.
[[nodiscard]] SweepReport homogeneous_sweep(const StabilizerCode& code, const QuditLayout& layout,
                                            const SweepOptions& options);

/// Control code with a logical qubit stored on one site: Z on every other qubit.
[[nodiscard]] StabilizerCode planted_local_logical_code(std::size_t n, std::size_t site);

}  // namespace degbound
