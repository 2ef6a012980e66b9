#pragma once

#include "degbound/bipartition.hpp"
#include "degbound/entropy.hpp"
#include "degbound/layout.hpp"
#include "degbound/stabilizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace degbound {

/// Raised when the skeleton neighbourhood C swallows every qudit.
class InfeasiblePartitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BoundVerdict { holds, violated, not_applicable };

[[nodiscard]] std::string to_string(BoundVerdict v);

struct BoundCertificate {
    std::string label;
    double L = 0.0;
    double a = 1.0;
    std::optional<double> r_skel;
    std::optional<std::uint64_t> seed;
    std::string partition_kind;  // "cellulation" or "hemispheres" or "explicit"

    QuditSet A, B, C;
    bool correctable_A = true;
    bool correctable_B = true;
    std::optional<std::string> witness_A;  // Pauli string
    std::optional<std::string> witness_B;
    std::size_t log2_degeneracy = 0;
    std::size_t c_size = 0;
    BoundVerdict verdict_kind = BoundVerdict::not_applicable;
    std::optional<EntropyReport> entropy;

    /// (A and B correctable) implies log2 D <= |C| log2 q, with q = 2.
    [[nodiscard]] bool verdict() const { return verdict_kind != BoundVerdict::violated; }
    /// log2 D / |C|, or nothing when C is empty.
    [[nodiscard]] std::optional<double> saturation() const;
    /// |C| / L.
    [[nodiscard]] double c_per_length() const;

    void write_text(std::ostream& out) const;
    [[nodiscard]] std::string to_json() const;
};

struct CertifyOptions {
    std::string label;
    std::optional<std::uint64_t> seed;
    bool with_entropy = true;
};

/// Certificate for an explicit partition of the code's qubits. Throws
/// InputError unless A, B, C partition the qubits.
[[nodiscard]] BoundCertificate certify_partition(const StabilizerCode& code, const QuditLayout& layout,
                                                 const QuditSet& A, const QuditSet& B, const QuditSet& C,
                                                 const CertifyOptions& options = {});

/// Partition from a verified cellulation at skeleton radius r_skel, then the
/// certificate. Throws ContractError when the cellulation does not verify and
/// InfeasiblePartitionError when C is every qudit.
[[nodiscard]] BoundCertificate certify_degeneracy_bound(const StabilizerCode& code, const QuditLayout& layout,
                                                        const Cellulation& cellulation, double r_skel,
                                                        const CertifyOptions& options = {});

/// Two "hemispheres" and an empty C: qudits sorted by distance from qudit 0
/// (ties by id); the nearer half (rounded up) is A, the rest B.
[[nodiscard]] AbcPartition hemisphere_partition(const QuditLayout& layout);

}  // namespace degbound
