#pragma once

#include "degbound/layout.hpp"
#include "degbound/stabilizer.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace degbound {

/// Entropies below refer to the maximally mixed state on the code space,
/// purified by a reference system R of log2 D qubits. All values are in bits.

/// S(rho^X) = |X| - log2 |{stabilizer elements supported on X}|.
[[nodiscard]] std::size_t stabilizer_entropy(const StabilizerCode& code, const QuditSet& X);

/// I(X:R) = S(X) + S(R) - S(XR), with S(R) = log2 D and S(XR) = S(X^c).
[[nodiscard]] std::size_t mutual_info_with_reference(const StabilizerCode& code, const QuditSet& X);

/// The pure n + k qubit stabilizer state of code and reference: the code
/// generators plus Xbar_i X_{n+i} and Zbar_i Z_{n+i} for each logical pair.
[[nodiscard]] StabilizerCode purified_state(const StabilizerCode& code);

/// Entropy of X together with the reference, computed on the purified state.
[[nodiscard]] std::size_t entropy_with_reference(const StabilizerCode& code, const QuditSet& X);

struct LedgerEntry {
    std::string step;
    std::string lhs_label;
    long long lhs = 0;
    std::string relation;  // "=" or "<="
    std::string rhs_label;
    long long rhs = 0;
    bool evaluated = true;  // false when skipped after a failed hypothesis
    [[nodiscard]] bool holds() const;
};

enum class ChainStatus { verified, hypothesis_failed, failed };

[[nodiscard]] std::string to_string(ChainStatus s);

struct EntropyReport {
    std::vector<std::pair<std::string, long long>> entropies;
    std::vector<std::pair<std::string, long long>> mutual_informations;
    std::vector<LedgerEntry> ledger;
    bool correctable_A = true;
    bool correctable_B = true;
    ChainStatus status = ChainStatus::verified;
    std::vector<std::string> notes;

    [[nodiscard]] bool passed() const { return status == ChainStatus::verified; }
    void write_text(std::ostream& out) const;
};

/// Evaluates every step of the entropic argument that correctable A and B
/// force log2 D = S(ABC) <= S(C) <= |C|. Throws InputError unless A, B, C
/// partition the qubits. When A or B fails correctability the report says
/// which, and the steps that depend on it are recorded as skipped.
[[nodiscard]] EntropyReport verify_fact1_chain(const StabilizerCode& code, const QuditSet& A, const QuditSet& B,
                                               const QuditSet& C);

struct ApproxBound {
    double delta = 0.0;
    double prefactor = 1.0;  // 1 - 27 delta log2(1/delta)
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    bool in_regime = true;            // delta < 1/10
    bool prefactor_positive = true;   // false: the inequality is vacuous
    std::vector<std::string> flags;
};

/// (1 - 27 delta log2(1/delta)) log2_D <= log2_HC. delta = 0 reduces exactly
/// to log2_D <= log2_HC. Throws InputError unless 0 <= delta < 1.
[[nodiscard]] ApproxBound approx_bound(double delta, double log2_D, double log2_HC);

}  // namespace degbound
