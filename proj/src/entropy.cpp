#include "degbound/entropy.hpp"

#include "degbound/correctability.hpp"

#include <cmath>
#include <ostream>

namespace degbound {

namespace {

PauliOp widen(const PauliOp& p, std::size_t size) {
    PauliOp out(size);
    for (std::size_t i : p.x.ones()) out.x.set(i);
    for (std::size_t i : p.z.ones()) out.z.set(i);
    return out;
}

QuditSet complement_of(const QuditSet& X, std::size_t n) {
    QuditSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return set_difference(all, X);
}

QuditSet with_reference(const QuditSet& X, std::size_t n, std::size_t k) {
    QuditSet out = X;
    for (std::size_t i = 0; i < k; ++i) out.push_back(n + i);
    return out;
}

long long as_signed(std::size_t v) { return static_cast<long long>(v); }

}  // namespace

std::size_t stabilizer_entropy(const StabilizerCode& code, const QuditSet& X) {
    const QuditSet region = make_qudit_set(X);
    return region.size() - stabilizer_dim_on(code, region);
}

std::size_t mutual_info_with_reference(const StabilizerCode& code, const QuditSet& X) {
    const QuditSet region = make_qudit_set(X);
    return stabilizer_entropy(code, region) + degeneracy(code) -
           stabilizer_entropy(code, complement_of(region, code.size()));
}

StabilizerCode purified_state(const StabilizerCode& code) {
    const std::size_t n = code.size();
    const auto logicals = logical_generators(code);
    const std::size_t k = logicals.size() / 2;
    std::vector<PauliOp> gens;
    gens.reserve(code.generators().size() + logicals.size());
    for (const auto& g : code.generators()) gens.push_back(widen(g, n + k));
    for (std::size_t i = 0; i < k; ++i) {
        PauliOp xbar = widen(logicals[2 * i], n + k);
        PauliOp zbar = widen(logicals[2 * i + 1], n + k);
        xbar.x.set(n + i);
        zbar.z.set(n + i);
        gens.push_back(std::move(xbar));
        gens.push_back(std::move(zbar));
    }
    return build_code(n + k, std::move(gens));
}

std::size_t entropy_with_reference(const StabilizerCode& code, const QuditSet& X) {
    const StabilizerCode pure = purified_state(code);
    const std::size_t k = pure.size() - code.size();
    return stabilizer_entropy(pure, with_reference(make_qudit_set(X), code.size(), k));
}

bool LedgerEntry::holds() const {
    if (!evaluated) return true;
    return relation == "=" ? lhs == rhs : lhs <= rhs;
}

std::string to_string(ChainStatus s) {
    switch (s) {
        case ChainStatus::verified:
            return "verified";
        case ChainStatus::hypothesis_failed:
            return "hypothesis failed";
        case ChainStatus::failed:
            return "FAILED";
    }
    return "unknown";
}

void EntropyReport::write_text(std::ostream& out) const {
    out << "entropy units: bits (log base 2)\n";
    for (const auto& [name, v] : entropies) out << "S(" << name << ") = " << v << '\n';
    for (const auto& [name, v] : mutual_informations) out << "I(" << name << ":R) = " << v << '\n';
    out << "A correctable: " << (correctable_A ? "yes" : "no") << '\n'
        << "B correctable: " << (correctable_B ? "yes" : "no") << '\n';
    for (const auto& e : ledger) {
        out << "[" << (!e.evaluated ? "skipped" : e.holds() ? "ok" : "FAILED") << "] " << e.step << ": " << e.lhs_label
            << " " << e.relation << " " << e.rhs_label;
        if (e.evaluated) out << "  (" << e.lhs << " " << e.relation << " " << e.rhs << ")";
        out << '\n';
    }
    for (const auto& note : notes) out << "note: " << note << '\n';
    out << "status: " << to_string(status) << '\n';
}

EntropyReport verify_fact1_chain(const StabilizerCode& code, const QuditSet& A_in, const QuditSet& B_in,
                                 const QuditSet& C_in) {
    const std::size_t n = code.size();
    const QuditSet A = make_qudit_set(A_in), B = make_qudit_set(B_in), C = make_qudit_set(C_in);
    if (A.size() + B.size() + C.size() != A_in.size() + B_in.size() + C_in.size()) {
        throw InputError("partition regions contain repeated qudits");
    }
    if (!set_intersection(A, B).empty() || !set_intersection(A, C).empty() || !set_intersection(B, C).empty()) {
        throw InputError("A, B and C must be disjoint");
    }
    if (A.size() + B.size() + C.size() != n || (!A.empty() && A.back() >= n) || (!B.empty() && B.back() >= n) ||
        (!C.empty() && C.back() >= n)) {
        throw InputError("A, B and C must cover exactly the code's qubits");
    }

    const StabilizerCode pure = purified_state(code);
    const std::size_t k = pure.size() - n;
    const auto S = [&](const QuditSet& X) { return as_signed(stabilizer_entropy(code, X)); };
    const auto SR = [&](const QuditSet& X) { return as_signed(stabilizer_entropy(pure, with_reference(X, n, k))); };

    const QuditSet AC = set_union(A, C), BC = set_union(B, C), ABC = set_union(AC, B);
    const long long sA = S(A), sB = S(B), sC = S(C), sAC = S(AC), sBC = S(BC), sABC = S(ABC);
    const long long sR = as_signed(stabilizer_entropy(pure, with_reference({}, n, k)));
    const long long sAR = SR(A), sBR = SR(B);
    const long long log2D = as_signed(degeneracy(code));

    EntropyReport r;
    r.entropies = {{"A", sA}, {"B", sB}, {"C", sC}, {"AC", sAC}, {"BC", sBC}, {"ABC", sABC}, {"R", sR}, {"AR", sAR},
                   {"BR", sBR}};
    const long long iA = sA + sR - sAR, iB = sB + sR - sBR;
    r.mutual_informations = {{"A", iA}, {"B", iB}};
    r.correctable_A = is_correctable(code, A).correctable;
    r.correctable_B = is_correctable(code, B).correctable;

    const bool hyp_A = iA == 0, hyp_B = iB == 0;
    if ((iA == 0) != r.correctable_A || (iB == 0) != r.correctable_B) {
        r.notes.push_back("entropic and rank-based correctability disagree");
    }
    if (!hyp_A) r.notes.push_back("hypothesis failed: A is not correctable, I(A:R) = " + std::to_string(iA));
    if (!hyp_B) r.notes.push_back("hypothesis failed: B is not correctable, I(B:R) = " + std::to_string(iB));
    const bool hyps = hyp_A && hyp_B;

    auto add = [&](std::string step, std::string ll, long long l, std::string rel, std::string rl, long long rv,
                   bool evaluated = true) {
        r.ledger.push_back({std::move(step), std::move(ll), l, std::move(rel), std::move(rl), rv, evaluated});
    };
    add("correctable A decouples from R", "I(A:R)", iA, "=", "0", 0);
    add("correctable B decouples from R", "I(B:R)", iB, "=", "0", 0);
    add("reference entropy", "S(R)", sR, "=", "log2 D", log2D);
    add("purity", "S(ABC)", sABC, "=", "S(R)", sR);
    add("purity substitution", "S(AR)", sAR, "=", "S(BC)", sBC);
    add("purity substitution", "S(BR)", sBR, "=", "S(AC)", sAC);
    add("subadditivity", "S(AC) + S(BC)", sAC + sBC, "<=", "S(A) + S(B) + 2 S(C)", sA + sB + 2 * sC);
    add("decoupling substituted", "S(A) + S(B) + 2 S(R)", sA + sB + 2 * sR, "<=", "S(A) + S(B) + 2 S(C)",
        sA + sB + 2 * sC, hyps);
    add("conclusion", "log2 D = S(ABC)", sABC, "<=", "S(C)", sC, hyps);
    add("dimension bound", "S(C)", sC, "<=", "|C|", as_signed(C.size()));
    add("degeneracy bound", "log2 D", log2D, "<=", "|C|", as_signed(C.size()), hyps);

    bool all_hold = true;
    for (std::size_t i = 2; i < r.ledger.size(); ++i) all_hold = all_hold && r.ledger[i].holds();
    r.status = !all_hold ? ChainStatus::failed : hyps ? ChainStatus::verified : ChainStatus::hypothesis_failed;
    return r;
}

ApproxBound approx_bound(double delta, double log2_D, double log2_HC) {
    if (!(delta >= 0.0 && delta < 1.0)) throw InputError("delta must lie in [0, 1)");
    ApproxBound b;
    b.delta = delta;
    b.prefactor = delta == 0.0 ? 1.0 : 1.0 - 27.0 * delta * std::log2(1.0 / delta);
    b.lhs = delta == 0.0 ? log2_D : b.prefactor * log2_D;
    b.rhs = log2_HC;
    b.holds = b.lhs <= b.rhs;
    b.in_regime = delta < 0.1;
    b.prefactor_positive = b.prefactor > 0.0;
    if (!b.in_regime) b.flags.push_back("outside the stated regime delta < 1/10");
    if (!b.prefactor_positive) b.flags.push_back("delta not sufficiently small: prefactor is not positive, bound is vacuous");
    return b;
}

}  // namespace degbound
