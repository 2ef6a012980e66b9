#include "degbound/certificate.hpp"

#include "degbound/correctability.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace degbound {

std::string to_string(BoundVerdict v) {
    switch (v) {
        case BoundVerdict::holds:
            return "holds";
        case BoundVerdict::violated:
            return "violated";
        case BoundVerdict::not_applicable:
            return "bound not applicable";
    }
    return "unknown";
}

std::optional<double> BoundCertificate::saturation() const {
    if (c_size == 0) return std::nullopt;
    return static_cast<double>(log2_degeneracy) / static_cast<double>(c_size);
}

double BoundCertificate::c_per_length() const { return L > 0.0 ? static_cast<double>(c_size) / L : 0.0; }

void BoundCertificate::write_text(std::ostream& out) const {
    out << "certificate: " << label << '\n'
        << "partition: " << partition_kind << '\n'
        << "L: " << L << '\n'
        << "a: " << a << '\n';
    if (r_skel) out << "r_skel: " << *r_skel << '\n';
    if (seed) out << "seed: " << *seed << '\n';
    out << "|A|: " << A.size() << '\n'
        << "|B|: " << B.size() << '\n'
        << "|C|: " << c_size << '\n'
        << "A correctable: " << (correctable_A ? "yes" : "no") << '\n'
        << "B correctable: " << (correctable_B ? "yes" : "no") << '\n';
    if (witness_A) out << "witness A: " << *witness_A << '\n';
    if (witness_B) out << "witness B: " << *witness_B << '\n';
    out << "log2 D: " << log2_degeneracy << '\n';
    if (log2_degeneracy == 0) {
        out << "D = 1\n";
    } else {
        out << "D = 2^" << log2_degeneracy << '\n';
    }
    out << "bound: " << log2_degeneracy << " <= |C| = " << c_size << " (q = 2)\n";
    if (const auto s = saturation()) out << "saturation log2 D / |C|: " << *s << '\n';
    out << "|C| / L: " << c_per_length() << '\n';
    out << "verdict: " << to_string(verdict_kind) << '\n';
    if (entropy) {
        out << "-- entropy ledger --\n";
        entropy->write_text(out);
    }
}

std::string BoundCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["certificate"] = label;
    j["partition"] = partition_kind;
    j["L"] = L;
    j["a"] = a;
    j["r_skel"] = r_skel ? nlohmann::ordered_json(*r_skel) : nlohmann::ordered_json(nullptr);
    j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
    j["size_A"] = A.size();
    j["size_B"] = B.size();
    j["size_C"] = c_size;
    j["correctable_A"] = correctable_A;
    j["correctable_B"] = correctable_B;
    j["witness_A"] = witness_A ? nlohmann::ordered_json(*witness_A) : nlohmann::ordered_json(nullptr);
    j["witness_B"] = witness_B ? nlohmann::ordered_json(*witness_B) : nlohmann::ordered_json(nullptr);
    j["log2_degeneracy"] = log2_degeneracy;
    j["verdict"] = to_string(verdict_kind);
    const auto s = saturation();
    j["saturation"] = s ? nlohmann::ordered_json(*s) : nlohmann::ordered_json(nullptr);
    j["c_per_length"] = c_per_length();
    if (entropy) {
        nlohmann::ordered_json e;
        e["units"] = "bits";
        for (const auto& [name, v] : entropy->entropies) e["entropies"][name] = v;
        for (const auto& [name, v] : entropy->mutual_informations) e["mutual_information_with_R"][name] = v;
        e["ledger"] = nlohmann::ordered_json::array();
        for (const auto& step : entropy->ledger) {
            e["ledger"].push_back({{"step", step.step},
                                   {"lhs", step.lhs_label},
                                   {"relation", step.relation},
                                   {"rhs", step.rhs_label},
                                   {"lhs_value", step.lhs},
                                   {"rhs_value", step.rhs},
                                   {"evaluated", step.evaluated},
                                   {"holds", step.holds()}});
        }
        e["status"] = to_string(entropy->status);
        j["entropy"] = e;
    }
    return j.dump(2) + "\n";
}

BoundCertificate certify_partition(const StabilizerCode& code, const QuditLayout& layout, const QuditSet& A,
                                   const QuditSet& B, const QuditSet& C, const CertifyOptions& options) {
    if (layout.size() != code.size()) throw InputError("layout and code sizes differ");
    BoundCertificate cert;
    cert.label = options.label;
    cert.seed = options.seed;
    cert.partition_kind = "explicit";
    cert.L = layout.diameter();
    cert.a = layout.spacing();
    cert.A = make_qudit_set(A);
    cert.B = make_qudit_set(B);
    cert.C = make_qudit_set(C);
    const std::size_t n = code.size();
    if (cert.A.size() + cert.B.size() + cert.C.size() != n ||
        set_union(set_union(cert.A, cert.B), cert.C).size() != n ||
        (n > 0 && set_union(set_union(cert.A, cert.B), cert.C).back() != n - 1)) {
        throw InputError("A, B and C must partition the code's qubits");
    }

    const auto va = is_correctable(code, cert.A);
    const auto vb = is_correctable(code, cert.B);
    cert.correctable_A = va.correctable;
    cert.correctable_B = vb.correctable;
    if (va.witness) cert.witness_A = va.witness->to_string();
    if (vb.witness) cert.witness_B = vb.witness->to_string();
    cert.log2_degeneracy = degeneracy(code);
    cert.c_size = cert.C.size();
    if (!cert.correctable_A || !cert.correctable_B) {
        cert.verdict_kind = BoundVerdict::not_applicable;
    } else {
        cert.verdict_kind = cert.log2_degeneracy <= cert.c_size ? BoundVerdict::holds : BoundVerdict::violated;
    }
    if (options.with_entropy) cert.entropy = verify_fact1_chain(code, cert.A, cert.B, cert.C);
    return cert;
}

BoundCertificate certify_degeneracy_bound(const StabilizerCode& code, const QuditLayout& layout,
                                          const Cellulation& cellulation, double r_skel,
                                          const CertifyOptions& options) {
    if (layout.size() != code.size()) throw InputError("layout and code sizes differ");
    const AbcPartition p = abc_partition(cellulation, layout, r_skel);
    if (p.C.size() == layout.size()) {
        std::ostringstream msg;
        msg << "infeasible partition: C covers all " << layout.size() << " qudits at r_skel = " << r_skel
            << "; shrink r_skel or enlarge L";
        throw InfeasiblePartitionError(msg.str());
    }
    BoundCertificate cert = certify_partition(code, layout, p.A, p.B, p.C, options);
    cert.partition_kind = "cellulation";
    cert.r_skel = r_skel;
    return cert;
}

AbcPartition hemisphere_partition(const QuditLayout& layout) {
    const std::size_t n = layout.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = layout.distance(0, i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    const std::size_t half = (n + 1) / 2;
    AbcPartition p;
    p.A = make_qudit_set({order.begin(), order.begin() + static_cast<long>(half)});
    p.B = make_qudit_set({order.begin() + static_cast<long>(half), order.end()});
    return p;
}

}  // namespace degbound
