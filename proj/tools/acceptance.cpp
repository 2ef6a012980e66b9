#include "degbound/bipartition.hpp"
#include "degbound/certificate.hpp"
#include "degbound/correctability.hpp"
#include "degbound/entropy.hpp"
#include "degbound/manifolds.hpp"
#include "degbound/stabilizer.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace degbound;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::string report;
};

class Recorder {
public:
    void check(bool ok, const std::string& what) {
        pass_ = pass_ && ok;
        out_ << (ok ? "[ok] " : "[FAIL] ") << what << '\n';
    }
    std::ostream& log() { return out_; }
    Outcome finish(std::string summary) const { return {pass_, std::move(summary), out_.str()}; }

private:
    bool pass_ = true;
    std::ostringstream out_;
};

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
    return s.str();
}

CertifyOptions named(const std::string& label) {
    CertifyOptions o;
    o.label = label;
    return o;
}

// ---------------------------------------------------------------- 1

Outcome cellulation_pipeline() {
    Recorder r;
    struct Case {
        std::string name;
        ManifoldKind kind;
        std::size_t genus;
        std::size_t refine;
    };
    const std::vector<Case> cases = {{"sphere", ManifoldKind::sphere, 1, 3},
                                     {"torus", ManifoldKind::torus, 1, 3},
                                     {"genus-2", ManifoldKind::genus_surface, 2, 3},
                                     {"klein bottle", ManifoldKind::klein_bottle, 1, 3},
                                     {"projective plane", ManifoldKind::projective_plane, 1, 3},
                                     {"3-torus", ManifoldKind::torus3, 1, 0}};
    for (const auto& c : cases) {
        ManifoldParams p;
        p.genus = c.genus;
        const auto g = general_cellulation(manifold_generator(c.kind, p));
        const auto layout = layout_from_complex(*g.cellulation.base, c.refine, 1u << 20);
        const auto rep = verify_cellulation(g.cellulation, layout, 2.0, 2.0);
        r.log() << c.name << ": M'' counts " << join(g.stats.counts_m2) << ", |N| " << g.stats.defect_weight << ", |P| "
                << g.stats.p_weight << ", qudits " << layout.size() << ", |C| " << rep.c_size << '\n';
        r.check(g.stats.boundary_verified, c.name + ": boundary(P) = N exactly");
        r.check(g.stats.matching_involution, c.name + ": partner matching perfect");
        r.check(rep.coloring_ok, c.name + ": no same-colour cells share a (d-1)-face");
        r.check(rep.passed(), c.name + ": verify_cellulation at r_skel = 2a, r_sep = 2a");
        if (rep.c_size == layout.size()) {
            r.log() << c.name << ": separation check vacuous, C holds every qudit of this layout\n";
        }
    }
    const auto cube = torus_checkerboard(3, 2);
    const auto lattice = torus_lattice_layout(3, 8, SitePlacement::edges);
    const auto rep = verify_cellulation(cube, lattice, 2.0, 2.0);
    r.log() << "3-torus checkerboard L = 8: |C| " << rep.c_size << " of " << lattice.size() << ", components "
            << rep.red_components << " red, " << rep.blue_components << " blue\n";
    r.check(rep.passed() && rep.c_size < lattice.size(), "3-torus checkerboard separation check with A, B nonempty");
    return r.finish("general path on 6 manifolds, boundary(P) = N, perfect matching, proper colouring, verified");
}

// ---------------------------------------------------------------- 2

Outcome sphere_nondegeneracy() {
    Recorder r;
    const auto s = surface_code_on_complex(manifold_generator(ManifoldKind::sphere));
    const auto p = hemisphere_partition(s.layout);
    auto cert = certify_partition(s.code, s.layout, p.A, p.B, p.C, named("sphere-surface"));
    cert.partition_kind = "hemispheres";
    cert.write_text(r.log());
    r.check(degeneracy(s.code) == 0, "log2 D = 0 on the sphere");
    r.check(cert.C.empty(), "hemisphere partition has C empty");
    r.check(cert.correctable_A && cert.correctable_B, "both hemispheres correctable");
    r.check(cert.verdict_kind == BoundVerdict::holds && cert.c_size == 0, "certificate closes 0 <= 0");
    r.check(cert.entropy && cert.entropy->passed(), "entropy ledger verified");
    return r.finish("sphere surface code log2 D = 0, hemisphere certificate 0 <= |C| = 0");
}

// ---------------------------------------------------------------- 3

Outcome constancy_2d() {
    Recorder r;
    std::vector<std::size_t> cs;
    for (std::size_t L : {4, 6, 8}) {
        const auto t = toric_code(2, L);
        const auto cert = certify_degeneracy_bound(t.code, t.layout, torus_checkerboard(2, 2), 1.0, named("toric2"));
        r.log() << "toric2 L = " << L << ": log2 D " << cert.log2_degeneracy << ", |A| " << cert.A.size() << ", |B| "
                << cert.B.size() << ", |C| " << cert.c_size << ", verdict " << to_string(cert.verdict_kind) << '\n';
        r.check(cert.log2_degeneracy == 2, "log2 D = 2 at L = " + std::to_string(L));
        r.check(cert.verdict_kind == BoundVerdict::holds, "2 <= |C| certified at L = " + std::to_string(L));
        cs.push_back(cert.c_size);
    }
    r.check(cs[0] == cs[1] && cs[1] == cs[2], "|C| constant in L at the fixed 2x2 checkerboard, r_skel = a");
    return r.finish("toric2 L in {4,6,8}: log2 D = 2, |C| = " + std::to_string(cs[0]) + " for every L");
}

// ---------------------------------------------------------------- 4

Outcome scaling_3d() {
    Recorder r;
    for (std::size_t L : {3, 4, 5}) {
        const std::size_t k = degeneracy(stacked_layers(L).code);
        r.log() << "stacked L = " << L << ": log2 D " << k << '\n';
        r.check(k == 2 * L, "stacked log2 D = 2L at L = " + std::to_string(L));
    }
    std::vector<double> xs, ks;
    for (std::size_t L : {3, 4, 5}) {
        xs.push_back(static_cast<double>(L));
        ks.push_back(static_cast<double>(degeneracy(fracton_code(FractonModel::xcube, L).code)));
        r.log() << "xcube L = " << L << ": log2 D " << ks.back() << '\n';
    }
    r.check(ks[0] < ks[1] && ks[1] < ks[2], "xcube log2 D strictly increasing");
    const double mx = (xs[0] + xs[1] + xs[2]) / 3.0, mk = (ks[0] + ks[1] + ks[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        sxy += (xs[i] - mx) * (ks[i] - mk);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx, icpt = mk - slope * mx;
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(ks[i] - (slope * xs[i] + icpt)));
    r.log() << "xcube linear fit: slope " << slope << ", intercept " << icpt << ", max residual " << worst << '\n';
    r.check(worst <= 1.0, "xcube linear fit residual <= 1 bit");

    for (const std::string family : {"stacked", "xcube"}) {
        std::vector<std::size_t> cs;
        for (std::size_t L : {4, 6, 8}) {
            const auto bc = code_family(family, L);
            const auto cert =
                certify_degeneracy_bound(bc.code, bc.layout, torus_checkerboard(3, 2), 1.0, named(family));
            r.log() << family << " L = " << L << ": log2 D " << cert.log2_degeneracy << " <= |C| " << cert.c_size
                    << ", |C|/L " << cert.c_per_length() << ", saturation " << cert.saturation().value_or(0.0)
                    << '\n';
            r.check(cert.verdict_kind == BoundVerdict::holds,
                    family + " certificate holds at L = " + std::to_string(L));
            cs.push_back(cert.c_size);
        }
        r.check(cs[1] > cs[0] && cs[1] - cs[0] == cs[2] - cs[1],
                family + " |C| grows linearly in L (equal increments over L = 4, 6, 8)");
    }
    r.log() << "L = 3 admits no 2-block checkerboard partition at r_skel >= a (C covers every qudit)\n";
    return r.finish("stacked log2 D = 2L; xcube increasing with exact linear fit; certificates log2 D <= |C| = Theta(L)");
}

// ---------------------------------------------------------------- 5

Outcome genus_scaling() {
    Recorder r;
    std::vector<std::vector<std::size_t>> counts;
    for (std::size_t g : {1, 2, 3}) {
        ManifoldParams p;
        p.genus = g;
        const auto K = manifold_generator(ManifoldKind::genus_surface, p);
        const std::size_t k = degeneracy(surface_code_on_complex(K).code);
        counts.push_back(K.counts());
        r.log() << "genus " << g << ": counts " << join(K.counts()) << ", log2 D " << k << '\n';
        r.check(k == 2 * g, "log2 D = 2g at g = " + std::to_string(g));
    }
    bool linear = true;
    for (std::size_t d = 0; d < counts[0].size(); ++d) {
        const long long d1 = static_cast<long long>(counts[1][d]) - static_cast<long long>(counts[0][d]);
        const long long d2 = static_cast<long long>(counts[2][d]) - static_cast<long long>(counts[1][d]);
        linear = linear && d2 <= d1;
    }
    r.check(linear, "simplex counts grow at most linearly in g");
    return r.finish("genus g in {1,2,3}: log2 D = 2g, triangulation size linear in g");
}

// ---------------------------------------------------------------- 6

StabilizerCode from_strings(const std::vector<std::string>& gens) {
    std::vector<PauliOp> ops;
    for (const auto& g : gens) ops.push_back(PauliOp::from_string(g));
    return build_code(gens.front().size(), ops);
}

Outcome oracle_equivalence() {
    Recorder r;
    const std::vector<std::pair<std::string, StabilizerCode>> codes = {
        {"repetition-3", from_strings({"ZZI", "IZZ"})},
        {"five-qubit", from_strings({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})},
        {"steane", from_strings({"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"})},
        {"four-two-two", from_strings({"XXXX", "ZZZZ"})},
        {"toric-2x2", toric_code(2, 2).code},
        {"bell", from_strings({"XX", "ZZ"})},
        {"sphere-surface", surface_code_on_complex(manifold_generator(ManifoldKind::sphere)).code},
    };
    std::mt19937_64 rng(20240601);
    std::size_t total = 0, agree = 0, correctable = 0;
    for (const auto& [name, code] : codes) {
        const auto basis = code_space_basis(code);
        std::size_t local_agree = 0;
        for (int t = 0; t < 32; ++t) {
            QuditSet region;
            for (std::size_t q = 0; q < code.size(); ++q) {
                if (rng() % 2) region.push_back(q);
            }
            while (region.size() > 6) region.erase(region.begin() + static_cast<long>(rng() % region.size()));
            const bool rank = is_correctable(code, region).correctable;
            const bool kl = knill_laflamme_dense(basis, code.size(), region).consistent;
            ++total;
            local_agree += rank == kl ? 1 : 0;
            correctable += rank ? 1 : 0;
        }
        agree += local_agree;
        r.log() << name << ": " << local_agree << "/32 agree\n";
    }
    r.log() << "regions " << total << ", correctable " << correctable << '\n';
    r.check(total >= 200, "at least 200 random regions");
    r.check(agree == total, "cleaning-lemma verdict equals the dense Knill-Laflamme verdict on every region");
    return r.finish(std::to_string(agree) + "/" + std::to_string(total) +
                    " regions agree (codes with at most 8 qubits)");
}

// ---------------------------------------------------------------- 7

Outcome entropic_chain() {
    Recorder r;
    const auto t = toric_code(2, 8);
    const auto p = abc_partition(torus_checkerboard(2, 2), t.layout, 2.0);
    const auto report = verify_fact1_chain(t.code, p.A, p.B, p.C);
    report.write_text(r.log());
    bool all = true;
    for (const auto& e : report.ledger) all = all && e.evaluated && e.holds();
    r.check(all, "every ledger step evaluated and holds");
    r.check(report.mutual_informations[0].second == 0 && report.mutual_informations[1].second == 0,
            "I(A:R) = I(B:R) = 0");
    r.check(report.passed(), "S(ABC) <= S(C) <= |C|");
    return r.finish("toric2 L = 8 certified partition: ledger verified, log2 D = 2 <= |C| = " +
                    std::to_string(p.C.size()));
}

// ---------------------------------------------------------------- 8

Outcome sweeps() {
    Recorder r;
    struct Run {
        std::string family;
        std::size_t L, balls;
        double radius;
    };
    const std::vector<Run> runs = {{"toric2", 8, 2, 2.0}, {"toric3", 4, 1, 1.0}, {"toric3", 4, 1, 1.9},
                                   {"xcube", 4, 1, 1.0},  {"xcube", 4, 1, 1.9}};
    for (const auto& run : runs) {
        const auto bc = code_family(run.family, run.L);
        SweepOptions o;
        o.ball_radius = run.radius;
        o.n_balls = run.balls;
        o.samples = 50;
        o.seed = 7;
        o.label = run.family;
        const auto rep = homogeneous_sweep(bc.code, bc.layout, o);
        std::size_t region_total = 0;
        for (const auto& s : rep.samples) region_total += s.region_size;
        r.log() << run.family << " L = " << run.L << ", " << run.balls << " ball(s) of radius " << run.radius << ": "
                << rep.correctable_count() << "/" << rep.samples.size() << " correctable, mean region "
                << static_cast<double>(region_total) / static_cast<double>(rep.samples.size()) << ", shrunk "
                << rep.shrunk_count() << '\n';
        r.check(rep.samples.size() >= 50 && rep.fraction() == 1.0, run.family + " fraction 1.0");
    }
    const auto t = toric_code(2, 8);
    const auto control = planted_local_logical_code(t.code.size(), 3);
    SweepOptions o;
    o.ball_radius = 2.0;
    o.n_balls = 2;
    o.samples = 50;
    o.seed = 7;
    o.label = "planted";
    const auto rep = homogeneous_sweep(control, t.layout, o);
    r.log() << "planted control: " << rep.correctable_count() << "/" << rep.samples.size() << " correctable\n";
    r.check(rep.fraction() < 1.0, "planted control fraction < 1.0");
    bool witnesses_ok = true;
    for (const auto& s : rep.samples) {
        if (s.correctable) continue;
        if (!s.witness) {
            witnesses_ok = false;
            continue;
        }
        for (const auto& g : control.generators()) witnesses_ok = witnesses_ok && s.witness->commutes(g);
        bool logical = false;
        for (const auto& l : logical_generators(control)) logical = logical || s.witness->anticommutes(l);
        witnesses_ok = witnesses_ok && logical && s.witness->support() == std::vector<std::size_t>{3};
    }
    r.check(witnesses_ok, "every control witness is a nontrivial logical on the planted site");
    return r.finish("toric2, toric3, xcube sweeps all correctable; planted control fraction " +
                    std::to_string(rep.fraction()));
}

// ---------------------------------------------------------------- 9

Outcome approximate() {
    Recorder r;
    std::mt19937_64 rng(77);
    bool exact = true;
    for (int t = 0; t < 100; ++t) {
        const long long k = static_cast<long long>(rng() % 64);
        const long long c = static_cast<long long>(rng() % 64);
        const long long logq = 1 + static_cast<long long>(rng() % 3);
        const auto b = approx_bound(0.0, static_cast<double>(k), static_cast<double>(c * logq));
        exact = exact && b.lhs == static_cast<double>(k) && b.prefactor == 1.0 && b.holds == (k <= c * logq);
    }
    r.check(exact, "delta = 0 reproduces log2 D <= |C| log2 q on 100 random integer triples");
    const double milli = 0.7309238243141236498225041262;
    const double centi = -0.7938411712391756678499724919;
    const auto bm = approx_bound(1e-3, 100.0, 80.0);
    const auto bc = approx_bound(1e-2, 100.0, 80.0);
    r.log().precision(17);
    r.log() << "prefactor(1e-3) = " << bm.prefactor << ", lhs at log2 D = 100: " << bm.lhs << '\n'
            << "prefactor(1e-2) = " << bc.prefactor << '\n';
    r.check(std::abs(bm.prefactor - milli) <= 1e-12, "prefactor at delta = 1e-3 matches to 1e-12");
    r.check(std::abs(bc.prefactor - centi) <= 1e-12, "prefactor at delta = 1e-2 matches to 1e-12");
    const auto tenth = approx_bound(0.1, 100.0, 80.0);
    for (const auto& f : tenth.flags) r.log() << "delta = 0.1 flag: " << f << '\n';
    r.check(!tenth.in_regime && !tenth.flags.empty(), "delta = 0.1 flagged outside the stated regime");
    return r.finish("delta = 0 exact on 100 triples; prefactors within 1e-12; delta = 0.1 flagged");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"cellulation pipeline", cellulation_pipeline},
        {"sphere nondegeneracy", sphere_nondegeneracy},
        {"2D constancy", constancy_2d},
        {"3D scaling and saturation", scaling_3d},
        {"genus scaling", genus_scaling},
        {"oracle equivalence", oracle_equivalence},
        {"entropic proof verification", entropic_chain},
        {"homogeneous sweeps", sweeps},
        {"approximate bound", approximate},
    };

    const char* dir = std::getenv("DEGBOUND_OUT_DIR");
    bool all = true;
    std::vector<std::string> first;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), std::string("exception: ") + e.what() + "\n"};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.pass;
        first.push_back(o.report);
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.summary << " [" << static_cast<long>(secs * 1000.0) << " ms]\n";
        if (!o.pass) std::cout << o.report;
        if (dir && *dir) {
            std::filesystem::create_directories(dir);
            std::ofstream(std::filesystem::path(dir) / ("acceptance-" + std::to_string(i + 1) + ".txt")) << o.report;
        }
    }

    std::size_t identical = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string again;
        try {
            again = criteria[i].second().report;
        } catch (const std::exception& e) {
            again = std::string("exception: ") + e.what() + "\n";
        }
        identical += again == first[i] ? 1 : 0;
    }
    const bool deterministic = identical == criteria.size();
    all = all && deterministic;
    std::cout << (deterministic ? "PASS" : "FAIL") << " criterion 10 (determinism): " << identical << "/"
              << criteria.size() << " reports byte-identical on a second run\n";
    return all ? 0 : 1;
}
