#include "degbound/bipartition.hpp"
#include "degbound/certificate.hpp"
#include "degbound/correctability.hpp"
#include "degbound/manifolds.hpp"
#include "degbound/stabilizer.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace degbound;

namespace {

enum Exit : int {
    ok = 0,
    check_failed = 1,
    input_error = 2,
    not_applicable = 3,
    infeasible = 4,
};

struct OutputOptions {
    std::string out;
    std::string json;
};

std::optional<std::filesystem::path> resolve(const std::string& flag, const std::string& default_name) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* dir = std::getenv("DEGBOUND_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / default_name;
    return std::nullopt;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path.string());
    f << text;
}

void emit(const std::string& text, const std::string& flag, const std::string& default_name) {
    std::cout << text;
    if (const auto path = resolve(flag, default_name)) write_file(*path, text);
}

// ---------------------------------------------------------------- cellulate

struct CellulateConfig {
    std::string manifold = "torus";
    std::size_t genus = 1;
    std::string mesh;
    std::string path;
    std::size_t blocks = 0;
    std::size_t L = 8;
    int refine = -1;
    double r_skel = 2.0;
    double r_sep = 2.0;
    std::size_t density_cap = 1u << 20;
    std::string off;
    OutputOptions output;
};

int cmd_cellulate(const CellulateConfig& cfg) {
    std::ostringstream report;
    std::string path = cfg.path.empty() ? (cfg.blocks > 0 ? "checkerboard" : "general") : cfg.path;
    const std::string name = cfg.mesh.empty() ? cfg.manifold : std::filesystem::path(cfg.mesh).stem().string();
    report << "cellulate: " << name << '\n' << "path: " << path << '\n';

    Cellulation c;
    std::optional<QuditLayout> layout;
    bool pipeline_ok = true;
    if (path == "checkerboard") {
        const ManifoldKind kind = parse_manifold_kind(cfg.manifold);
        if (kind != ManifoldKind::torus && kind != ManifoldKind::torus3) {
            throw InputError("the checkerboard path needs --manifold torus or torus3");
        }
        const std::size_t dim = kind == ManifoldKind::torus ? 2 : 3;
        c = torus_checkerboard(dim, cfg.blocks == 0 ? 2 : cfg.blocks);
        layout = torus_lattice_layout(dim, cfg.L, SitePlacement::edges, cfg.density_cap);
        report << "blocks: " << c.blocks << '\n' << "L: " << cfg.L << '\n';
    } else if (path == "general" || path == "orientable") {
        SimplicialComplex M;
        if (!cfg.mesh.empty()) {
            M = SimplicialComplex::build(read_mesh_file(cfg.mesh));
        } else {
            ManifoldParams params;
            params.genus = cfg.genus;
            M = manifold_generator(parse_manifold_kind(cfg.manifold), params);
        }
        if (!M.is_closed_manifold()) throw InputError("input is not a closed manifold triangulation");
        const auto counts = [&](const std::vector<std::size_t>& v) {
            std::ostringstream s;
            for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
            return s.str();
        };
        report << "counts M: " << counts(M.counts()) << '\n';
        if (path == "general") {
            auto g = general_cellulation(M);
            report << "counts M': " << counts(g.stats.counts_m1) << '\n'
                   << "counts M'': " << counts(g.stats.counts_m2) << '\n'
                   << "weight B(Delta'): " << g.stats.delta_weight << '\n'
                   << "weight N: " << g.stats.defect_weight << '\n'
                   << "weight P: " << g.stats.p_weight << '\n'
                   << "boundary(P) = N: " << (g.stats.boundary_verified ? "verified" : "FAILED") << '\n'
                   << "partner matching: " << (g.stats.matching_involution ? "perfect" : "FAILED") << '\n';
            pipeline_ok = g.stats.boundary_verified && g.stats.matching_involution;
            c = std::move(g.cellulation);
        } else {
            c = two_color_orientable(barycentric_subdivide(M).complex);
            report << "counts M': " << counts(c.base->counts()) << '\n';
        }
        const std::size_t refine =
            cfg.refine >= 0 ? static_cast<std::size_t>(cfg.refine) : (c.dim == 2 ? std::size_t{3} : std::size_t{0});
        layout = layout_from_complex(*c.base, refine, cfg.density_cap);
        report << "layout refine: " << refine << '\n';
    } else {
        throw InputError("unknown --path '" + path + "' (general, orientable, checkerboard)");
    }

    report << "qudits: " << layout->size() << '\n'
           << "L: " << layout->diameter() << (layout->diameter_exact() ? "" : " (upper bound)") << '\n'
           << "red cells: " << c.count(Color::red) << '\n'
           << "blue cells: " << c.count(Color::blue) << '\n';
    if (layout->small_system_warning()) report << "warning: L < 10a, finite-size effects expected\n";
    const auto rep = verify_cellulation(c, *layout, cfg.r_skel, cfg.r_sep);
    rep.write_text(report);
    if (!cfg.off.empty()) {
        std::ostringstream off;
        write_cellulation_off(off, c);
        write_file(cfg.off, off.str());
    }
    emit(report.str(), cfg.output.out, "cellulate-" + name + "-" + path + ".txt");
    return rep.passed() && pipeline_ok ? ok : check_failed;
}

// ---------------------------------------------------------------- certify

struct CertifyConfig {
    std::string code = "toric2";
    std::size_t L = 0;
    std::size_t blocks = 2;
    double r_skel = 1.0;
    std::optional<std::uint64_t> seed;
    bool no_entropy = false;
    bool allow_not_applicable = false;
    OutputOptions output;
};

std::size_t default_L(const std::string& code) { return family_dimension(code) == 2 ? 8 : 4; }

int cmd_certify(const CertifyConfig& cfg) {
    const std::size_t L = cfg.L ? cfg.L : default_L(cfg.code);
    const BoundCode bc = code_family(cfg.code, L);
    CertifyOptions opt;
    opt.label = cfg.code;
    opt.seed = cfg.seed;
    opt.with_entropy = !cfg.no_entropy;

    BoundCertificate cert;
    if (cfg.code == "sphere-surface") {
        const auto p = hemisphere_partition(bc.layout);
        cert = certify_partition(bc.code, bc.layout, p.A, p.B, p.C, opt);
        cert.partition_kind = "hemispheres";
    } else {
        cert = certify_degeneracy_bound(bc.code, bc.layout, torus_checkerboard(family_dimension(cfg.code), cfg.blocks),
                                        cfg.r_skel, opt);
    }
    std::ostringstream text;
    cert.write_text(text);
    const std::string stem = "certify-" + cfg.code + "-L" + std::to_string(L);
    emit(text.str(), cfg.output.out, stem + ".txt");
    if (const auto path = resolve(cfg.output.json, stem + ".json")) write_file(*path, cert.to_json());

    switch (cert.verdict_kind) {
        case BoundVerdict::holds:
            return cert.entropy && !cert.entropy->passed() ? check_failed : ok;
        case BoundVerdict::not_applicable:
            return cfg.allow_not_applicable ? ok : not_applicable;
        case BoundVerdict::violated:
            return check_failed;
    }
    return check_failed;
}

// ---------------------------------------------------------------- sweep

struct SweepConfig {
    std::string code = "toric2";
    std::size_t L = 0;
    std::size_t balls = 1;
    double radius = 1.0;
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    std::size_t max_attempts = 1000;
    std::optional<std::size_t> planted_site;
    bool allow_failures = false;
    OutputOptions output;
};

int cmd_sweep(const SweepConfig& cfg) {
    const std::size_t L = cfg.L ? cfg.L : default_L(cfg.code);
    BoundCode bc = code_family(cfg.code, L);
    std::string label = cfg.code + " L=" + std::to_string(L);
    if (cfg.planted_site) {
        bc.code = planted_local_logical_code(bc.code.size(), *cfg.planted_site);
        label += " planted site " + std::to_string(*cfg.planted_site);
    }
    SweepOptions opt;
    opt.ball_radius = cfg.radius;
    opt.n_balls = cfg.balls;
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    opt.max_attempts = cfg.max_attempts;
    opt.label = label;
    const SweepReport report = homogeneous_sweep(bc.code, bc.layout, opt);
    std::ostringstream text;
    report.write_text(text);
    emit(text.str(), cfg.output.out, "sweep-" + cfg.code + "-L" + std::to_string(L) + "-seed" + std::to_string(cfg.seed) + ".txt");
    return report.correctable_count() == report.samples.size() || cfg.allow_failures ? ok : check_failed;
}

// ---------------------------------------------------------------- export-code

struct ExportConfig {
    std::string code = "toric2";
    std::size_t L = 0;
    OutputOptions output;
};

int cmd_export(const ExportConfig& cfg) {
    const std::size_t L = cfg.L ? cfg.L : default_L(cfg.code);
    const BoundCode bc = code_family(cfg.code, L);
    std::ostringstream text;
    write_code(text, bc.code);
    emit(text.str(), cfg.output.out, "code-" + cfg.code + "-L" + std::to_string(L) + ".txt");
    return ok;
}

const std::vector<std::string> families = {"toric2", "toric3", "stacked", "xcube", "cubic1", "checkerboard",
                                           "sphere-surface"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cellulations, erasure correctability and degeneracy-bound certificates"};
    app.require_subcommand(1);

    CellulateConfig cell;
    auto* cellulate = app.add_subcommand("cellulate", "Build and verify a red/blue cellulation");
    cellulate->add_option("--manifold", cell.manifold, "sphere, torus, torus3, genus_surface, klein_bottle, projective_plane");
    cellulate->add_option("--genus", cell.genus, "Genus for genus_surface")->check(CLI::PositiveNumber);
    cellulate->add_option("--mesh", cell.mesh, "Mesh text file (one top simplex per line)")->check(CLI::ExistingFile);
    cellulate->add_option("--path", cell.path, "general, orientable or checkerboard");
    cellulate->add_option("--blocks", cell.blocks, "Checkerboard blocks per axis (even)");
    cellulate->add_option("--L", cell.L, "Checkerboard lattice side");
    cellulate->add_option("--refine", cell.refine, "Extra subdivisions for the qudit layout");
    cellulate->add_option("--r-skel", cell.r_skel, "Skeleton radius in units of a");
    cellulate->add_option("--r-sep", cell.r_sep, "Required separation in units of a");
    cellulate->add_option("--density-cap", cell.density_cap, "Maximum qudits within distance a of a qudit");
    cellulate->add_option("--off", cell.off, "Write an OFF export of the cellulation");
    cellulate->add_option("--out", cell.output.out, "Report file");

    CertifyConfig cert;
    auto* certify = app.add_subcommand("certify", "Certify log2 D <= |C| for a code family");
    certify->add_option("--code", cert.code, "Code family")->check(CLI::IsMember(families));
    certify->add_option("--L", cert.L, "Lattice side (default 8 in 2D, 4 in 3D)");
    certify->add_option("--blocks", cert.blocks, "Checkerboard blocks per axis");
    certify->add_option("--r-skel", cert.r_skel, "Skeleton radius in units of a");
    certify->add_option("--seed", cert.seed, "Seed recorded in the certificate");
    certify->add_flag("--no-entropy", cert.no_entropy, "Skip the entropy ledger");
    certify->add_flag("--allow-not-applicable", cert.allow_not_applicable,
                      "Exit 0 when A or B is not correctable");
    certify->add_option("--out", cert.output.out, "Certificate text file");
    certify->add_option("--json", cert.output.json, "Certificate JSON file");

    SweepConfig sw;
    auto* sweep = app.add_subcommand("sweep", "Sample disjoint-ball regions and test correctability");
    sweep->add_option("--code", sw.code, "Code family")->check(CLI::IsMember(families));
    sweep->add_option("--L", sw.L, "Lattice side (default 8 in 2D, 4 in 3D)");
    sweep->add_option("--balls", sw.balls, "Balls per sample");
    sweep->add_option("--radius", sw.radius, "Ball radius in units of a");
    sweep->add_option("--samples", sw.samples, "Number of samples");
    sweep->add_option("--seed", sw.seed, "Random seed");
    sweep->add_option("--max-attempts", sw.max_attempts, "Placement retries per sample");
    sweep->add_option("--planted-site", sw.planted_site, "Replace the code by a logical qubit stored on this site");
    sweep->add_flag("--allow-failures", sw.allow_failures, "Exit 0 even when some region is not correctable");
    sweep->add_option("--out", sw.output.out, "Report file");

    ExportConfig ex;
    auto* export_code = app.add_subcommand("export-code", "Write a code's generators as Pauli strings");
    export_code->add_option("--code", ex.code, "Code family")->check(CLI::IsMember(families));
    export_code->add_option("--L", ex.L, "Lattice side");
    export_code->add_option("--out", ex.output.out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : input_error;
    }

    try {
        if (*cellulate) return cmd_cellulate(cell);
        if (*certify) return cmd_certify(cert);
        if (*sweep) return cmd_sweep(sw);
        if (*export_code) return cmd_export(ex);
    } catch (const InfeasiblePartitionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return infeasible;
    } catch (const PlacementError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return infeasible;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return check_failed;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return check_failed;
    }
    return input_error;
}
