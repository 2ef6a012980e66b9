#include "degbound/correctability.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <random>

namespace degbound {

namespace {

gf2::BitMatrix restrict_columns(const gf2::BitMatrix& m, std::size_t n, const QuditSet& region) {
    std::vector<std::size_t> cols;
    cols.reserve(2 * region.size());
    for (std::size_t q : region) cols.push_back(q);
    for (std::size_t q : region) cols.push_back(n + q);
    return m.select_columns(cols);
}

void check_region(std::size_t n, const QuditSet& region) {
    for (std::size_t q : region) {
        if (q >= n) throw InputError("region qudit " + std::to_string(q) + " is outside the code");
    }
}

// Reduces v against a fully reduced echelon form; zero iff v is in the row space.
bool reduces_to_zero(const gf2::Echelon& e, gf2::BitVector v) {
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (v.get(e.pivots[i])) v ^= e.reduced.row(i);
    }
    return v.none();
}

using Amplitude = std::complex<double>;

// Hermitian Pauli with X on mask mx and Z on mask mz (Y where both) applied to a state.
Eigen::VectorXcd apply_pauli(const Eigen::VectorXcd& v, std::uint64_t mx, std::uint64_t mz) {
    static const Amplitude i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude base = i_pow[std::popcount(mx & mz) % 4];
    Eigen::VectorXcd out(v.size());
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(v.size()); ++b) {
        const Amplitude sign = (std::popcount(b & mz) % 2) ? Amplitude(-1, 0) : Amplitude(1, 0);
        out[static_cast<Eigen::Index>(b ^ mx)] = base * sign * v[static_cast<Eigen::Index>(b)];
    }
    return out;
}

std::uint64_t mask_of(const gf2::BitVector& bits) {
    std::uint64_t m = 0;
    for (std::size_t i : bits.ones()) m |= std::uint64_t{1} << i;
    return m;
}

}  // namespace

std::size_t stabilizer_dim_on(const StabilizerCode& code, const QuditSet& region_in) {
    const std::size_t n = code.size();
    const QuditSet region = make_qudit_set(region_in);
    check_region(n, region);
    const gf2::BitMatrix S = code.matrix();
    QuditSet complement;
    std::size_t j = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (j < region.size() && region[j] == q) {
            ++j;
        } else {
            complement.push_back(q);
        }
    }
    return gf2::rank(S) - gf2::rank(restrict_columns(S, n, complement));
}

CorrectabilityVerdict is_correctable(const StabilizerCode& code, const QuditSet& region_in) {
    const std::size_t n = code.size();
    const QuditSet region = make_qudit_set(region_in);
    check_region(n, region);
    CorrectabilityVerdict v;
    v.region_size = region.size();
    if (region.empty()) return v;

    const gf2::BitMatrix S = code.matrix();
    const gf2::BitMatrix on_region = restrict_columns(S, n, region);
    const std::size_t a = region.size();
    v.commutant_dim = 2 * a - gf2::rank(on_region);
    v.stabilizer_dim = stabilizer_dim_on(code, region);
    v.correctable = v.commutant_dim == v.stabilizer_dim;
    if (v.correctable) return v;

    // Paulis on the region commuting with every generator: rows (z | x) restricted.
    gf2::BitMatrix twisted(S.rows(), 2 * a);
    for (std::size_t r = 0; r < S.rows(); ++r) {
        for (std::size_t j = 0; j < a; ++j) {
            twisted.set(r, j, on_region.get(r, a + j));
            twisted.set(r, a + j, on_region.get(r, j));
        }
    }
    const gf2::Echelon stabilizers = gf2::Echelon::of(S);
    for (const auto& c : gf2::nullspace(twisted)) {
        gf2::BitVector full(2 * n);
        for (std::size_t j : c.ones()) full.set(j < a ? region[j] : n + region[j - a]);
        if (!reduces_to_zero(stabilizers, full)) {
            PauliOp w(n);
            for (std::size_t j : full.ones()) (j < n ? w.x : w.z).set(j % n);
            v.witness = std::move(w);
            break;
        }
    }
    return v;
}

// ---------------------------------------------------------------- dense path

std::vector<Eigen::VectorXcd> code_space_basis(const StabilizerCode& code) {
    const std::size_t n = code.size();
    if (n > dense_qubit_cap) throw InputError("dense code space needs at most 12 qubits");
    const std::size_t k = degeneracy(code);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
    for (const auto& g : code.generators()) masks.emplace_back(mask_of(g.x), mask_of(g.z));

    std::vector<Eigen::VectorXcd> basis;
    const std::size_t want = std::size_t{1} << k;
    for (Eigen::Index b = 0; b < dim && basis.size() < want; ++b) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v[b] = 1.0;
        for (const auto& [mx, mz] : masks) v = 0.5 * (v + apply_pauli(v, mx, mz));
        for (const auto& u : basis) v -= u.dot(v) * u;
        const double norm = v.norm();
        if (norm > 1e-6) basis.push_back(v / norm);
    }
    if (basis.size() != want) {
        throw ValidationError("joint +1 eigenspace has dimension " + std::to_string(basis.size()) + ", expected " +
                              std::to_string(want));
    }
    return basis;
}

KnillLaflammeVerdict knill_laflamme_dense(const std::vector<Eigen::VectorXcd>& codewords, std::size_t n,
                                          const QuditSet& region) {
    if (n > dense_qubit_cap) throw InputError("dense Knill-Laflamme check needs at most 12 qubits");
    check_region(n, region);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
    const std::size_t k = codewords.size();
    if (k == 0) throw InputError("code space basis is empty");
    for (std::size_t i = 0; i < k; ++i) {
        if (codewords[i].size() != dim) throw InputError("codeword has the wrong dimension");
        for (std::size_t j = 0; j < k; ++j) {
            const Amplitude g = codewords[i].dot(codewords[j]);
            if (std::abs(g - Amplitude(i == j ? 1.0 : 0.0, 0.0)) > 1e-9) {
                throw InputError("code space basis is not orthonormal");
            }
        }
    }

    constexpr double tol = 1e-9;
    constexpr std::size_t table_cap = 6;
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    KnillLaflammeVerdict out;
    const std::size_t a = region.size();
    const std::uint64_t total = std::uint64_t{1} << (2 * a);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t mx = 0, mz = 0;
        std::string name(n, 'I');
        for (std::size_t j = 0; j < a; ++j) {
            const unsigned letter = static_cast<unsigned>((t >> (2 * j)) & 3u);
            const std::uint64_t bit = std::uint64_t{1} << region[j];
            if (letter == 1 || letter == 2) mx |= bit;
            if (letter == 2 || letter == 3) mz |= bit;
            name[region[j]] = letters[letter];
        }
        Amplitude c0{};
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
            const Eigen::VectorXcd image = apply_pauli(codewords[j], mx, mz);
            for (std::size_t i = 0; i < k; ++i) {
                const Amplitude m = codewords[i].dot(image);
                if (i == 0 && j == 0) c0 = m;
                const Amplitude expect = i == j ? c0 : Amplitude{};
                if (std::abs(m - expect) > tol) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            out.consistent = false;
            out.violator = name;
            out.scalars.clear();
            return out;
        }
        if (a <= table_cap) out.scalars.emplace_back(name, c0);
    }
    return out;
}

// ---------------------------------------------------------------- sweeps

std::size_t SweepReport::correctable_count() const {
    std::size_t c = 0;
    for (const auto& s : samples) c += s.correctable ? 1 : 0;
    return c;
}

std::size_t SweepReport::shrunk_count() const {
    std::size_t c = 0;
    for (const auto& s : samples) c += s.shrunk ? 1 : 0;
    return c;
}

double SweepReport::fraction() const {
    return samples.empty() ? 1.0 : static_cast<double>(correctable_count()) / static_cast<double>(samples.size());
}

void SweepReport::write_text(std::ostream& out) const {
    out << "sweep: " << label << '\n'
        << "ball_radius: " << ball_radius << '\n'
        << "n_balls: " << n_balls << '\n'
        << "seed: " << seed << '\n'
        << "samples: " << samples.size() << '\n'
        << "correctable: " << correctable_count() << '\n'
        << "fraction: " << fraction() << '\n'
        << "neighbourhood_shrunk: " << shrunk_count() << '\n';
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (s.correctable && !s.shrunk) continue;
        out << "sample " << i << ": centers";
        for (std::size_t c : s.centers) out << ' ' << c;
        out << " union " << s.union_size << " region " << s.region_size << (s.shrunk ? " shrunk" : "")
            << (s.correctable ? " correctable" : " NOT correctable") << '\n';
        if (s.witness) {
            out << "  witness support:";
            for (std::size_t q : s.witness->support()) out << ' ' << q;
            out << '\n';
        }
    }
}

SweepReport homogeneous_sweep(const StabilizerCode& code, const QuditLayout& layout, const SweepOptions& options) {
    if (layout.size() != code.size()) throw InputError("layout and code sizes differ");
    if (options.ball_radius < layout.spacing()) throw InputError("ball radius must be at least a");
    if (2.0 * options.ball_radius >= layout.diameter()) throw InputError("ball radius must be below L/2");
    if (options.n_balls == 0) throw InputError("a sweep needs at least one ball");

    SweepReport report;
    report.label = options.label;
    report.ball_radius = options.ball_radius;
    report.n_balls = options.n_balls;
    report.seed = options.seed;

    std::mt19937_64 rng(options.seed);
    const double a = layout.spacing();
    const std::size_t n = layout.size();
    for (std::size_t sample = 0; sample < options.samples; ++sample) {
        SweepSample s;
        QuditSet ball_union;
        std::size_t attempts = 0;
        while (s.centers.size() < options.n_balls) {
            if (++attempts > options.max_attempts) {
                throw PlacementError("could not place " + std::to_string(options.n_balls) + " disjoint balls of radius " +
                                     std::to_string(options.ball_radius) + " after " +
                                     std::to_string(options.max_attempts) + " attempts");
            }
            const std::size_t center = static_cast<std::size_t>(rng() % n);
            const std::size_t one[] = {center};
            const QuditSet ball = layout.neighborhood(one, options.ball_radius);
            if (!ball_union.empty() && !set_intersection(layout.neighborhood(ball_union, a), ball).empty()) continue;
            s.centers.push_back(center);
            ball_union = set_union(ball_union, ball);
        }
        QuditSet region;
        for (std::size_t q : ball_union) {
            const std::size_t one[] = {q};
            if (is_subset(layout.neighborhood(one, a), ball_union)) region.push_back(q);
        }
        s.union_size = ball_union.size();
        s.region_size = region.size();
        s.shrunk = region.size() != ball_union.size();
        auto verdict = is_correctable(code, region);
        s.correctable = verdict.correctable;
        s.witness = std::move(verdict.witness);
        report.samples.push_back(std::move(s));
    }
    return report;
}

StabilizerCode planted_local_logical_code(std::size_t n, std::size_t site) {
    if (site >= n) throw InputError("planted site outside the code");
    std::vector<PauliOp> gens;
    for (std::size_t q = 0; q < n; ++q) {
        if (q != site) gens.push_back(PauliOp::z_on(n, {q}));
    }
    return build_code(n, std::move(gens));
}

}  // namespace degbound
