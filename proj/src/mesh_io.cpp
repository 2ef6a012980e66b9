#include "degbound/simplicial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace degbound {

std::vector<std::vector<Vertex>> read_mesh(std::istream& in) {
    std::vector<std::vector<Vertex>> tops;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::vector<Vertex> simplex;
        long long v = 0;
        while (fields >> v) {
            if (v < 0) throw InputError("mesh line " + std::to_string(line_no) + ": negative vertex");
            simplex.push_back(static_cast<Vertex>(v));
        }
        if (!fields.eof()) {
            throw InputError("mesh line " + std::to_string(line_no) + ": expected vertex indices");
        }
        tops.push_back(std::move(simplex));
    }
    if (tops.empty()) throw InputError("mesh contains no simplices");
    return tops;
}

std::vector<std::vector<Vertex>> read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open mesh file " + path);
    return read_mesh(in);
}

void write_mesh(std::ostream& out, const SimplicialComplex& complex) {
    const std::size_t d = complex.dimension();
    for (std::size_t i = 0; i < complex.count(d); ++i) {
        const auto s = complex.simplex(d, i);
        for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
        out << '\n';
    }
}

void write_off(std::ostream& out, const SimplicialComplex& complex, std::span<const Rgb> face_colors) {
    const std::size_t d = complex.dimension();
    if (d < 2 || d > 3) throw InputError("OFF export supports complexes of dimension 2 or 3");
    if (!face_colors.empty() && face_colors.size() != complex.count(2)) {
        throw InputError("OFF export: need one colour per 2-simplex");
    }
    const std::vector<Point3> pos =
        complex.has_positions() ? complex.positions() : spectral_positions(complex);

    std::vector<std::size_t> faces;
    for (std::size_t i = 0; i < complex.count(2); ++i) {
        if (face_colors.empty() || face_colors[i][0] >= 0.0) faces.push_back(i);
    }

    out << "OFF\n" << pos.size() << ' ' << faces.size() << " 0\n";
    out << std::fixed << std::setprecision(6);
    for (const auto& p : pos) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    for (std::size_t i : faces) {
        out << 3;
        for (Vertex v : complex.simplex(2, i)) {
            const Vertex label[1] = {v};
            out << ' ' << *complex.index_of(label);
        }
        if (!face_colors.empty()) {
            const auto& c = face_colors[i];
            out << ' ' << c[0] << ' ' << c[1] << ' ' << c[2];
        }
        out << '\n';
    }
}

std::vector<Point3> spectral_positions(const SimplicialComplex& complex) {
    const std::size_t n = complex.count(0);
    if (n > 4000) {
        throw InputError("spectral layout is limited to 4000 vertices; subdivide a positioned complex instead");
    }
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t e = 0; e < complex.count(1); ++e) {
        const auto f = complex.facets(1, e);
        const auto a = static_cast<Eigen::Index>(f[0]);
        const auto b = static_cast<Eigen::Index>(f[1]);
        lap(a, b) -= 1.0;
        lap(b, a) -= 1.0;
        lap(a, a) += 1.0;
        lap(b, b) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    const Eigen::MatrixXd& vecs = solver.eigenvectors();

    std::vector<Point3> pos(n, Point3{0.0, 0.0, 0.0});
    for (int axis = 0; axis < 3; ++axis) {
        const Eigen::Index col = axis + 1;
        if (col >= static_cast<Eigen::Index>(n)) break;
        // Fix the sign so the largest-magnitude entry is positive.
        Eigen::Index arg = 0;
        vecs.col(col).cwiseAbs().maxCoeff(&arg);
        const double sign = vecs(arg, col) < 0 ? -1.0 : 1.0;
        for (std::size_t v = 0; v < n; ++v) {
            pos[v][static_cast<std::size_t>(axis)] = sign * vecs(static_cast<Eigen::Index>(v), col);
        }
    }
    return pos;
}

}  // namespace degbound
