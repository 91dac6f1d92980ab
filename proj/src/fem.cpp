#include "fracdirc/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace fracdirc {

StructuredMesh build_mesh(int level) {
    if (level < 1 || level > 10) throw std::invalid_argument("build_mesh: level must lie in 1..10");
    StructuredMesh m;
    m.level = level;
    const int n = 1 << level;
    m.cells_per_side = n;
    m.h = 1.0 / n;
    m.x.resize((n + 1) * (n + 1));
    m.y.resize((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            m.x[m.node_id(i, j)] = i * m.h;
            m.y[m.node_id(i, j)] = j * m.h;
        }
    m.triangles.reserve(2 * n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int ll = m.node_id(i, j);
            const int lr = m.node_id(i + 1, j);
            const int ul = m.node_id(i, j + 1);
            const int ur = m.node_id(i + 1, j + 1);
            m.triangles.push_back({ll, lr, ur});
            m.triangles.push_back({ll, ur, ul});
        }
    m.boundary_nodes.reserve(4 * n);
    for (int i = 0; i <= n; ++i) m.boundary_nodes.push_back(m.node_id(i, 0));
    for (int j = 1; j <= n; ++j) m.boundary_nodes.push_back(m.node_id(n, j));
    for (int i = n - 1; i >= 0; --i) m.boundary_nodes.push_back(m.node_id(i, n));
    for (int j = n - 1; j >= 1; --j) m.boundary_nodes.push_back(m.node_id(0, j));
    std::vector<char> is_boundary(m.node_count(), 0);
    for (int b : m.boundary_nodes) is_boundary[b] = 1;
    for (int k = 0; k < m.node_count(); ++k)
        if (!is_boundary[k]) m.interior_nodes.push_back(k);
    return m;
}

namespace {

struct TriangleGeometry {
    std::array<double, 3> px, py;
    double area;
    // phi_v(x, y) = c0[v] + cx[v] x + cy[v] y
    std::array<double, 3> c0, cx, cy;
};

TriangleGeometry triangle_geometry(const StructuredMesh& mesh, const std::array<int, 3>& t) {
    TriangleGeometry g;
    for (int v = 0; v < 3; ++v) {
        g.px[v] = mesh.x[t[v]];
        g.py[v] = mesh.y[t[v]];
    }
    const double det = (g.px[1] - g.px[0]) * (g.py[2] - g.py[0]) -
                       (g.px[2] - g.px[0]) * (g.py[1] - g.py[0]);
    g.area = 0.5 * det;
    for (int v = 0; v < 3; ++v) {
        const int a = (v + 1) % 3, b = (v + 2) % 3;
        g.c0[v] = (g.px[a] * g.py[b] - g.px[b] * g.py[a]) / det;
        g.cx[v] = (g.py[a] - g.py[b]) / det;
        g.cy[v] = (g.px[b] - g.px[a]) / det;
    }
    return g;
}

}  // namespace

SparseOperator assemble_mass(const StructuredMesh& mesh) {
    std::vector<Triplet> t;
    t.reserve(mesh.triangles.size() * 9);
    for (const auto& tri : mesh.triangles) {
        const auto g = triangle_geometry(mesh, tri);
        const double a12 = g.area / 12.0;
        for (int v = 0; v < 3; ++v)
            for (int w = 0; w < 3; ++w)
                t.push_back({tri[v], tri[w], (v == w ? 2.0 : 1.0) * a12});
    }
    return assemble_from_triplets(mesh.node_count(), std::move(t), true);
}

SparseOperator assemble_stiffness(const StructuredMesh& mesh) {
    std::vector<Triplet> t;
    t.reserve(mesh.triangles.size() * 9);
    for (const auto& tri : mesh.triangles) {
        const auto g = triangle_geometry(mesh, tri);
        for (int v = 0; v < 3; ++v)
            for (int w = 0; w < 3; ++w)
                t.push_back({tri[v], tri[w], g.area * (g.cx[v] * g.cx[w] + g.cy[v] * g.cy[w])});
    }
    return assemble_from_triplets(mesh.node_count(), std::move(t), true);
}

BoundaryTrace build_boundary_trace(const StructuredMesh& mesh) {
    BoundaryTrace tr;
    tr.nodes = mesh.boundary_nodes;
    const int nb = static_cast<int>(tr.nodes.size());
    const double h = mesh.h;
    tr.arc.resize(nb);
    for (int k = 0; k < nb; ++k) tr.arc[k] = k * h;
    std::vector<Triplet> t;
    t.reserve(4 * nb);
    for (int k = 0; k < nb; ++k) {
        const int k2 = (k + 1) % nb;
        t.push_back({k, k, h / 3.0});
        t.push_back({k2, k2, h / 3.0});
        t.push_back({k, k2, h / 6.0});
        t.push_back({k2, k, h / 6.0});
    }
    tr.boundary_mass = assemble_from_triplets(nb, std::move(t), true);
    tr.lumped_value = h;
    return tr;
}

namespace {

// closed form of \int_{y0}^{y1} y^{-1/2} (a + b y) dy
double inv_sqrt_linear_integral(double y0, double y1, double a, double b) {
    auto F = [&](double y) { return 2.0 * a * std::sqrt(y) + (2.0 / 3.0) * b * y * std::sqrt(y); };
    return F(y1) - F(y0);
}

}  // namespace

std::vector<double> boundary_moments(const StructuredMesh& mesh, const BoundaryTrace& trace,
                                     BoundaryProfile profile, double value) {
    const int nb = static_cast<int>(trace.nodes.size());
    const double h = mesh.h;
    std::vector<double> mom(nb, 0.0);
    switch (profile) {
        case BoundaryProfile::Zero:
            break;
        case BoundaryProfile::Constant:
            for (int k = 0; k < nb; ++k) mom[k] = value * h;  // hats integrate to h on the closed curve
            break;
        case BoundaryProfile::InvSqrtLeftEdge:
            for (int k = 0; k < nb; ++k) {
                const int node = trace.nodes[k];
                if (mesh.x[node] > 0.5 * h) continue;  // not on edge x=0
                const double yk = mesh.y[node];
                double m = 0.0;
                // rising part of the hat, support (yk - h, yk) on the edge
                if (yk > 0.5 * h) {
                    const double b = 1.0 / h;
                    const double a = 1.0 - yk / h;
                    m += inv_sqrt_linear_integral(yk - h, yk, a, b);
                }
                // falling part, support (yk, yk + h)
                if (yk < 1.0 - 0.5 * h) {
                    const double b = -1.0 / h;
                    const double a = 1.0 + yk / h;
                    m += inv_sqrt_linear_integral(yk, yk + h, a, b);
                }
                mom[k] = value * m;
            }
            break;
    }
    return mom;
}

std::vector<double> boundary_l2_project(const StructuredMesh& mesh, const BoundaryTrace& trace,
                                        BoundaryProfile profile, double value) {
    std::vector<double> mom = boundary_moments(mesh, trace, profile, value);
    std::vector<double> coeff(mom.size(), 0.0);
    const CgReport rep = cg_solve(trace.boundary_mass, mom, coeff, 1e-13, 10000);
    if (!rep.converged)
        throw std::runtime_error("boundary_l2_project: boundary mass solve failed");
    return coeff;
}

Vector singular_load_vector(const StructuredMesh& mesh, double exponent, double amplitude) {
    if (!(exponent > -1.0))
        throw std::invalid_argument("singular_load_vector: exponent must exceed -1");
    Vector f(mesh.node_count(), 0.0);
    if (amplitude == 0.0) return f;
    for (const auto& tri : mesh.triangles) {
        const auto g = triangle_geometry(mesh, tri);
        // x-range of the triangle and its y cross-section [ylo(x), yhi(x)],
        // both linear in x. Vertices are lattice-aligned right triangles.
        double xa = std::min({g.px[0], g.px[1], g.px[2]});
        double xb = std::max({g.px[0], g.px[1], g.px[2]});
        // lower-left split: type 1 (ll,lr,ur) has ylo = const, yhi = y0 + (x-xa);
        // type 2 (ll,ur,ul) has ylo = y0 + (x-xa), yhi = const.
        const bool type1 = g.py[0] == g.py[1];
        double p, q, r, s;  // ylo = p + q x ; yhi = r + s x
        if (type1) {
            p = g.py[0]; q = 0.0;
            r = g.py[0] - xa; s = 1.0;
        } else {
            p = g.py[0] - xa; q = 1.0;
            r = g.py[2]; s = 0.0;
        }
        for (int v = 0; v < 3; ++v) {
            // \int_ylo^yhi phi dy = c0 (yhi-ylo) + cx x (yhi-ylo) + cy (yhi^2-ylo^2)/2
            const double d0 = r - p, d1 = s - q;
            const double e0 = 0.5 * (r * r - p * p);
            const double e1 = r * s - p * q;
            const double e2 = 0.5 * (s * s - q * q);
            const double A0 = g.c0[v] * d0 + g.cy[v] * e0;
            const double A1 = g.c0[v] * d1 + g.cx[v] * d0 + g.cy[v] * e1;
            const double A2 = g.cx[v] * d1 + g.cy[v] * e2;
            auto F = [&](double x) {
                double acc = 0.0;
                if (x > 0.0) {
                    acc += A0 * std::pow(x, exponent + 1.0) / (exponent + 1.0);
                    acc += A1 * std::pow(x, exponent + 2.0) / (exponent + 2.0);
                    acc += A2 * std::pow(x, exponent + 3.0) / (exponent + 3.0);
                }
                return acc;
            };
            f[tri[v]] += amplitude * (F(xb) - F(xa));
        }
    }
    return f;
}

Vector load_from_nodal(const SparseOperator& mass, const Vector& nodal) {
    return mass.apply(nodal);
}

std::vector<double> discrete_normal_derivative(const Vector& slice_state,
                                               const Vector& time_residual, const Vector& source,
                                               const SparseOperator& mass,
                                               const SparseOperator& stiffness,
                                               const BoundaryTrace& trace, bool lumped) {
    const int n = mass.dim();
    if (static_cast<int>(slice_state.size()) != n || static_cast<int>(time_residual.size()) != n ||
        static_cast<int>(source.size()) != n)
        throw std::invalid_argument("discrete_normal_derivative: dimension mismatch");
    Vector mr = mass.apply(time_residual);
    Vector ap = stiffness.apply(slice_state);
    const int nb = static_cast<int>(trace.nodes.size());
    std::vector<double> rhs(nb);
    for (int k = 0; k < nb; ++k) {
        const int i = trace.nodes[k];
        rhs[k] = mr[i] + ap[i] - source[i];
    }
    std::vector<double> flux(nb, 0.0);
    if (lumped) {
        for (int k = 0; k < nb; ++k) flux[k] = rhs[k] / trace.lumped_value;
    } else {
        const CgReport rep = cg_solve(trace.boundary_mass, rhs, flux, 1e-13, 10000);
        if (!rep.converged)
            throw std::runtime_error("discrete_normal_derivative: boundary mass solve failed");
    }
    return flux;
}

FemSpace build_space(int level) {
    FemSpace s;
    s.mesh = build_mesh(level);
    s.mass = assemble_mass(s.mesh);
    s.stiffness = assemble_stiffness(s.mesh);
    s.trace = build_boundary_trace(s.mesh);
    return s;
}

}  // namespace fracdirc
