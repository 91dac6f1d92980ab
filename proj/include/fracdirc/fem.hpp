#pragma once

#include <array>
#include <vector>

#include "fracdirc/sparse.hpp"

namespace fracdirc {

/// Uniform right-triangle P1 triangulation of the unit square at level L
/// (h = 2^-L). Nodes are laid out row-major on the lattice; each cell is
/// split along the diagonal from its lower-left to its upper-right corner,
/// which yields the classical 5-point stiffness stencil.
struct StructuredMesh {
    int level = 0;
    int cells_per_side = 0;  // 2^level
    double h = 0.0;
    std::vector<double> x, y;                   // node coordinates
    std::vector<std::array<int, 3>> triangles;  // ccw orientation
    std::vector<int> boundary_nodes;            // ccw along the closed curve
    std::vector<int> interior_nodes;

    int node_count() const { return static_cast<int>(x.size()); }
    int node_id(int i, int j) const { return j * (cells_per_side + 1) + i; }
};

StructuredMesh build_mesh(int level);

SparseOperator assemble_mass(const StructuredMesh& mesh);
SparseOperator assemble_stiffness(const StructuredMesh& mesh);

/// Boundary bookkeeping: node indices in ccw order, arc-length coordinates,
/// and the 1D mass matrix of the boundary hat functions on the closed curve.
struct BoundaryTrace {
    std::vector<int> nodes;       // ccw
    std::vector<double> arc;      // arc-length coordinate of each node
    SparseOperator boundary_mass; // consistent (tridiagonal with wrap)
    double lumped_value = 0.0;    // row sum; the lumped matrix is lumped_value * I
};

BoundaryTrace build_boundary_trace(const StructuredMesh& mesh);

/// Boundary data profiles with closed-form hat moments. InvSqrtLeftEdge is
/// y^{-1/2} on the edge x=0 and zero on the rest of the boundary.
enum class BoundaryProfile { Zero, Constant, InvSqrtLeftEdge };

/// Moments \int_{dOmega} f hat_k ds for the given profile.
std::vector<double> boundary_moments(const StructuredMesh& mesh, const BoundaryTrace& trace,
                                     BoundaryProfile profile, double value = 1.0);

/// L2(dOmega) projection: solves the boundary-mass system for the given
/// moments (residual <= 1e-12).
std::vector<double> boundary_l2_project(const StructuredMesh& mesh, const BoundaryTrace& trace,
                                        BoundaryProfile profile, double value = 1.0);

/// Volume load f_i = amplitude * \int_Omega x^exponent phi_i, computed by
/// exact slab integration over each triangle (valid for exponent > -1).
/// Singular profiles enter only through these moments, never nodal sampling.
Vector singular_load_vector(const StructuredMesh& mesh, double exponent = -0.5,
                            double amplitude = 1.0);

/// Load vector of a function given by nodal values: M * nodal.
Vector load_from_nodal(const SparseOperator& mass, const Vector& nodal);

/// Variational discrete normal derivative: solves, for every boundary hat
/// mu_i,  (dn_h p, mu_i)_{dOmega} = (time_residual, phi_i)_{L2} + a(p, phi_i)
/// - (source, phi_i), where source is a load vector. `lumped` selects the
/// lumped boundary mass (used by the control loop, where nodewise clamping
/// must be an exact projection).
std::vector<double> discrete_normal_derivative(const Vector& slice_state,
                                               const Vector& time_residual, const Vector& source,
                                               const SparseOperator& mass,
                                               const SparseOperator& stiffness,
                                               const BoundaryTrace& trace, bool lumped = false);

/// One-stop bundle used by the evolution and optimizer layers.
struct FemSpace {
    StructuredMesh mesh;
    SparseOperator mass;
    SparseOperator stiffness;
    BoundaryTrace trace;

    int dim() const { return mesh.node_count(); }
    const std::vector<int>& interior() const { return mesh.interior_nodes; }
    const std::vector<int>& boundary() const { return mesh.boundary_nodes; }
};

FemSpace build_space(int level);

}  // namespace fracdirc
