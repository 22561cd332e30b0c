#pragma once

#include <array>
#include <iosfwd>
#include <memory>

#include <Eigen/Sparse>

#include "membrane/catalog.hpp"

namespace membrane::fem {

using catalog::CatalogEntry;
using catalog::PlanarDomain;
using coefficients::EllipticityMatrix;

/// Conforming triangulation; triangles are counterclockwise vertex triples.
struct TriangleMesh {
    std::vector<Complex> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<char> boundary;  // 1 for vertices on the domain boundary
    double h_max = 0.0;
    /// Generating domain, used to project boundary midpoints during refine.
    std::shared_ptr<const PlanarDomain> domain;
    /// For pushforward meshes: the mesh in the reference domain. Refinement
    /// refines the reference and re-maps, which keeps the pushed-forward
    /// triangles valid near boundary features like cusps.
    std::shared_ptr<const TriangleMesh> reference_mesh;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
    double total_area() const;
};

/// Conforming mesh with h_max <= 1.5 * target_h. Polygons are ear-clipped
/// then uniformly refined; discs start from a hexagon fan with circle
/// projection; domains carrying a reference map are meshed in the reference
/// and pushed forward.
TriangleMesh triangulate(const PlanarDomain& d, double target_h);

/// Uniform midpoint subdivision (4x triangles, h_max halved); new boundary
/// vertices are projected onto curved boundaries.
TriangleMesh refine(const TriangleMesh& m);

using MatrixField = std::function<EllipticityMatrix(Complex)>;
using ScalarField = std::function<double(Complex)>;

/// Stiffness / mass pair over interior vertices (homogeneous Dirichlet rows
/// and columns eliminated). Coefficients are frozen at triangle centroids.
struct SparseSystem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::SparseMatrix<double> mass;
    int n_interior = 0;
    std::vector<int> interior_index;  // per vertex; -1 on the boundary
    double total_mass = 0.0;          // pre-elimination sum of all mass entries
    // Populated only when assemble(..., keep_full = true); used by tests.
    Eigen::SparseMatrix<double> stiffness_full;
    Eigen::SparseMatrix<double> mass_full;
};

/// P1 assembly of stiffness (A-weighted) and consistent mass (w-weighted).
/// Empty fields mean A = I and w = 1.
SparseSystem assemble(const TriangleMesh& m, const MatrixField& a_field = {},
                      const ScalarField& mass_weight = {}, bool keep_full = false);

struct EigenResult {
    double lambda1 = 0.0;
    double residual = 0.0;  // ||K x - lambda M x||_2 with ||x||_M = 1
    double h_max = 0.0;
    int n_interior = 0;
};

/// Smallest generalized eigenvalue of K x = lambda M x by inverse power
/// iteration (sparse LDLT inner solves). Stops once the Rayleigh quotient
/// change is <= tol * lambda and the residual certificate is <= tol; throws
/// ConvergenceError after 10^4 iterations.
EigenResult smallest_eigenvalue(const SparseSystem& s, double tol = 1e-8,
                                double mesh_h_max = 0.0);

struct ConvergenceTable {
    struct Row {
        double h_max;
        double lambda1;
    };
    std::vector<Row> rows;
    double extrapolated = 0.0;
    double observed_order = 0.0;
};

/// triangulate + (levels-1) refinements, an eigensolve per level, then a
/// Richardson extrapolation with the order fitted from the last three rows.
ConvergenceTable lambda1_estimate(const PlanarDomain& d, const MatrixField& a_field,
                                  int levels, double target_h = 0.1,
                                  const ScalarField& mass_weight = {},
                                  double tol = 1e-8);

/// As lambda1_estimate, also returning the finest mesh (for export).
struct EstimateRun {
    ConvergenceTable table;
    TriangleMesh finest;
};
EstimateRun lambda1_estimate_run(const PlanarDomain& d, const MatrixField& a_field,
                                 int levels, double target_h = 0.1,
                                 const ScalarField& mass_weight = {}, double tol = 1e-8);

/// Compares the direct eigenvalue of the A-weighted problem on the domain
/// with the |J(w, phi^{-1})|-weighted Laplace problem on the image.
struct ReductionReport {
    ConvergenceTable direct;
    ConvergenceTable weighted;
    double rel_diff = 0.0;
    bool ok = false;  // agreement within 2%
};
ReductionReport weighted_reduction_check(const CatalogEntry& e, int levels,
                                         double target_h = 0.1);

/// Plain-text mesh format: `v x y flag` per vertex, `t i j k` per triangle.
void write_mesh(std::ostream& os, const TriangleMesh& m);
TriangleMesh read_mesh(std::istream& is);

/// CSV export with header `h_max,lambda1`.
void write_convergence_csv(std::ostream& os, const ConvergenceTable& t);

/// Parallelism cap from MEMBRANE_BOUNDS_THREADS (>= 1).
int thread_cap();

}  // namespace membrane::fem
