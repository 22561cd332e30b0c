#include "membrane/fem.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace membrane::fem {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double triangle_area2(const TriangleMesh& m, const std::array<int, 3>& t) {
    return cross(m.vertices[t[1]] - m.vertices[t[0]], m.vertices[t[2]] - m.vertices[t[0]]);
}

double compute_h_max(const TriangleMesh& m) {
    double h = 0.0;
    for (const auto& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            h = std::max(h, std::abs(m.vertices[t[k]] - m.vertices[t[(k + 1) % 3]]));
        }
    }
    return h;
}

bool point_in_triangle(Complex a, Complex b, Complex c, Complex p) {
    double d1 = cross(b - a, p - a);
    double d2 = cross(c - b, p - b);
    double d3 = cross(a - c, p - c);
    return d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0;
}

/// Ear clipping of a simple counterclockwise polygon.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Complex>& poly) {
    const int n = static_cast<int>(poly.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<std::array<int, 3>> tris;
    tris.reserve(n - 2);
    int guard = 0;
    const int guard_cap = n * n + 16;
    while (idx.size() > 3) {
        bool clipped = false;
        const int m = static_cast<int>(idx.size());
        for (int i = 0; i < m; ++i) {
            int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
            Complex a = poly[ia], b = poly[ib], c = poly[ic];
            double conv = cross(b - a, c - b);
            if (conv <= 1e-14 * std::norm(c - a)) continue;  // reflex or degenerate
            bool ear = true;
            for (int j : idx) {
                if (j == ia || j == ib || j == ic) continue;
                if (point_in_triangle(a, b, c, poly[j])) {
                    ear = false;
                    break;
                }
            }
            if (!ear) continue;
            tris.push_back({ia, ib, ic});
            idx.erase(idx.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped || ++guard > guard_cap) {
            throw MeshingError("ear clipping failed; polygon may be degenerate");
        }
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

TriangleMesh polygon_macro_mesh(const std::vector<Complex>& poly) {
    TriangleMesh m;
    m.vertices = poly;
    m.triangles = ear_clip(poly);
    m.boundary.assign(poly.size(), 1);
    m.h_max = compute_h_max(m);
    return m;
}

TriangleMesh hexagon_macro_mesh(Complex center, double radius) {
    TriangleMesh m;
    m.vertices.push_back(center);
    m.boundary.push_back(0);
    for (int k = 0; k < 6; ++k) {
        double t = std::numbers::pi * k / 3.0;
        m.vertices.push_back(center + radius * Complex(std::cos(t), std::sin(t)));
        m.boundary.push_back(1);
    }
    for (int k = 0; k < 6; ++k) {
        m.triangles.push_back({0, 1 + k, 1 + (k + 1) % 6});
    }
    m.h_max = compute_h_max(m);
    return m;
}

TriangleMesh map_mesh(const TriangleMesh& ref, const std::function<Complex(Complex)>& fn,
                      std::shared_ptr<const PlanarDomain> target) {
    TriangleMesh m;
    m.vertices.reserve(ref.vertices.size());
    for (Complex z : ref.vertices) m.vertices.push_back(fn(z));
    m.triangles = ref.triangles;
    m.boundary = ref.boundary;
    m.domain = std::move(target);
    for (std::size_t k = 0; k < m.triangles.size(); ++k) {
        if (triangle_area2(m, m.triangles[k]) <= 0.0) {
            throw MeshingError("reference map flipped a triangle; not orientation preserving");
        }
    }
    m.h_max = compute_h_max(m);
    return m;
}

double polyline_length(const std::vector<Complex>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += std::abs(v[(i + 1) % v.size()] - v[i]);
    }
    return s;
}

}  // namespace

double TriangleMesh::total_area() const {
    double s = 0.0;
    for (const auto& t : triangles) s += 0.5 * triangle_area2(*this, t);
    return s;
}

TriangleMesh triangulate(const PlanarDomain& d, double target_h) {
    if (!(target_h > 0.0) || target_h >= d.diameter()) {
        throw MeshingError("target_h must be positive and below the domain diameter");
    }
    TriangleMesh m;
    if (d.has_reference()) {
        TriangleMesh rm = triangulate(d.reference(), target_h);
        auto self = std::make_shared<PlanarDomain>(d);
        auto push = [&self](TriangleMesh ref) {
            const PlanarDomain& dom = *self;
            TriangleMesh mapped =
                map_mesh(ref, [&dom](Complex z) { return dom.from_reference(z); }, self);
            mapped.reference_mesh = std::make_shared<TriangleMesh>(std::move(ref));
            return mapped;
        };
        m = push(std::move(rm));
        while (m.h_max > 1.5 * target_h) {
            m = push(refine(*m.reference_mesh));
        }
        return m;
    }
    switch (d.kind()) {
        case PlanarDomain::Kind::polygon:
            m = polygon_macro_mesh(d.vertices());
            break;
        case PlanarDomain::Kind::disc:
            m = hexagon_macro_mesh(d.center(), d.radius());
            break;
        case PlanarDomain::Kind::parametric_boundary: {
            auto probe = catalog::boundary_polygon(d, 512);
            int n = static_cast<int>(std::ceil(polyline_length(probe) / target_h));
            n = std::clamp(n, 16, 512);
            m = polygon_macro_mesh(catalog::boundary_polygon(d, n));
            break;
        }
    }
    m.domain = std::make_shared<PlanarDomain>(d);
    while (m.h_max > 1.5 * target_h) m = refine(m);
    return m;
}

TriangleMesh refine(const TriangleMesh& m) {
    if (m.reference_mesh && m.domain && m.domain->has_reference()) {
        TriangleMesh rm = refine(*m.reference_mesh);
        const PlanarDomain& dom = *m.domain;
        TriangleMesh out =
            map_mesh(rm, [&dom](Complex z) { return dom.from_reference(z); }, m.domain);
        out.reference_mesh = std::make_shared<TriangleMesh>(std::move(rm));
        return out;
    }
    TriangleMesh out;
    out.vertices = m.vertices;
    out.boundary = m.boundary;
    out.domain = m.domain;
    out.triangles.reserve(4 * m.triangles.size());

    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}] += 1;
        }
    }
    const bool curved = m.domain && m.domain->kind() != PlanarDomain::Kind::polygon;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Complex p = 0.5 * (m.vertices[a] + m.vertices[b]);
        bool on_boundary = edge_count.at(key) == 1;
        if (on_boundary && curved) {
            p = m.domain->project_boundary(p);
        }
        int id = static_cast<int>(out.vertices.size());
        out.vertices.push_back(p);
        out.boundary.push_back(on_boundary ? 1 : 0);
        midpoint.emplace(key, id);
        return id;
    };

    for (const auto& t : m.triangles) {
        int m01 = mid(t[0], t[1]);
        int m12 = mid(t[1], t[2]);
        int m20 = mid(t[2], t[0]);
        out.triangles.push_back({t[0], m01, m20});
        out.triangles.push_back({m01, t[1], m12});
        out.triangles.push_back({m20, m12, t[2]});
        out.triangles.push_back({m01, m12, m20});
    }
    out.h_max = compute_h_max(out);
    return out;
}

int thread_cap() {
    if (const char* env = std::getenv("MEMBRANE_BOUNDS_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 256);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

namespace {

struct LocalContribution {
    double k[3][3];
    double m_scale;  // w * area / 12; mass pattern is (2,1,1;1,2,1;1,1,2)
};

void compute_local(const TriangleMesh& mesh, const MatrixField& a_field,
                   const ScalarField& w_field, std::size_t t_idx, LocalContribution& lc) {
    const auto& t = mesh.triangles[t_idx];
    Complex p0 = mesh.vertices[t[0]], p1 = mesh.vertices[t[1]], p2 = mesh.vertices[t[2]];
    double area2 = cross(p1 - p0, p2 - p0);
    if (!(area2 > 0.0)) {
        throw AssemblyError("triangle " + std::to_string(t_idx) + " has non-positive area");
    }
    double area = 0.5 * area2;
    Complex centroid = (p0 + p1 + p2) / 3.0;

    EllipticityMatrix a = EllipticityMatrix::identity();
    if (a_field) {
        try {
            a = a_field(centroid);
        } catch (const InvalidMatrixError& err) {
            throw AssemblyError("coefficient matrix invalid at centroid of triangle " +
                                std::to_string(t_idx) + ": " + err.what());
        }
    }
    double w = 1.0;
    if (w_field) {
        w = w_field(centroid);
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw AssemblyError("mass weight not positive at centroid of triangle " +
                                std::to_string(t_idx));
        }
    }

    // P1 gradients: grad lambda_i = (b_i, c_i) / (2 area).
    const Complex p[3] = {p0, p1, p2};
    double bx[3], by[3];
    for (int i = 0; i < 3; ++i) {
        const Complex& pj = p[(i + 1) % 3];
        const Complex& pk = p[(i + 2) % 3];
        bx[i] = (pj.imag() - pk.imag()) / area2;
        by[i] = (pk.real() - pj.real()) / area2;
    }
    for (int i = 0; i < 3; ++i) {
        double agx = a.a11 * bx[i] + a.a12 * by[i];
        double agy = a.a12 * bx[i] + a.a22 * by[i];
        for (int j = 0; j < 3; ++j) {
            lc.k[i][j] = area * (agx * bx[j] + agy * by[j]);
        }
    }
    // Symmetrize away rounding asymmetry from the two loop orders.
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            double v = 0.5 * (lc.k[i][j] + lc.k[j][i]);
            lc.k[i][j] = lc.k[j][i] = v;
        }
    }
    lc.m_scale = w * area / 12.0;
}

}  // namespace

SparseSystem assemble(const TriangleMesh& mesh, const MatrixField& a_field,
                      const ScalarField& mass_weight, bool keep_full) {
    const int nv = mesh.n_vertices();
    const std::size_t nt = mesh.triangles.size();
    SparseSystem s;
    s.interior_index.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (!mesh.boundary[v]) s.interior_index[v] = s.n_interior++;
    }

    std::vector<LocalContribution> locals(nt);
    const int threads = std::min<int>(thread_cap(), static_cast<int>(nt / 4096) + 1);
    if (threads > 1) {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex err_mutex;
        std::size_t chunk = (nt + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            std::size_t lo = w * chunk;
            std::size_t hi = std::min(nt, lo + chunk);
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) {
                        compute_local(mesh, a_field, mass_weight, i, locals[i]);
                    }
                } catch (...) {
                    std::scoped_lock lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    } else {
        for (std::size_t i = 0; i < nt; ++i) {
            compute_local(mesh, a_field, mass_weight, i, locals[i]);
        }
    }

    std::vector<Eigen::Triplet<double>> tk, tm, tkf, tmf;
    tk.reserve(9 * nt);
    tm.reserve(9 * nt);
    if (keep_full) {
        tkf.reserve(9 * nt);
        tmf.reserve(9 * nt);
    }
    for (std::size_t ti = 0; ti < nt; ++ti) {
        const auto& t = mesh.triangles[ti];
        const auto& lc = locals[ti];
        s.total_mass += 12.0 * lc.m_scale;  // sum of the local mass pattern
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double mv = lc.m_scale * (i == j ? 2.0 : 1.0);
                if (keep_full) {
                    tkf.emplace_back(t[i], t[j], lc.k[i][j]);
                    tmf.emplace_back(t[i], t[j], mv);
                }
                int gi = s.interior_index[t[i]];
                int gj = s.interior_index[t[j]];
                if (gi >= 0 && gj >= 0) {
                    tk.emplace_back(gi, gj, lc.k[i][j]);
                    tm.emplace_back(gi, gj, mv);
                }
            }
        }
    }
    s.stiffness.resize(s.n_interior, s.n_interior);
    s.mass.resize(s.n_interior, s.n_interior);
    s.stiffness.setFromTriplets(tk.begin(), tk.end());
    s.mass.setFromTriplets(tm.begin(), tm.end());
    if (keep_full) {
        s.stiffness_full.resize(nv, nv);
        s.mass_full.resize(nv, nv);
        s.stiffness_full.setFromTriplets(tkf.begin(), tkf.end());
        s.mass_full.setFromTriplets(tmf.begin(), tmf.end());
    }
    return s;
}

EigenResult smallest_eigenvalue(const SparseSystem& s, double tol, double mesh_h_max) {
    if (!(tol > 0.0)) {
        throw std::domain_error("eigensolver tolerance must be positive");
    }
    const int n = s.n_interior;
    if (n < 1) {
        throw MeshingError("system has no interior degrees of freedom");
    }
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(s.stiffness);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("stiffness factorization failed", 0.0);
    }

    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    x /= std::sqrt(x.dot(s.mass * x));
    double lambda = x.dot(s.stiffness * x);
    constexpr int kMaxIter = 10000;
    for (int it = 0; it < kMaxIter; ++it) {
        Eigen::VectorXd y = solver.solve(s.mass * x);
        double ymy = y.dot(s.mass * y);
        if (!(ymy > 0.0) || !std::isfinite(ymy)) {
            throw ConvergenceError("inverse iteration produced a degenerate iterate", lambda);
        }
        x = y / std::sqrt(ymy);
        double lambda_new = x.dot(s.stiffness * x);
        double residual = (s.stiffness * x - lambda_new * (s.mass * x)).norm();
        bool settled = std::abs(lambda_new - lambda) <= tol * std::abs(lambda_new) &&
                       residual <= tol;
        lambda = lambda_new;
        if (settled) {
            return {lambda, residual, mesh_h_max, n};
        }
    }
    throw ConvergenceError("inverse power iteration exceeded 10^4 iterations", lambda);
}

EstimateRun lambda1_estimate_run(const PlanarDomain& d, const MatrixField& a_field,
                                 int levels, double target_h,
                                 const ScalarField& mass_weight, double tol) {
    if (levels < 2) {
        throw ParameterError("lambda1_estimate needs levels >= 2");
    }
    EstimateRun run;
    TriangleMesh mesh = triangulate(d, target_h);
    for (int level = 0; level < levels; ++level) {
        if (level > 0) mesh = refine(mesh);
        SparseSystem sys = assemble(mesh, a_field, mass_weight);
        EigenResult r = smallest_eigenvalue(sys, tol, mesh.h_max);
        run.table.rows.push_back({mesh.h_max, r.lambda1});
    }
    const auto& rows = run.table.rows;
    const std::size_t L = rows.size();
    double q = 2.0;
    if (L >= 3) {
        double d1 = rows[L - 3].lambda1 - rows[L - 2].lambda1;
        double d2 = rows[L - 2].lambda1 - rows[L - 1].lambda1;
        if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
            q = std::log2(d1 / d2);
        }
    }
    run.table.observed_order = q;
    double qc = std::clamp(q, 0.5, 4.0);
    run.table.extrapolated =
        rows[L - 1].lambda1 +
        (rows[L - 1].lambda1 - rows[L - 2].lambda1) / (std::pow(2.0, qc) - 1.0);
    run.finest = std::move(mesh);
    return run;
}

ConvergenceTable lambda1_estimate(const PlanarDomain& d, const MatrixField& a_field,
                                  int levels, double target_h,
                                  const ScalarField& mass_weight, double tol) {
    return lambda1_estimate_run(d, a_field, levels, target_h, mass_weight, tol).table;
}

ReductionReport weighted_reduction_check(const CatalogEntry& e, int levels,
                                         double target_h) {
    ReductionReport rep;
    rep.direct = lambda1_estimate(e.domain, e.map.matrix, levels, target_h);
    rep.weighted = lambda1_estimate(e.image, {}, levels, target_h,
                                    e.map.inverse_jacobian_on_image);
    double a = rep.direct.extrapolated;
    double b = rep.weighted.extrapolated;
    rep.rel_diff = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    rep.ok = rep.rel_diff <= 0.02;
    return rep;
}

void write_mesh(std::ostream& os, const TriangleMesh& m) {
    os.precision(17);
    for (int v = 0; v < m.n_vertices(); ++v) {
        os << "v " << m.vertices[v].real() << ' ' << m.vertices[v].imag() << ' '
           << static_cast<int>(m.boundary[v]) << '\n';
    }
    for (const auto& t : m.triangles) {
        os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
}

TriangleMesh read_mesh(std::istream& is) {
    TriangleMesh m;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'v') {
            double x, y;
            int flag;
            ls >> x >> y >> flag;
            if (!ls) throw ParameterError("malformed vertex line: " + line);
            m.vertices.emplace_back(x, y);
            m.boundary.push_back(flag ? 1 : 0);
        } else if (tag == 't') {
            std::array<int, 3> t{};
            ls >> t[0] >> t[1] >> t[2];
            if (!ls) throw ParameterError("malformed triangle line: " + line);
            m.triangles.push_back(t);
        } else {
            throw ParameterError("unknown mesh line tag: " + line);
        }
    }
    m.h_max = compute_h_max(m);
    return m;
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& t) {
    os.precision(17);
    os << "h_max,lambda1\n";
    for (const auto& row : t.rows) {
        os << row.h_max << ',' << row.lambda1 << '\n';
    }
}

}  // namespace membrane::fem
