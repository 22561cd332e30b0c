#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "membrane/coefficients.hpp"

namespace membrane::catalog {

using coefficients::EllipticityMatrix;
using coefficients::WirtingerPair;

/// A bounded planar domain given as a polygon, a parametric boundary curve,
/// or a disc. Boundary orientation is counterclockwise.
class PlanarDomain {
public:
    enum class Kind { polygon, parametric_boundary, disc };

    PlanarDomain() = default;  // empty placeholder; use the named constructors

    static PlanarDomain polygon(std::vector<Complex> vertices);
    static PlanarDomain disc(Complex center, double radius);
    /// Polar boundary rho(theta) about `center`, theta in [-pi, pi].
    static PlanarDomain polar(Complex center, std::function<double(double)> rho);
    static PlanarDomain parametric(std::function<Complex(double)> curve, double t0, double t1);

    Kind kind() const { return kind_; }
    double area() const;
    bool contains(Complex p) const;
    /// Nearest boundary representative of p (exact for discs and polar
    /// boundaries, polyline projection otherwise).
    Complex project_boundary(Complex p) const;
    const std::vector<Complex>& vertices() const { return vertices_; }
    Complex center() const { return center_; }
    double radius() const { return radius_; }
    bool has_polar() const { return static_cast<bool>(rho_); }
    double polar_rho(double theta) const { return rho_(theta); }
    Complex curve_point(double t) const;
    std::pair<double, double> curve_range() const { return {t0_, t1_}; }
    std::pair<Complex, Complex> bounding_box() const;
    double diameter() const;

    /// Declare this domain as the image of `ref` under `from_ref`; meshers
    /// build the reference mesh and push it forward.
    void set_reference(std::shared_ptr<const PlanarDomain> ref,
                       std::function<Complex(Complex)> from_ref,
                       std::function<Complex(Complex)> to_ref);
    bool has_reference() const { return static_cast<bool>(reference_); }
    const PlanarDomain& reference() const { return *reference_; }
    Complex from_reference(Complex p) const { return from_ref_(p); }
    Complex to_reference(Complex p) const { return to_ref_(p); }

    /// Exact membership override (e.g. analytic inequality for mapped squares).
    void set_membership(std::function<bool(Complex)> inside);

private:
    const std::vector<Complex>& dense_boundary() const;

    Kind kind_ = Kind::polygon;
    std::vector<Complex> vertices_;
    Complex center_{0.0, 0.0};
    double radius_ = 0.0;
    std::function<Complex(double)> curve_;
    std::function<double(double)> rho_;
    double t0_ = 0.0, t1_ = 0.0;
    std::function<bool(Complex)> inside_override_;
    std::shared_ptr<const PlanarDomain> reference_;
    std::function<Complex(Complex)> from_ref_, to_ref_;
    mutable double area_ = -1.0;
    mutable std::shared_ptr<const std::vector<Complex>> dense_;
};

/// Counterclockwise n-vertex polygonal approximation of the boundary.
/// Polygon domains return their exact vertices; n < 8 is rejected.
std::vector<Complex> boundary_polygon(const PlanarDomain& d, int n);

/// Closed forms attached to a catalog mapping phi: domain -> image.
struct MappingSpec {
    std::function<Complex(Complex)> forward;
    std::function<WirtingerPair(Complex)> wirtinger;
    std::function<double(Complex)> jacobian;
    /// |J(w, phi^{-1})| as a function of w in the image.
    std::function<double(Complex)> inverse_jacobian_on_image;
    std::function<Complex(Complex)> mu;
    std::function<EllipticityMatrix(Complex)> matrix;
};

struct CatalogEntry {
    std::string name;
    PlanarDomain domain;
    PlanarDomain image;
    MappingSpec map;
    std::map<std::string, double> parameters;
    std::optional<double> reference_lambda1_image;
    std::optional<double> reference_bound;
    double jac_inf_norm = 0.0;  // ||J_{phi^{-1}}||_{L^inf(image)}
    std::string notes;
};

/// Known entry names, in listing order.
const std::vector<std::string>& entry_names();

/// Build a catalog entry by name. Recognized names and parameters:
///   triangle_affine      a > b >= 0          (defaults a=2, b=1)
///   cardioid_power       none
///   square_diag_stretch  a >= 1              (default a=2)
///   square_shear_stretch a >= 1, b           (defaults a=2, b=1)
///   shear_flow           slope               (default 1; f(y) = slope*y)
///   separable            a_slope, b_slope    (defaults 2, 0.5)
CatalogEntry entry(const std::string& name,
                   const std::map<std::string, double>& parameters = {});

/// shear_flow with an arbitrary C^1 shear profile f.
CatalogEntry shear_flow_entry(std::function<double(double)> f,
                              std::function<double(double)> fprime);

/// separable map a(x) + i b(y) on the unit square; a and b must be C^1 and
/// strictly increasing with b' > 0.
CatalogEntry separable_entry(std::function<double(double)> a,
                             std::function<double(double)> da,
                             std::function<double(double)> b,
                             std::function<double(double)> db);

struct VerificationReport {
    struct Check {
        std::string name;
        double max_residual;
        Complex witness;  // sample with the largest residual
        bool ok;
    };
    std::vector<Check> checks;
    bool ok = true;

    const Check* first_failure() const;
};

/// Cross-checks the closed forms of an entry at n quasi-random interior
/// samples: Beltrami residual |dzbar - mu dz| <= tol |dz|, closed-form vs
/// Wirtinger Jacobian, det(matrix) = 1, mu_to_matrix(mu) vs matrix, and
/// forward(z) in image. Non-Beltrami residuals are relative to
/// max(1, magnitude).
VerificationReport verify_entry(const CatalogEntry& e, int n_samples, double tol,
                                double margin = 1e-3);

/// n low-discrepancy interior points at distance >= margin from the boundary
/// (probed, not exact). Deterministic.
std::vector<Complex> sample_interior(const PlanarDomain& d, int n, double margin = 0.0);

}  // namespace membrane::catalog
