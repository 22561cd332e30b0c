#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "membrane/errors.hpp"

namespace membrane {

using Complex = std::complex<double>;

namespace coefficients {

/// Symmetric 2x2 coefficient matrix with det = 1.
///
/// Only the three independent entries are stored. Construction enforces
/// a11 > 0 and |det - 1| <= 1e-12; inputs with |det - 1| <= 1e-9 are
/// renormalized by 1/sqrt(det), anything farther off is rejected.
struct EllipticityMatrix {
    double a11;
    double a12;
    double a22;

    EllipticityMatrix(double a11, double a12, double a22);

    double det() const { return a11 * a22 - a12 * a12; }

    static EllipticityMatrix identity() { return {1.0, 0.0, 1.0}; }
    /// diag(alpha, 1/alpha), alpha > 0.
    static EllipticityMatrix diagonal(double alpha) { return {alpha, 0.0, 1.0 / alpha}; }
};

/// Wirtinger derivative pair (d/dz, d/dzbar) of a planar map at a point.
struct WirtingerPair {
    Complex dz;
    Complex dzbar;
};

struct DistortionSummary {
    double K;       // ellipticity constant, >= 1
    double Q;       // quasiconformality coefficient, (1+mu_sup)/(1-mu_sup)
    double mu_sup;  // in [0, 1)
};

/// Larger eigenvalue of A. With det = 1 the eigenvalues are K and 1/K, so
/// (1/K)|xi|^2 <= <A xi, xi> <= K|xi|^2 for all xi.
double ellipticity_constant(const EllipticityMatrix& a);

/// Complex dilatation mu = (a22 - a11 - 2i a12) / det(I + A).
Complex matrix_to_mu(const EllipticityMatrix& a);

/// Recover A from mu: [[|1-mu|^2, -2 Im mu], [-2 Im mu, |1+mu|^2]] / (1-|mu|^2).
/// Throws InvalidDilatationError for |mu| >= 1.
EllipticityMatrix mu_to_matrix(Complex mu);

/// (K-1)/(K+1), the dilatation bound implied by ellipticity constant K >= 1.
double k_to_mu_bound(double k);

/// (1 + mu_sup)/(1 - mu_sup) for mu_sup in [0, 1).
double quasiconformality_coefficient(double mu_sup);

DistortionSummary distortion_summary(const EllipticityMatrix& a);

using PlanarMap = std::function<Complex(Complex)>;

inline constexpr double kDefaultWirtingerStep = 1e-5;

/// Second-order central differences for (phi_z, phi_zbar) at z. The map must
/// be finite on the four stencil points z +- h, z +- ih; otherwise throws
/// StencilError.
WirtingerPair wirtinger_derivatives(const PlanarMap& map, Complex z,
                                    double h = kDefaultWirtingerStep);

/// |dz|^2 - |dzbar|^2. Signed; positive for orientation-preserving maps.
double jacobian_from_wirtinger(const WirtingerPair& w);

enum class MeasureClass { preserving, quasi_preserving, neither };

struct MeasureClassification {
    MeasureClass kind;
    double c;  // pinching constant; 1 for preserving, 0 for neither
};

inline constexpr double kDefaultMeasureTol = 1e-9;
inline constexpr double kDefaultMeasureCMax = 1e6;

/// Classify a map by its Jacobian on the given samples: preserving when
/// |J - 1| <= tol everywhere, quasi_preserving with C = max(sup J, 1/inf J)
/// when C <= c_max, neither otherwise. J <= 0 at a sample throws
/// OrientationError.
MeasureClassification classify_measure_preservation(
    const PlanarMap& map, std::span<const Complex> samples,
    double tol = kDefaultMeasureTol, double c_max = kDefaultMeasureCMax);

/// Same classification from a closed-form Jacobian.
MeasureClassification classify_measure_preservation(
    const std::function<double(Complex)>& jacobian, std::span<const Complex> samples,
    double tol = kDefaultMeasureTol, double c_max = kDefaultMeasureCMax);

}  // namespace coefficients
}  // namespace membrane
