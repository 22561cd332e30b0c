#include "membrane/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace membrane::coefficients {

namespace {

constexpr double kDetTol = 1e-12;
constexpr double kDetRenormTol = 1e-9;

}  // namespace

EllipticityMatrix::EllipticityMatrix(double a11_, double a12_, double a22_)
    : a11(a11_), a12(a12_), a22(a22_) {
    if (!(std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a22))) {
        throw InvalidMatrixError("ellipticity matrix entries must be finite");
    }
    if (a11 <= 0.0) {
        throw InvalidMatrixError("ellipticity matrix requires a11 > 0");
    }
    double d = det();
    if (d <= 0.0) {
        throw InvalidMatrixError("ellipticity matrix must be positive definite");
    }
    if (std::abs(d - 1.0) > kDetRenormTol) {
        std::ostringstream os;
        os << "ellipticity matrix determinant " << d << " deviates from 1 by more than "
           << kDetRenormTol;
        throw InvalidMatrixError(os.str());
    }
    if (std::abs(d - 1.0) > kDetTol) {
        double s = std::sqrt(d);
        a11 /= s;
        a12 /= s;
        a22 /= s;
    }
}

double ellipticity_constant(const EllipticityMatrix& a) {
    // det = 1 makes the eigenvalues K and 1/K with K + 1/K = trace.
    double t = a.a11 + a.a22;
    double disc = t * t - 4.0;
    double k = 0.5 * (t + std::sqrt(std::max(disc, 0.0)));
    return std::max(k, 1.0);
}

Complex matrix_to_mu(const EllipticityMatrix& a) {
    double denom = (1.0 + a.a11) * (1.0 + a.a22) - a.a12 * a.a12;
    return Complex(a.a22 - a.a11, -2.0 * a.a12) / denom;
}

EllipticityMatrix mu_to_matrix(Complex mu) {
    double n2 = std::norm(mu);
    if (!(n2 < 1.0)) {
        throw InvalidDilatationError("complex dilatation requires |mu| < 1");
    }
    double denom = 1.0 - n2;
    double off = -2.0 * mu.imag() / denom;
    return {std::norm(1.0 - mu) / denom, off, std::norm(1.0 + mu) / denom};
}

double k_to_mu_bound(double k) {
    if (!(k >= 1.0)) {
        throw std::domain_error("ellipticity constant must satisfy K >= 1");
    }
    return (k - 1.0) / (k + 1.0);
}

double quasiconformality_coefficient(double mu_sup) {
    if (!(mu_sup >= 0.0 && mu_sup < 1.0)) {
        throw std::domain_error("dilatation supremum must lie in [0, 1)");
    }
    return (1.0 + mu_sup) / (1.0 - mu_sup);
}

DistortionSummary distortion_summary(const EllipticityMatrix& a) {
    double k = ellipticity_constant(a);
    double m = std::abs(matrix_to_mu(a));
    return {k, quasiconformality_coefficient(m), m};
}

WirtingerPair wirtinger_derivatives(const PlanarMap& map, Complex z, double h) {
    if (!(h > 0.0)) {
        throw std::domain_error("wirtinger step must be positive");
    }
    const Complex stencil[4] = {z + h, z - h, z + Complex(0.0, h), z - Complex(0.0, h)};
    Complex f[4];
    for (int i = 0; i < 4; ++i) {
        f[i] = map(stencil[i]);
        if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag())) {
            throw StencilError("map not finite at a wirtinger stencil point");
        }
    }
    Complex fx = (f[0] - f[1]) / (2.0 * h);
    Complex fy = (f[2] - f[3]) / (2.0 * h);
    const Complex i1(0.0, 1.0);
    return {0.5 * (fx - i1 * fy), 0.5 * (fx + i1 * fy)};
}

double jacobian_from_wirtinger(const WirtingerPair& w) {
    return std::norm(w.dz) - std::norm(w.dzbar);
}

namespace {

MeasureClassification classify_jacobian_values(std::span<const double> j, double tol,
                                               double c_max) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double dev = 0.0;
    for (double v : j) {
        if (!(v > 0.0)) {
            throw OrientationError("non-positive Jacobian sample");
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        dev = std::max(dev, std::abs(v - 1.0));
    }
    if (dev <= tol) {
        return {MeasureClass::preserving, 1.0};
    }
    double c = std::max(hi, 1.0 / lo);
    if (c <= c_max) {
        return {MeasureClass::quasi_preserving, c};
    }
    return {MeasureClass::neither, 0.0};
}

}  // namespace

MeasureClassification classify_measure_preservation(const PlanarMap& map,
                                                    std::span<const Complex> samples,
                                                    double tol, double c_max) {
    if (!(tol > 0.0) || !(c_max > 1.0)) {
        throw std::domain_error("classification requires tol > 0 and C_max > 1");
    }
    std::vector<double> j;
    j.reserve(samples.size());
    for (Complex z : samples) {
        j.push_back(jacobian_from_wirtinger(wirtinger_derivatives(map, z)));
    }
    return classify_jacobian_values(j, tol, c_max);
}

MeasureClassification classify_measure_preservation(
    const std::function<double(Complex)>& jacobian, std::span<const Complex> samples,
    double tol, double c_max) {
    if (!(tol > 0.0) || !(c_max > 1.0)) {
        throw std::domain_error("classification requires tol > 0 and C_max > 1");
    }
    std::vector<double> j;
    j.reserve(samples.size());
    for (Complex z : samples) {
        j.push_back(jacobian(z));
    }
    return classify_jacobian_values(j, tol, c_max);
}

}  // namespace membrane::coefficients
