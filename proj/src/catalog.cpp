#include "membrane/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "membrane/constants.hpp"

namespace membrane::catalog {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDenseBoundary = 4096;    // membership / bbox resolution
constexpr int kDenseArea = 65536;       // shoelace resolution for generic curves
constexpr int kPolarAreaNodes = 8192;   // periodic trapezoid nodes for 1/2 integral rho^2

double shoelace(const std::vector<Complex>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex& p = v[i];
        const Complex& q = v[(i + 1) % v.size()];
        s += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * s;
}

bool point_in_polygon(const std::vector<Complex>& v, Complex p) {
    // Crossing-number test; boundary points are unspecified.
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        double xi = v[i].real(), yi = v[i].imag();
        double xj = v[j].real(), yj = v[j].imag();
        if ((yi > p.imag()) != (yj > p.imag())) {
            double xc = xj + (p.imag() - yj) / (yi - yj) * (xi - xj);
            if (p.real() < xc) inside = !inside;
        }
    }
    return inside;
}

Complex nearest_on_segment(Complex a, Complex b, Complex p) {
    Complex d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return a;
    double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return a + t * d;
}

Complex nearest_on_polyline(const std::vector<Complex>& v, Complex p) {
    Complex best = v.front();
    double best_d = std::norm(p - best);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Complex q = nearest_on_segment(v[i], v[(i + 1) % v.size()], p);
        double d = std::norm(p - q);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

}  // namespace

PlanarDomain PlanarDomain::polygon(std::vector<Complex> vertices) {
    if (vertices.size() < 3) {
        throw ParameterError("polygon needs at least 3 vertices");
    }
    PlanarDomain d;
    d.kind_ = Kind::polygon;
    d.vertices_ = std::move(vertices);
    d.area_ = shoelace(d.vertices_);
    if (!(d.area_ > 0.0)) {
        throw ParameterError("polygon must be counterclockwise with positive area");
    }
    return d;
}

PlanarDomain PlanarDomain::disc(Complex center, double radius) {
    if (!(radius > 0.0)) {
        throw ParameterError("disc radius must be positive");
    }
    PlanarDomain d;
    d.kind_ = Kind::disc;
    d.center_ = center;
    d.radius_ = radius;
    d.area_ = kPi * radius * radius;
    return d;
}

PlanarDomain PlanarDomain::polar(Complex center, std::function<double(double)> rho) {
    PlanarDomain d;
    d.kind_ = Kind::parametric_boundary;
    d.center_ = center;
    d.rho_ = std::move(rho);
    d.t0_ = -kPi;
    d.t1_ = kPi;
    d.curve_ = [center, rho = d.rho_](double t) {
        return center + rho(t) * Complex(std::cos(t), std::sin(t));
    };
    double s = 0.0;
    double dt = 2.0 * kPi / kPolarAreaNodes;
    for (int j = 0; j < kPolarAreaNodes; ++j) {
        double r = d.rho_(-kPi + j * dt);
        s += 0.5 * r * r * dt;
    }
    d.area_ = s;
    if (!(d.area_ > 0.0)) {
        throw ParameterError("polar boundary encloses no area");
    }
    return d;
}

PlanarDomain PlanarDomain::parametric(std::function<Complex(double)> curve, double t0,
                                      double t1) {
    if (!(t1 > t0)) {
        throw ParameterError("parametric boundary needs t1 > t0");
    }
    PlanarDomain d;
    d.kind_ = Kind::parametric_boundary;
    d.curve_ = std::move(curve);
    d.t0_ = t0;
    d.t1_ = t1;
    std::vector<Complex> fine(kDenseArea);
    for (int j = 0; j < kDenseArea; ++j) {
        fine[j] = d.curve_(t0 + (t1 - t0) * j / kDenseArea);
    }
    d.area_ = shoelace(fine);
    if (!(d.area_ > 0.0)) {
        throw ParameterError("parametric boundary must be counterclockwise");
    }
    return d;
}

Complex PlanarDomain::curve_point(double t) const {
    if (!curve_) {
        throw ParameterError("domain has no boundary parametrization");
    }
    return curve_(t);
}

const std::vector<Complex>& PlanarDomain::dense_boundary() const {
    if (!dense_) {
        auto pts = std::make_shared<std::vector<Complex>>();
        pts->reserve(kDenseBoundary);
        for (int j = 0; j < kDenseBoundary; ++j) {
            pts->push_back(curve_(t0_ + (t1_ - t0_) * j / kDenseBoundary));
        }
        dense_ = pts;
    }
    return *dense_;
}

double PlanarDomain::area() const { return area_; }

bool PlanarDomain::contains(Complex p) const {
    if (inside_override_) return inside_override_(p);
    switch (kind_) {
        case Kind::polygon:
            return point_in_polygon(vertices_, p);
        case Kind::disc:
            return std::abs(p - center_) < radius_;
        case Kind::parametric_boundary:
            if (rho_) {
                Complex q = p - center_;
                double r = std::abs(q);
                if (r == 0.0) return rho_(0.0) > 0.0;
                return r < rho_(std::arg(q));
            }
            return point_in_polygon(dense_boundary(), p);
    }
    return false;
}

Complex PlanarDomain::project_boundary(Complex p) const {
    switch (kind_) {
        case Kind::disc: {
            Complex q = p - center_;
            double r = std::abs(q);
            if (r == 0.0) return center_ + Complex(radius_, 0.0);
            return center_ + q * (radius_ / r);
        }
        case Kind::parametric_boundary:
            if (rho_) {
                double t = std::arg(p - center_);
                return center_ + rho_(t) * Complex(std::cos(t), std::sin(t));
            }
            return nearest_on_polyline(dense_boundary(), p);
        case Kind::polygon:
            return nearest_on_polyline(vertices_, p);
    }
    return p;
}

std::pair<Complex, Complex> PlanarDomain::bounding_box() const {
    const std::vector<Complex>* pts = nullptr;
    if (kind_ == Kind::polygon) {
        pts = &vertices_;
    } else if (kind_ == Kind::disc) {
        return {center_ - Complex(radius_, radius_), center_ + Complex(radius_, radius_)};
    } else {
        pts = &dense_boundary();
    }
    double xlo = pts->front().real(), xhi = xlo;
    double ylo = pts->front().imag(), yhi = ylo;
    for (Complex p : *pts) {
        xlo = std::min(xlo, p.real());
        xhi = std::max(xhi, p.real());
        ylo = std::min(ylo, p.imag());
        yhi = std::max(yhi, p.imag());
    }
    return {Complex(xlo, ylo), Complex(xhi, yhi)};
}

double PlanarDomain::diameter() const {
    auto [lo, hi] = bounding_box();
    return std::abs(hi - lo);
}

void PlanarDomain::set_reference(std::shared_ptr<const PlanarDomain> ref,
                                 std::function<Complex(Complex)> from_ref,
                                 std::function<Complex(Complex)> to_ref) {
    reference_ = std::move(ref);
    from_ref_ = std::move(from_ref);
    to_ref_ = std::move(to_ref);
}

void PlanarDomain::set_membership(std::function<bool(Complex)> inside) {
    inside_override_ = std::move(inside);
}

std::vector<Complex> boundary_polygon(const PlanarDomain& d, int n) {
    if (n < 8) {
        throw ParameterError("boundary_polygon needs n >= 8");
    }
    switch (d.kind()) {
        case PlanarDomain::Kind::polygon:
            return d.vertices();
        case PlanarDomain::Kind::disc: {
            std::vector<Complex> v(n);
            for (int j = 0; j < n; ++j) {
                double t = 2.0 * kPi * j / n;
                v[j] = d.center() + d.radius() * Complex(std::cos(t), std::sin(t));
            }
            return v;
        }
        case PlanarDomain::Kind::parametric_boundary: {
            auto [t0, t1] = d.curve_range();
            std::vector<Complex> v(n);
            for (int j = 0; j < n; ++j) {
                v[j] = d.curve_point(t0 + (t1 - t0) * j / n);
            }
            return v;
        }
    }
    throw ParameterError("unknown domain kind");
}

std::vector<Complex> sample_interior(const PlanarDomain& d, int n, double margin) {
    if (n < 1) {
        throw ParameterError("sample_interior needs n >= 1");
    }
    auto [lo, hi] = d.bounding_box();
    double w = hi.real() - lo.real();
    double h = hi.imag() - lo.imag();
    auto accepted = [&](Complex p) {
        if (!d.contains(p)) return false;
        if (margin > 0.0) {
            for (int k = 0; k < 8; ++k) {
                double t = kPi * k / 4.0;
                if (!d.contains(p + margin * Complex(std::cos(t), std::sin(t)))) return false;
            }
        }
        return true;
    };
    // R2 additive recurrence (plastic constant); deterministic.
    constexpr double g = 1.32471795724474602596;
    constexpr double a1 = 1.0 / g;
    constexpr double a2 = 1.0 / (g * g);
    std::vector<Complex> out;
    out.reserve(n);
    long attempts = 0;
    const long cap = std::max(200000L, 10000L * n);
    double u = 0.5, v = 0.5;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > cap) {
            throw ParameterError("interior sampling failed; margin too large for domain");
        }
        u += a1;
        u -= std::floor(u);
        v += a2;
        v -= std::floor(v);
        Complex p(lo.real() + u * w, lo.imag() + v * h);
        if (accepted(p)) out.push_back(p);
    }
    return out;
}

namespace {

PlanarDomain unit_square() {
    return PlanarDomain::polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

CatalogEntry make_triangle_affine(double a, double b) {
    if (!(a > b && b >= 0.0)) {
        throw ParameterError("triangle_affine requires a > b >= 0");
    }
    const double s = a * a - b * b;
    CatalogEntry e;
    e.name = "triangle_affine";
    e.parameters = {{"a", a}, {"b", b}};
    e.domain = PlanarDomain::polygon({{0.0, 0.0}, {a + b, 0.0}, {0.0, a - b}});
    e.image = PlanarDomain::polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    e.map.forward = [a, b, s](Complex z) { return (a * z - b * std::conj(z)) / s; };
    e.map.wirtinger = [a, b, s](Complex) { return WirtingerPair{a / s, -b / s}; };
    e.map.jacobian = [s](Complex) { return 1.0 / s; };
    e.map.inverse_jacobian_on_image = [s](Complex) { return s; };
    e.map.mu = [a, b](Complex) { return Complex(-b / a, 0.0); };
    e.map.matrix = [a, b](Complex) {
        return EllipticityMatrix((a + b) / (a - b), 0.0, (a - b) / (a + b));
    };
    e.jac_inf_norm = s;
    e.reference_lambda1_image = 5.0 * kPi * kPi;
    e.reference_bound = 5.0 * kPi * kPi / s;
    return e;
}

CatalogEntry make_cardioid_power() {
    CatalogEntry e;
    e.name = "cardioid_power";
    auto rho = [](double t) {
        double c = std::cos(0.5 * t);
        return c * c * c * c;
    };
    e.domain = PlanarDomain::polar({0.0, 0.0}, rho);
    e.domain.set_membership([rho](Complex z) {
        double r = std::abs(z);
        if (r == 0.0) return false;  // the cusp sits at the origin
        return r < rho(std::arg(z));
    });
    e.image = PlanarDomain::disc({0.0, 0.0}, 1.0);

    auto forward = [](Complex z) {
        double r = std::abs(z);
        if (r == 0.0) return Complex(-1.0, 0.0);
        double t = std::arg(z);
        return 2.0 * std::pow(r, 0.25) * Complex(std::cos(0.5 * t), std::sin(0.5 * t)) -
               1.0;
    };
    auto inverse = [](Complex w) {
        Complex q = w + 1.0;
        double s = 0.5 * std::abs(q);
        if (s == 0.0) return Complex(0.0, 0.0);
        double t = 2.0 * std::arg(q);
        double r = s * s * s * s;
        return r * Complex(std::cos(t), std::sin(t));
    };
    e.domain.set_reference(std::make_shared<PlanarDomain>(e.image), inverse, forward);

    e.map.forward = forward;
    e.map.wirtinger = [](Complex z) {
        double r = std::abs(z);
        double t = std::arg(z);
        double m = std::pow(r, -0.75);
        Complex dz = 0.75 * m * Complex(std::cos(0.5 * t), -std::sin(0.5 * t));
        Complex dzb = -0.25 * m * Complex(std::cos(1.5 * t), std::sin(1.5 * t));
        return WirtingerPair{dz, dzb};
    };
    e.map.jacobian = [](Complex z) { return 0.5 * std::pow(std::abs(z), -1.5); };
    e.map.inverse_jacobian_on_image = [](Complex w) {
        double m = std::abs(w + 1.0);
        return m * m * m * m * m * m / 32.0;
    };
    e.map.mu = [](Complex z) { return -(z / std::conj(z)) / 3.0; };
    e.map.matrix = [mu = e.map.mu](Complex z) {
        return coefficients::mu_to_matrix(mu(z));
    };
    e.jac_inf_norm = 2.0;
    e.reference_lambda1_image = kBesselJ01 * kBesselJ01;
    e.reference_bound = kBesselJ01 * kBesselJ01 / 2.0;
    return e;
}

CatalogEntry make_square_diag_stretch(double a) {
    if (!(a >= 1.0)) {
        throw ParameterError("square_diag_stretch requires a >= 1");
    }
    CatalogEntry e;
    e.name = "square_diag_stretch";
    e.parameters = {{"a", a}};
    e.domain = unit_square();
    e.image = PlanarDomain::polygon(
        {{0.0, 0.0}, {a, 0.0}, {a, 1.0 / a}, {0.0, 1.0 / a}});
    e.map.forward = [a](Complex z) { return Complex(a * z.real(), z.imag() / a); };
    e.map.wirtinger = [a](Complex) {
        return WirtingerPair{0.5 * (a + 1.0 / a), 0.5 * (a - 1.0 / a)};
    };
    e.map.jacobian = [](Complex) { return 1.0; };
    e.map.inverse_jacobian_on_image = [](Complex) { return 1.0; };
    const double mu = (a * a - 1.0) / (a * a + 1.0);
    e.map.mu = [mu](Complex) { return Complex(mu, 0.0); };
    e.map.matrix = [a](Complex) { return EllipticityMatrix(1.0 / (a * a), 0.0, a * a); };
    e.jac_inf_norm = 1.0;
    e.reference_lambda1_image = kPi * kPi * (1.0 / (a * a) + a * a);
    e.reference_bound = e.reference_lambda1_image;
    return e;
}

CatalogEntry make_square_shear_stretch(double a, double b) {
    if (!(a >= 1.0)) {
        throw ParameterError("square_shear_stretch requires a >= 1");
    }
    CatalogEntry e;
    e.name = "square_shear_stretch";
    e.parameters = {{"a", a}, {"b", b}};
    e.domain = unit_square();
    e.image = PlanarDomain::polygon(
        {{0.0, 0.0}, {a, 0.0}, {a + b, 1.0 / a}, {b, 1.0 / a}});
    e.map.forward = [a, b](Complex z) {
        return Complex(a * z.real() + b * z.imag(), z.imag() / a);
    };
    e.map.wirtinger = [a, b](Complex) {
        return WirtingerPair{Complex(0.5 * (a + 1.0 / a), -0.5 * b),
                             Complex(0.5 * (a - 1.0 / a), 0.5 * b)};
    };
    e.map.jacobian = [](Complex) { return 1.0; };
    e.map.inverse_jacobian_on_image = [](Complex) { return 1.0; };
    const double a2 = a * a;
    const double denom = (a2 + 1.0) * (a2 + 1.0) + a2 * b * b;
    const Complex mu(((a2 - 1.0) * (a2 + 1.0) - a2 * b * b) / denom,
                     2.0 * a2 * a * b / denom);
    e.map.mu = [mu](Complex) { return mu; };
    e.map.matrix = [mu](Complex) { return coefficients::mu_to_matrix(mu); };
    e.jac_inf_norm = 1.0;
    return e;
}

CatalogEntry make_shear_flow(std::function<double(double)> f,
                             std::function<double(double)> fprime,
                             std::optional<double> linear_slope) {
    CatalogEntry e;
    e.name = "shear_flow";
    e.domain = unit_square();
    auto forward = [f](Complex z) { return Complex(z.real() + f(z.imag()), z.imag()); };
    if (linear_slope) {
        double c = *linear_slope;
        e.parameters = {{"slope", c}};
        e.image = PlanarDomain::polygon(
            {{0.0, 0.0}, {1.0, 0.0}, {1.0 + c, 1.0}, {c, 1.0}});
    } else {
        auto curve = [forward](double t) {
            Complex q;
            if (t < 1.0) {
                q = Complex(t, 0.0);
            } else if (t < 2.0) {
                q = Complex(1.0, t - 1.0);
            } else if (t < 3.0) {
                q = Complex(3.0 - t, 1.0);
            } else {
                q = Complex(0.0, 4.0 - t);
            }
            return forward(q);
        };
        e.image = PlanarDomain::parametric(curve, 0.0, 4.0);
        e.image.set_membership([f](Complex w) {
            double v = w.imag();
            if (!(v > 0.0 && v < 1.0)) return false;
            double u = w.real() - f(v);
            return u > 0.0 && u < 1.0;
        });
        e.image.set_reference(
            std::make_shared<PlanarDomain>(unit_square()), forward,
            [f](Complex w) { return Complex(w.real() - f(w.imag()), w.imag()); });
    }
    e.map.forward = forward;
    e.map.wirtinger = [fprime](Complex z) {
        double t = fprime(z.imag());
        return WirtingerPair{Complex(1.0, -0.5 * t), Complex(0.0, 0.5 * t)};
    };
    e.map.jacobian = [](Complex) { return 1.0; };
    e.map.inverse_jacobian_on_image = [](Complex) { return 1.0; };
    e.map.mu = [fprime](Complex z) {
        double t = fprime(z.imag());
        return Complex(-t * t, 2.0 * t) / (4.0 + t * t);
    };
    e.map.matrix = [fprime](Complex z) {
        double t = fprime(z.imag());
        return EllipticityMatrix(1.0 + t * t, -t, 1.0);
    };
    e.jac_inf_norm = 1.0;
    e.notes =
        "matrix chosen so that matrix_to_mu(A(z)) equals the map dilatation; the "
        "swapped-diagonal variant [[1,-f'],[-f',1+f'^2]] fails that identity";
    return e;
}

double monotone_inverse(const std::function<double(double)>& fn, double lo, double hi,
                        double target) {
    // fn strictly increasing on [lo, hi]; plain bisection.
    double flo = fn(lo);
    double fhi = fn(hi);
    if (target <= flo) return lo;
    if (target >= fhi) return hi;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (fn(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CatalogEntry make_separable(std::function<double(double)> a,
                            std::function<double(double)> da,
                            std::function<double(double)> b,
                            std::function<double(double)> db) {
    constexpr int kGrid = 4096;
    double inf_da = std::numeric_limits<double>::infinity();
    double inf_db = inf_da;
    for (int j = 0; j <= kGrid; ++j) {
        double t = static_cast<double>(j) / kGrid;
        inf_da = std::min(inf_da, da(t));
        inf_db = std::min(inf_db, db(t));
    }
    if (!(inf_db > 0.0)) {
        throw ParameterError("separable requires inf b' > 0");
    }
    if (!(inf_da > 0.0)) {
        throw ParameterError("separable requires inf a' > 0");
    }
    CatalogEntry e;
    e.name = "separable";
    e.domain = unit_square();
    const double u0 = a(0.0), u1 = a(1.0), v0 = b(0.0), v1 = b(1.0);
    e.image = PlanarDomain::polygon({{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}});
    e.map.forward = [a, b](Complex z) { return Complex(a(z.real()), b(z.imag())); };
    e.map.wirtinger = [da, db](Complex z) {
        double ap = da(z.real());
        double bp = db(z.imag());
        return WirtingerPair{Complex(0.5 * (ap + bp), 0.0), Complex(0.5 * (ap - bp), 0.0)};
    };
    e.map.jacobian = [da, db](Complex z) { return da(z.real()) * db(z.imag()); };
    e.map.inverse_jacobian_on_image = [a, b, da, db, u0, u1, v0, v1](Complex w) {
        double x = monotone_inverse(a, 0.0, 1.0, std::clamp(w.real(), u0, u1));
        double y = monotone_inverse(b, 0.0, 1.0, std::clamp(w.imag(), v0, v1));
        return 1.0 / (da(x) * db(y));
    };
    e.map.mu = [da, db](Complex z) {
        double ap = da(z.real());
        double bp = db(z.imag());
        return Complex((ap - bp) / (ap + bp), 0.0);
    };
    e.map.matrix = [da, db](Complex z) {
        double ap = da(z.real());
        double bp = db(z.imag());
        return EllipticityMatrix(bp / ap, 0.0, ap / bp);
    };
    e.jac_inf_norm = 1.0 / (inf_da * inf_db);
    const double w = u1 - u0;
    const double h = v1 - v0;
    e.reference_lambda1_image = kPi * kPi * (1.0 / (w * w) + 1.0 / (h * h));
    e.reference_bound = *e.reference_lambda1_image / e.jac_inf_norm;
    return e;
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void require_keys(const std::map<std::string, double>& params,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return key == k;
            }) == allowed.end()) {
            throw ParameterError("unknown parameter '" + key + "'");
        }
    }
}

}  // namespace

const std::vector<std::string>& entry_names() {
    static const std::vector<std::string> names = {
        "triangle_affine",     "cardioid_power", "square_diag_stretch",
        "square_shear_stretch", "shear_flow",     "separable"};
    return names;
}

CatalogEntry entry(const std::string& name,
                   const std::map<std::string, double>& parameters) {
    if (name == "triangle_affine") {
        require_keys(parameters, {"a", "b"});
        return make_triangle_affine(param_or(parameters, "a", 2.0),
                                    param_or(parameters, "b", 1.0));
    }
    if (name == "cardioid_power") {
        require_keys(parameters, {});
        return make_cardioid_power();
    }
    if (name == "square_diag_stretch") {
        require_keys(parameters, {"a"});
        return make_square_diag_stretch(param_or(parameters, "a", 2.0));
    }
    if (name == "square_shear_stretch") {
        require_keys(parameters, {"a", "b"});
        return make_square_shear_stretch(param_or(parameters, "a", 2.0),
                                         param_or(parameters, "b", 1.0));
    }
    if (name == "shear_flow") {
        require_keys(parameters, {"slope"});
        double c = param_or(parameters, "slope", 1.0);
        return make_shear_flow([c](double y) { return c * y; },
                               [c](double) { return c; }, c);
    }
    if (name == "separable") {
        require_keys(parameters, {"a_slope", "b_slope"});
        double sa = param_or(parameters, "a_slope", 2.0);
        double sb = param_or(parameters, "b_slope", 0.5);
        if (!(sa > 0.0)) throw ParameterError("separable requires inf a' > 0");
        if (!(sb > 0.0)) throw ParameterError("separable requires inf b' > 0");
        auto e = make_separable([sa](double x) { return sa * x; },
                                [sa](double) { return sa; },
                                [sb](double y) { return sb * y; },
                                [sb](double) { return sb; });
        e.parameters = {{"a_slope", sa}, {"b_slope", sb}};
        return e;
    }
    throw ParameterError("unknown catalog entry '" + name + "'");
}

CatalogEntry shear_flow_entry(std::function<double(double)> f,
                              std::function<double(double)> fprime) {
    return make_shear_flow(std::move(f), std::move(fprime), std::nullopt);
}

CatalogEntry separable_entry(std::function<double(double)> a,
                             std::function<double(double)> da,
                             std::function<double(double)> b,
                             std::function<double(double)> db) {
    return make_separable(std::move(a), std::move(da), std::move(b), std::move(db));
}

const VerificationReport::Check* VerificationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.ok) return &c;
    }
    return nullptr;
}

VerificationReport verify_entry(const CatalogEntry& e, int n_samples, double tol,
                                double margin) {
    if (n_samples < 1) {
        throw ParameterError("verify_entry needs n_samples >= 1");
    }
    if (!(tol > 0.0)) {
        throw ParameterError("verify_entry needs tol > 0");
    }
    auto samples = sample_interior(e.domain, n_samples, margin);

    VerificationReport report;
    auto add = [&](const std::string& name) {
        report.checks.push_back({name, 0.0, Complex(0, 0), true});
        return report.checks.size() - 1;
    };
    std::size_t i_bel = add("beltrami_residual");
    std::size_t i_jac = add("jacobian_consistency");
    std::size_t i_det = add("matrix_determinant");
    std::size_t i_mat = add("matrix_from_mu");
    std::size_t i_mem = add("image_membership");

    auto record = [&](std::size_t idx, double res, Complex z) {
        auto& c = report.checks[idx];
        if (res > c.max_residual) {
            c.max_residual = res;
            c.witness = z;
        }
    };

    for (Complex z : samples) {
        WirtingerPair w = e.map.wirtinger(z);
        Complex mu = e.map.mu(z);
        double dz = std::abs(w.dz);
        double bel = dz > 0.0 ? std::abs(w.dzbar - mu * w.dz) / dz
                              : std::numeric_limits<double>::infinity();
        record(i_bel, bel, z);

        double jc = e.map.jacobian(z);
        double jw = coefficients::jacobian_from_wirtinger(w);
        record(i_jac, std::abs(jc - jw) / std::max({1.0, std::abs(jc), std::abs(jw)}), z);

        EllipticityMatrix m = e.map.matrix(z);
        record(i_det, std::abs(m.det() - 1.0), z);

        EllipticityMatrix r = coefficients::mu_to_matrix(mu);
        double scale = std::max({1.0, std::abs(m.a11), std::abs(m.a22)});
        double md = std::max({std::abs(m.a11 - r.a11), std::abs(m.a12 - r.a12),
                              std::abs(m.a22 - r.a22)}) /
                    scale;
        record(i_mat, md, z);

        record(i_mem, e.image.contains(e.map.forward(z)) ? 0.0 : 1.0, z);
    }

    for (auto& c : report.checks) {
        c.ok = c.max_residual <= tol;
        report.ok = report.ok && c.ok;
    }
    return report;
}

}  // namespace membrane::catalog
