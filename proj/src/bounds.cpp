#include "membrane/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "membrane/fem.hpp"

namespace membrane::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::string_view theorem_name(Theorem t) {
    switch (t) {
        case Theorem::k_faber_krahn: return "K_faber_krahn";
        case Theorem::beta_regular: return "beta_regular";
        case Theorem::infty_regular: return "infty_regular";
        case Theorem::measure_preserving_rfk: return "measure_preserving_RFK";
        case Theorem::variation: return "variation";
    }
    return "unknown";
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("gamma_fn requires x > 0");
    }
    return std::tgamma(x);
}

double sp_objective(double p, double r, double area, SPFormula formula) {
    double lo = 2.0 * r / (r + 2.0);
    if (!(p > lo && p < 2.0)) {
        throw std::domain_error("sp objective requires p in (2r/(r+2), 2)");
    }
    double log_first = std::log(p - 1.0) - std::log(2.0 - p);
    if (formula == SPFormula::standard) {
        log_first *= (p - 1.0) / p;
    }
    double log_g = log_first + std::log(area) / r - 0.5 * std::log(kPi) -
                   std::log(2.0) / p -
                   0.5 * (std::lgamma(2.0 / p) + std::lgamma(3.0 - 2.0 / p));
    return std::exp(log_g);
}

SPConstant sp_constant_upper(double r, double area, SPFormula formula) {
    if (!(r >= 2.0)) {
        throw std::domain_error("sp_constant_upper requires r >= 2");
    }
    if (!(area > 0.0)) {
        throw std::domain_error("sp_constant_upper requires area > 0");
    }
    const double lo = 2.0 * r / (r + 2.0) + 1e-6;
    const double hi = 2.0 - 1e-6;
    auto g = [&](double p) { return sp_objective(p, r, area, formula); };
    if (!(hi > lo)) {
        // Degenerate clamp window (huge r); any feasible p yields a valid
        // upper bound, so evaluate the midpoint of the open interval.
        double p = 0.5 * (2.0 * r / (r + 2.0) + 2.0);
        return {r, area, g(p), p};
    }

    // Coarse scan, then golden-section inside the bracketing neighbors.
    constexpr int kGrid = 2048;
    int best = 0;
    double best_val = g(lo);
    for (int i = 1; i <= kGrid; ++i) {
        double p = lo + (hi - lo) * i / kGrid;
        double v = g(p);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = lo + (hi - lo) * std::max(best - 1, 0) / kGrid;
    double b = lo + (hi - lo) * std::min(best + 1, kGrid) / kGrid;
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = g(x2);
        }
    }
    double p_star = 0.5 * (a + b);
    // Newton polish on d/dp log g when the minimum is interior.
    if (best > 0 && best < kGrid) {
        for (int it = 0; it < 3; ++it) {
            double h = 1e-7;
            if (p_star - 2.0 * h <= lo || p_star + 2.0 * h >= hi) break;
            double lm = std::log(g(p_star - h));
            double l0 = std::log(g(p_star));
            double lp = std::log(g(p_star + h));
            double d1 = (lp - lm) / (2.0 * h);
            double d2 = (lp - 2.0 * l0 + lm) / (h * h);
            if (!(d2 > 0.0)) break;
            double next = p_star - d1 / d2;
            if (next <= lo || next >= hi) break;
            p_star = next;
        }
    }
    double v_star = g(p_star);
    if (v_star > best_val) {  // never worse than the scan
        p_star = lo + (hi - lo) * best / kGrid;
        v_star = best_val;
    }
    return {r, area, v_star, p_star};
}

double lambda1_disc(double radius) {
    if (!(radius > 0.0)) {
        throw std::domain_error("lambda1_disc requires R > 0");
    }
    return kBesselJ01 * kBesselJ01 / (radius * radius);
}

BoundReport lambda1_lower_via_K(double area, double k) {
    if (!(area > 0.0)) {
        throw std::domain_error("lambda1_lower_via_K requires area > 0");
    }
    if (!(k >= 1.0)) {
        throw std::domain_error("lambda1_lower_via_K requires K >= 1");
    }
    double r_star_sq = area / kPi;
    BoundReport rep;
    rep.theorem = Theorem::k_faber_krahn;
    rep.value = kBesselJ01 * kBesselJ01 / (k * r_star_sq);
    rep.inputs = {{"area", area}, {"K", k}, {"r_star_sq", r_star_sq}};
    return rep;
}

BoundReport lambda1_lower_infty(double lambda1_image, double jac_inf_norm) {
    if (!(lambda1_image > 0.0) || !(jac_inf_norm > 0.0)) {
        throw std::domain_error("lambda1_lower_infty requires positive inputs");
    }
    BoundReport rep;
    rep.theorem = Theorem::infty_regular;
    rep.value = lambda1_image / jac_inf_norm;
    rep.inputs = {{"lambda1_image", lambda1_image}, {"jac_inf_norm", jac_inf_norm}};
    return rep;
}

BoundReport lambda1_lower_beta(double beta, double area_image, double jac_beta_norm) {
    if (!(beta > 1.0)) {
        throw std::domain_error("lambda1_lower_beta requires beta > 1");
    }
    if (!(area_image > 0.0) || !(jac_beta_norm > 0.0)) {
        throw std::domain_error("lambda1_lower_beta requires positive inputs");
    }
    double r = 2.0 * beta / (beta - 1.0);
    SPConstant c = sp_constant_upper(r, area_image);
    BoundReport rep;
    rep.theorem = Theorem::beta_regular;
    rep.value = 1.0 / (c.value * c.value * jac_beta_norm);
    rep.inputs = {{"beta", beta},
                  {"area_image", area_image},
                  {"jac_beta_norm", jac_beta_norm},
                  {"r", r},
                  {"sp_constant", c.value},
                  {"sp_argmin_p", c.argmin_p}};
    return rep;
}

BetaNorm jacobian_beta_norm(const catalog::CatalogEntry& e, double beta, int n_refine) {
    if (!(beta >= 1.0)) {
        throw std::domain_error("jacobian_beta_norm requires beta >= 1");
    }
    if (n_refine < 1) {
        throw ParameterError("jacobian_beta_norm needs n_refine >= 1");
    }
    // 7-point degree-5 rule (barycentric points with their weights).
    struct QP {
        double l1, l2, w;
    };
    static constexpr QP kRule[7] = {
        {1.0 / 3.0, 1.0 / 3.0, 0.225},
        {0.0597158717897698, 0.4701420641051151, 0.1323941527885062},
        {0.4701420641051151, 0.0597158717897698, 0.1323941527885062},
        {0.4701420641051151, 0.4701420641051151, 0.1323941527885062},
        {0.7974269853530873, 0.1012865073234563, 0.1259391805448271},
        {0.1012865073234563, 0.7974269853530873, 0.1259391805448271},
        {0.1012865073234563, 0.1012865073234563, 0.1259391805448271},
    };

    fem::TriangleMesh mesh = fem::triangulate(e.image, e.image.diameter() / 4.0);
    double prev = 0.0, integral = 0.0;
    for (int level = 0; level < n_refine; ++level) {
        if (level > 0) {
            mesh = fem::refine(mesh);
            prev = integral;
        }
        // Pairwise (binary tree) summation over triangles for bit-stable
        // totals independent of traversal chunking.
        std::vector<double> partial(mesh.triangles.size());
        for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
            const auto& tri = mesh.triangles[t];
            Complex p0 = mesh.vertices[tri[0]];
            Complex p1 = mesh.vertices[tri[1]];
            Complex p2 = mesh.vertices[tri[2]];
            double area =
                0.5 * ((p1 - p0).real() * (p2 - p0).imag() -
                       (p1 - p0).imag() * (p2 - p0).real());
            double acc = 0.0;
            for (const auto& qp : kRule) {
                Complex w = qp.l1 * p0 + qp.l2 * p1 + (1.0 - qp.l1 - qp.l2) * p2;
                acc += qp.w * std::pow(std::abs(e.map.inverse_jacobian_on_image(w)), beta);
            }
            partial[t] = acc * area;
        }
        for (std::size_t stride = 1; stride < partial.size(); stride *= 2) {
            for (std::size_t i = 0; i + stride < partial.size(); i += 2 * stride) {
                partial[i] += partial[i + stride];
            }
        }
        integral = partial.empty() ? 0.0 : partial[0];
        if (!std::isfinite(integral)) {
            throw QuadratureError("jacobian beta-norm integral overflowed");
        }
    }
    BetaNorm out;
    out.last_rel_change =
        n_refine > 1 ? std::abs(integral - prev) / std::max(std::abs(integral), 1e-300)
                     : 0.0;
    if (n_refine > 1 && out.last_rel_change > 0.10) {
        throw QuadratureError("jacobian beta-norm did not settle under refinement");
    }
    out.value = std::pow(integral, 1.0 / beta);
    return out;
}

double variation_lower_bound(double lambda1_image, double jac_inf_norm) {
    if (!(lambda1_image > 0.0)) {
        throw std::domain_error("variation_lower_bound requires lambda1_image > 0");
    }
    if (!(jac_inf_norm > 0.0 && jac_inf_norm < 1.0)) {
        throw std::domain_error(
            "variation_lower_bound applies only for 0 < ||J|| < 1");
    }
    return (1.0 - jac_inf_norm) / jac_inf_norm * lambda1_image;
}

BoundReport faber_krahn_measure_preserving(double area) {
    if (!(area > 0.0)) {
        throw std::domain_error("faber_krahn_measure_preserving requires area > 0");
    }
    BoundReport rep;
    rep.theorem = Theorem::measure_preserving_rfk;
    rep.value = kBesselJ01 * kBesselJ01 * kPi / area;
    rep.inputs = {{"area", area}, {"r_star_sq", area / kPi}};
    return rep;
}

bool sp_remark_consistency(double lambda1_image, double area) {
    if (!(lambda1_image > 0.0) || !(area > 0.0)) {
        throw std::domain_error("sp_remark_consistency requires positive inputs");
    }
    SPConstant c = sp_constant_upper(2.0, area);
    return c.value * c.value >= 1.0 / lambda1_image;
}

}  // namespace membrane::bounds
