#pragma once

#include <map>
#include <string>
#include <string_view>

#include "membrane/catalog.hpp"
#include "membrane/constants.hpp"

namespace membrane::bounds {

enum class Theorem {
    k_faber_krahn,
    beta_regular,
    infty_regular,
    measure_preserving_rfk,
    variation,
};

std::string_view theorem_name(Theorem t);

/// A lower bound for lambda1(A, Omega) with the quantities that produced it.
struct BoundReport {
    double value = 0.0;
    Theorem theorem = Theorem::infty_regular;
    std::map<std::string, double> inputs;
};

/// Gamma function on x > 0 (relative error well below 1e-12 on (0.9, 3.1)).
double gamma_fn(double x);

enum class SPFormula {
    standard,              // first factor ((p-1)/(2-p))^((p-1)/p)
    unit_exponent_variant  // first factor ((p-1)/(2-p))^1
};

/// Upper estimate of the Sobolev-Poincare constant C_{r,2} on a domain of the
/// given area, with the p that attains the minimum of the objective over the
/// clamped interval [2r/(r+2)+1e-6, 2-1e-6].
struct SPConstant {
    double r = 0.0;
    double area = 0.0;
    double value = 0.0;
    double argmin_p = 0.0;
};

SPConstant sp_constant_upper(double r, double area, SPFormula formula = SPFormula::standard);

/// The minimized objective itself, exposed for property checks.
double sp_objective(double p, double r, double area, SPFormula formula = SPFormula::standard);

/// First Dirichlet eigenvalue of the Laplacian on a disc of radius R.
double lambda1_disc(double radius);

/// lambda1(A, Omega) >= j01^2 / (K R*^2) with pi R*^2 = area.
BoundReport lambda1_lower_via_K(double area, double k);

/// lambda1(A, Omega) >= lambda1(image) / ||J_{phi^{-1}}||_inf.
BoundReport lambda1_lower_infty(double lambda1_image, double jac_inf_norm);

/// lambda1(A, Omega) >= 1 / (C_{2b/(b-1),2}(image)^2 * ||J_{phi^{-1}}||_beta).
BoundReport lambda1_lower_beta(double beta, double area_image, double jac_beta_norm);

/// L^beta norm of |J(w, phi^{-1})| over the image by triangle quadrature on
/// n_refine uniformly refined meshes. Throws QuadratureError when the last
/// refinement still moves the integral by more than 10%.
struct BetaNorm {
    double value = 0.0;
    double last_rel_change = 0.0;
};
BetaNorm jacobian_beta_norm(const catalog::CatalogEntry& e, double beta, int n_refine = 5);

/// Lower bound for lambda1(A, Omega) - lambda1(image) when the image contains
/// the domain and ||J_{phi^{-1}}||_inf < 1.
double variation_lower_bound(double lambda1_image, double jac_inf_norm);

/// lambda1(A, Omega) >= j01^2 pi / area for measure-preserving entries.
BoundReport faber_krahn_measure_preserving(double area);

/// Checks that the C_{2,2} upper estimate dominates the exact constant
/// 1/sqrt(lambda1) of a domain with the given area and first eigenvalue.
bool sp_remark_consistency(double lambda1_image, double area);

}  // namespace membrane::bounds
