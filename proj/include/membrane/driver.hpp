#pragma once

#include <optional>

#include <json.hpp>

#include "membrane/bounds.hpp"
#include "membrane/fem.hpp"

namespace membrane::driver {

using nlohmann::json;

/// Essential-sup of the pointwise ellipticity constant over interior samples.
double entry_ellipticity_constant(const catalog::CatalogEntry& e, int n_samples = 512);

/// Measure-preservation classification of the entry's closed-form Jacobian.
coefficients::MeasureClassification classify_entry(const catalog::CatalogEntry& e,
                                                   int n_samples = 256);

/// Every bound that applies to the entry: the K-based Faber-Krahn bound
/// always, the infinity-regular bound when a reference image eigenvalue is
/// known, the beta-regular bound when beta is given, and the
/// measure-preserving Rayleigh-Faber-Krahn bound when the entry classifies
/// as preserving.
std::vector<bounds::BoundReport> applicable_bounds(const catalog::CatalogEntry& e,
                                                   std::optional<double> beta = {});

struct ValidationResult {
    std::vector<bounds::BoundReport> bound_list;
    fem::ConvergenceTable direct;
    fem::ConvergenceTable weighted;
    double fem_lambda1 = 0.0;
    double weighted_lambda1 = 0.0;
    double reduction_rel_diff = 0.0;
    bool reduction_ok = false;
    std::vector<double> margins;  // fem_lambda1 - bound value, per bound
    bool pass = false;            // every bound <= fem_lambda1 * 1.005
    fem::TriangleMesh finest;     // finest direct mesh, for export
};

ValidationResult validate_entry(const catalog::CatalogEntry& e, int levels,
                                double target_h, std::optional<double> beta = {});

json matrix_json(const coefficients::EllipticityMatrix& a);
json distortion_json(const coefficients::DistortionSummary& d);
json bound_report_json(const bounds::BoundReport& r);
json entry_json(const catalog::CatalogEntry& e);
json verification_json(const catalog::VerificationReport& r);
json convergence_json(const fem::ConvergenceTable& t);
json validation_json(const ValidationResult& v);

}  // namespace membrane::driver
