#include "membrane/driver.hpp"

#include <algorithm>
#include <cmath>

namespace membrane::driver {

double entry_ellipticity_constant(const catalog::CatalogEntry& e, int n_samples) {
    auto samples = catalog::sample_interior(e.domain, n_samples, 1e-3);
    double k = 1.0;
    for (Complex z : samples) {
        k = std::max(k, coefficients::ellipticity_constant(e.map.matrix(z)));
    }
    return k;
}

coefficients::MeasureClassification classify_entry(const catalog::CatalogEntry& e,
                                                   int n_samples) {
    auto samples = catalog::sample_interior(e.domain, n_samples, 1e-3);
    return coefficients::classify_measure_preservation(e.map.jacobian, samples);
}

std::vector<bounds::BoundReport> applicable_bounds(const catalog::CatalogEntry& e,
                                                   std::optional<double> beta) {
    std::vector<bounds::BoundReport> out;
    out.push_back(bounds::lambda1_lower_via_K(e.domain.area(),
                                              entry_ellipticity_constant(e)));
    if (e.reference_lambda1_image) {
        out.push_back(
            bounds::lambda1_lower_infty(*e.reference_lambda1_image, e.jac_inf_norm));
    }
    if (beta) {
        bounds::BetaNorm norm = bounds::jacobian_beta_norm(e, *beta);
        out.push_back(bounds::lambda1_lower_beta(*beta, e.image.area(), norm.value));
    }
    if (classify_entry(e).kind == coefficients::MeasureClass::preserving) {
        out.push_back(bounds::faber_krahn_measure_preserving(e.domain.area()));
    }
    return out;
}

ValidationResult validate_entry(const catalog::CatalogEntry& e, int levels,
                                double target_h, std::optional<double> beta) {
    ValidationResult v;
    fem::EstimateRun direct =
        fem::lambda1_estimate_run(e.domain, e.map.matrix, levels, target_h);
    v.direct = direct.table;
    v.finest = std::move(direct.finest);
    v.fem_lambda1 = v.direct.extrapolated;
    v.weighted = fem::lambda1_estimate(e.image, {}, levels, target_h,
                                       e.map.inverse_jacobian_on_image);
    v.weighted_lambda1 = v.weighted.extrapolated;
    v.reduction_rel_diff = std::abs(v.fem_lambda1 - v.weighted_lambda1) /
                           std::max(std::abs(v.fem_lambda1), std::abs(v.weighted_lambda1));
    v.reduction_ok = v.reduction_rel_diff <= 0.02;
    v.bound_list = applicable_bounds(e, beta);
    v.pass = true;
    for (const auto& b : v.bound_list) {
        v.margins.push_back(v.fem_lambda1 - b.value);
        v.pass = v.pass && b.value <= v.fem_lambda1 * 1.005;
    }
    return v;
}

namespace {

// IEEE addition of +0.0 turns -0.0 into +0.0 and leaves everything else alone.
double scrub_zero(double x) { return x + 0.0; }

}  // namespace

json matrix_json(const coefficients::EllipticityMatrix& a) {
    return json{{"a11", a.a11}, {"a12", scrub_zero(a.a12)}, {"a22", a.a22}};
}

json distortion_json(const coefficients::DistortionSummary& d) {
    return json{{"K", d.K}, {"Q", d.Q}, {"mu_sup", d.mu_sup}};
}

json bound_report_json(const bounds::BoundReport& r) {
    json inputs = json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    return json{{"inputs", inputs},
                {"theorem", std::string(bounds::theorem_name(r.theorem))},
                {"value", r.value}};
}

json entry_json(const catalog::CatalogEntry& e) {
    json j{{"name", e.name},
           {"parameters", json::object()},
           {"domain_area", e.domain.area()},
           {"image_area", e.image.area()},
           {"jac_inf_norm", e.jac_inf_norm}};
    for (const auto& [k, v] : e.parameters) j["parameters"][k] = v;
    if (e.reference_lambda1_image) j["reference_lambda1_image"] = *e.reference_lambda1_image;
    if (e.reference_bound) j["reference_bound"] = *e.reference_bound;
    if (!e.notes.empty()) j["notes"] = e.notes;
    return j;
}

json verification_json(const catalog::VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(json{{"max_residual", c.max_residual},
                              {"name", c.name},
                              {"ok", c.ok},
                              {"witness", {c.witness.real(), c.witness.imag()}}});
    }
    return json{{"checks", checks}, {"ok", r.ok}};
}

json convergence_json(const fem::ConvergenceTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        rows.push_back(json{{"h_max", row.h_max}, {"lambda1", row.lambda1}});
    }
    return json{{"extrapolated", t.extrapolated},
                {"observed_order", t.observed_order},
                {"rows", rows}};
}

json validation_json(const ValidationResult& v) {
    json bound_list = json::array();
    for (const auto& b : v.bound_list) bound_list.push_back(bound_report_json(b));
    return json{{"bounds", bound_list},
                {"direct", convergence_json(v.direct)},
                {"fem_lambda1", v.fem_lambda1},
                {"margins", v.margins},
                {"pass", v.pass},
                {"reduction_ok", v.reduction_ok},
                {"reduction_rel_diff", v.reduction_rel_diff},
                {"weighted", convergence_json(v.weighted)},
                {"weighted_lambda1", v.weighted_lambda1}};
}

}  // namespace membrane::driver
