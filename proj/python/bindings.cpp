#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "membrane/driver.hpp"

namespace py = pybind11;

using membrane::Complex;
namespace coeff = membrane::coefficients;
namespace cat = membrane::catalog;
namespace bnd = membrane::bounds;
namespace fem = membrane::fem;
namespace drv = membrane::driver;

namespace {

py::dict bound_dict(const bnd::BoundReport& r) {
    py::dict d;
    d["value"] = r.value;
    d["theorem"] = std::string(bnd::theorem_name(r.theorem));
    d["inputs"] = r.inputs;
    return d;
}

py::dict table_dict(const fem::ConvergenceTable& t) {
    py::list rows;
    for (const auto& row : t.rows) {
        rows.append(py::make_tuple(row.h_max, row.lambda1));
    }
    py::dict d;
    d["rows"] = rows;
    d["extrapolated"] = t.extrapolated;
    d["observed_order"] = t.observed_order;
    return d;
}

cat::CatalogEntry entry_from_kwargs(const std::string& name,
                                    const std::map<std::string, double>& params) {
    return cat::entry(name, params);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lower bounds for first Dirichlet eigenvalues of planar divergence-form "
              "elliptic operators";

    py::register_exception<membrane::InvalidMatrixError>(m, "InvalidMatrixError",
                                                         PyExc_ValueError);
    py::register_exception<membrane::InvalidDilatationError>(m, "InvalidDilatationError",
                                                             PyExc_ValueError);
    py::register_exception<membrane::ParameterError>(m, "ParameterError", PyExc_ValueError);

    py::class_<coeff::EllipticityMatrix>(m, "EllipticityMatrix")
        .def(py::init<double, double, double>(), py::arg("a11"), py::arg("a12"),
             py::arg("a22"))
        .def_readonly("a11", &coeff::EllipticityMatrix::a11)
        .def_readonly("a12", &coeff::EllipticityMatrix::a12)
        .def_readonly("a22", &coeff::EllipticityMatrix::a22)
        .def("det", &coeff::EllipticityMatrix::det)
        .def_static("identity", &coeff::EllipticityMatrix::identity)
        .def_static("diagonal", &coeff::EllipticityMatrix::diagonal)
        .def("__repr__", [](const coeff::EllipticityMatrix& a) {
            return "EllipticityMatrix(" + std::to_string(a.a11) + ", " +
                   std::to_string(a.a12) + ", " + std::to_string(a.a22) + ")";
        });

    m.def("ellipticity_constant", &coeff::ellipticity_constant);
    m.def("matrix_to_mu", &coeff::matrix_to_mu);
    m.def("mu_to_matrix", &coeff::mu_to_matrix);
    m.def("k_to_mu_bound", &coeff::k_to_mu_bound);
    m.def("quasiconformality_coefficient", &coeff::quasiconformality_coefficient);
    m.def("distortion_summary", [](const coeff::EllipticityMatrix& a) {
        auto d = coeff::distortion_summary(a);
        py::dict out;
        out["K"] = d.K;
        out["Q"] = d.Q;
        out["mu_sup"] = d.mu_sup;
        return out;
    });
    m.def(
        "wirtinger_derivatives",
        [](const std::function<Complex(Complex)>& map, Complex z, double h) {
            auto w = coeff::wirtinger_derivatives(map, z, h);
            return py::make_tuple(w.dz, w.dzbar);
        },
        py::arg("map"), py::arg("z"), py::arg("h") = coeff::kDefaultWirtingerStep);

    m.attr("BESSEL_J01") = membrane::kBesselJ01;
    m.def("gamma_fn", &bnd::gamma_fn);
    m.def(
        "sp_constant_upper",
        [](double r, double area) {
            auto c = bnd::sp_constant_upper(r, area);
            py::dict d;
            d["r"] = c.r;
            d["area"] = c.area;
            d["value"] = c.value;
            d["argmin_p"] = c.argmin_p;
            return d;
        },
        py::arg("r"), py::arg("area"));
    m.def("lambda1_disc", &bnd::lambda1_disc);
    m.def("lambda1_lower_via_K",
          [](double area, double k) { return bound_dict(bnd::lambda1_lower_via_K(area, k)); });
    m.def("lambda1_lower_infty", [](double lam, double jac) {
        return bound_dict(bnd::lambda1_lower_infty(lam, jac));
    });
    m.def("variation_lower_bound", &bnd::variation_lower_bound);
    m.def("faber_krahn_measure_preserving",
          [](double area) { return bound_dict(bnd::faber_krahn_measure_preserving(area)); });
    m.def("sp_remark_consistency", &bnd::sp_remark_consistency);

    py::class_<cat::CatalogEntry>(m, "CatalogEntry")
        .def_readonly("name", &cat::CatalogEntry::name)
        .def_readonly("parameters", &cat::CatalogEntry::parameters)
        .def_readonly("jac_inf_norm", &cat::CatalogEntry::jac_inf_norm)
        .def_readonly("notes", &cat::CatalogEntry::notes)
        .def_property_readonly("reference_lambda1_image",
                               [](const cat::CatalogEntry& e) {
                                   return e.reference_lambda1_image;
                               })
        .def_property_readonly("reference_bound",
                               [](const cat::CatalogEntry& e) { return e.reference_bound; })
        .def_property_readonly("domain_area",
                               [](const cat::CatalogEntry& e) { return e.domain.area(); })
        .def_property_readonly("image_area",
                               [](const cat::CatalogEntry& e) { return e.image.area(); })
        .def("mu", [](const cat::CatalogEntry& e, Complex z) { return e.map.mu(z); })
        .def("forward",
             [](const cat::CatalogEntry& e, Complex z) { return e.map.forward(z); })
        .def("jacobian",
             [](const cat::CatalogEntry& e, Complex z) { return e.map.jacobian(z); })
        .def("verify",
             [](const cat::CatalogEntry& e, int n_samples, double tol) {
                 auto rep = cat::verify_entry(e, n_samples, tol);
                 py::dict d;
                 d["ok"] = rep.ok;
                 py::dict checks;
                 for (const auto& c : rep.checks) {
                     checks[c.name.c_str()] = c.max_residual;
                 }
                 d["max_residuals"] = checks;
                 return d;
             },
             py::arg("n_samples") = 1000, py::arg("tol") = 1e-6)
        .def("__repr__", [](const cat::CatalogEntry& e) {
            return "<CatalogEntry " + e.name + ">";
        });

    m.def("entry_names", [] { return cat::entry_names(); });
    m.def("entry", &entry_from_kwargs, py::arg("name"),
          py::arg("parameters") = std::map<std::string, double>{});

    m.def(
        "applicable_bounds",
        [](const cat::CatalogEntry& e, std::optional<double> beta) {
            py::list out;
            for (const auto& b : drv::applicable_bounds(e, beta)) {
                out.append(bound_dict(b));
            }
            return out;
        },
        py::arg("entry"), py::arg("beta") = std::nullopt);

    m.def(
        "jacobian_beta_norm",
        [](const cat::CatalogEntry& e, double beta, int n_refine) {
            auto n = bnd::jacobian_beta_norm(e, beta, n_refine);
            return py::make_tuple(n.value, n.last_rel_change);
        },
        py::arg("entry"), py::arg("beta"), py::arg("n_refine") = 5);

    m.def(
        "lambda1_estimate",
        [](const cat::CatalogEntry& e, int levels, double target_h) {
            return table_dict(fem::lambda1_estimate(e.domain, e.map.matrix, levels, target_h));
        },
        py::arg("entry"), py::arg("levels") = 3, py::arg("target_h") = 0.1);

    m.def(
        "laplace_lambda1",
        [](const std::string& domain, int levels, double target_h) {
            cat::PlanarDomain d;
            if (domain == "unit_square") {
                d = cat::PlanarDomain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
            } else if (domain == "unit_disc") {
                d = cat::PlanarDomain::disc({0, 0}, 1.0);
            } else if (domain == "unit_triangle45") {
                d = cat::PlanarDomain::polygon({{0, 0}, {1, 0}, {0, 1}});
            } else {
                throw membrane::ParameterError("unknown domain '" + domain + "'");
            }
            return table_dict(fem::lambda1_estimate(d, {}, levels, target_h));
        },
        py::arg("domain"), py::arg("levels") = 3, py::arg("target_h") = 0.1);

    m.def(
        "validate",
        [](const std::string& name, const std::map<std::string, double>& params,
           int levels, double target_h, std::optional<double> beta) {
            auto v = drv::validate_entry(cat::entry(name, params), levels, target_h, beta);
            py::dict d;
            py::list blist;
            for (const auto& b : v.bound_list) blist.append(bound_dict(b));
            d["bounds"] = blist;
            d["fem_lambda1"] = v.fem_lambda1;
            d["weighted_lambda1"] = v.weighted_lambda1;
            d["reduction_rel_diff"] = v.reduction_rel_diff;
            d["reduction_ok"] = v.reduction_ok;
            d["margins"] = v.margins;
            d["pass"] = v.pass;
            d["direct"] = table_dict(v.direct);
            d["weighted"] = table_dict(v.weighted);
            return d;
        },
        py::arg("name"), py::arg("parameters") = std::map<std::string, double>{},
        py::arg("levels") = 4, py::arg("target_h") = 0.1,
        py::arg("beta") = std::nullopt);
}
