// membrane-bounds: eigenvalue lower bounds for planar divergence-form
// operators, with catalog inspection and finite-element validation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "membrane/driver.hpp"

namespace {

using membrane::Complex;
using membrane::driver::json;
namespace coeff = membrane::coefficients;
namespace cat = membrane::catalog;
namespace drv = membrane::driver;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

struct OutputTarget {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text << '\n';
            return;
        }
        std::ofstream os(path);
        if (!os) {
            throw std::runtime_error("cannot open output file " + path);
        }
        os << text << '\n';
    }
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> params;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw membrane::ParameterError("expected --param key=value, got '" + kv + "'");
        }
        std::size_t used = 0;
        double value = std::stod(kv.substr(eq + 1), &used);
        if (used != kv.size() - eq - 1) {
            throw membrane::ParameterError("bad numeric value in '" + kv + "'");
        }
        params[kv.substr(0, eq)] = value;
    }
    return params;
}

std::vector<double> parse_csv_doubles(const std::string& raw, std::size_t count,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(std::stod(tok));
    }
    if (out.size() != count) {
        throw membrane::ParameterError(what + " needs " + std::to_string(count) +
                                  " comma-separated values");
    }
    return out;
}

int cmd_convert(const std::string& matrix_arg, const std::string& mu_arg,
                const OutputTarget& out) {
    if (matrix_arg.empty() == mu_arg.empty()) {
        throw membrane::ParameterError("convert needs exactly one of --matrix or --mu");
    }
    coeff::EllipticityMatrix a = coeff::EllipticityMatrix::identity();
    if (!matrix_arg.empty()) {
        auto v = parse_csv_doubles(matrix_arg, 3, "--matrix");
        a = coeff::EllipticityMatrix(v[0], v[1], v[2]);
    } else {
        auto v = parse_csv_doubles(mu_arg, 2, "--mu");
        a = coeff::mu_to_matrix(Complex(v[0], v[1]));
    }
    Complex mu = coeff::matrix_to_mu(a);
    json j{{"matrix", drv::matrix_json(a)},
           {"mu", {{"im", mu.imag() + 0.0}, {"re", mu.real() + 0.0}}},
           {"distortion", drv::distortion_json(coeff::distortion_summary(a))}};
    out.write(j.dump(2));
    return 0;
}

int cmd_bound(const std::string& name, const std::map<std::string, double>& params,
              std::optional<double> beta, const OutputTarget& out) {
    cat::CatalogEntry e = cat::entry(name, params);
    json reports = json::array();
    for (const auto& b : drv::applicable_bounds(e, beta)) {
        reports.push_back(drv::bound_report_json(b));
    }
    json j{{"bounds", reports}, {"entry", drv::entry_json(e)}};
    out.write(j.dump(2));
    return 0;
}

int cmd_validate(const std::string& name, const std::map<std::string, double>& params,
                 int levels, double target_h, std::optional<double> beta,
                 const std::string& format, const std::string& dump_mesh,
                 const OutputTarget& out) {
    cat::CatalogEntry e = cat::entry(name, params);
    drv::ValidationResult v = drv::validate_entry(e, levels, target_h, beta);
    if (!dump_mesh.empty()) {
        std::ofstream os(dump_mesh);
        if (!os) {
            throw std::runtime_error("cannot open mesh file " + dump_mesh);
        }
        membrane::fem::write_mesh(os, v.finest);
    }
    if (format == "csv") {
        std::ostringstream os;
        membrane::fem::write_convergence_csv(os, v.direct);
        std::string text = os.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        out.write(text);
    } else {
        json j = drv::validation_json(v);
        j["entry"] = drv::entry_json(e);
        out.write(j.dump(2));
    }
    return v.pass ? 0 : kExitNumerical;
}

int cmd_catalog(bool verify, bool inject_fault, const OutputTarget& out) {
    json entries = json::array();
    bool all_ok = true;
    std::string failing_entry, failing_check;
    for (const auto& name : cat::entry_names()) {
        cat::CatalogEntry e = cat::entry(name);
        json j = drv::entry_json(e);
        if (verify) {
            if (inject_fault && name == "triangle_affine") {
                auto mu = e.map.mu;
                e.map.mu = [mu](Complex z) { return -mu(z); };
            }
            cat::VerificationReport rep = cat::verify_entry(e, 1000, 1e-6);
            j["verification"] = drv::verification_json(rep);
            if (!rep.ok) {
                all_ok = false;
                if (failing_entry.empty()) {
                    failing_entry = name;
                    failing_check = rep.first_failure()->name;
                }
            }
        }
        entries.push_back(j);
    }
    json j{{"entries", entries}, {"count", entries.size()}};
    if (verify) j["ok"] = all_ok;
    out.write(j.dump(2));
    if (verify && !all_ok) {
        std::cerr << "verification failure: entry " << failing_entry << ", check "
                  << failing_check << '\n';
        return kExitVerification;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lower bounds for first Dirichlet eigenvalues of planar "
                 "divergence-form elliptic operators"};
    app.require_subcommand(1);
    // let --output appear after the subcommand as well
    app.fallthrough();

    std::string output_path;
    app.add_option("--output", output_path, "Write output to a file instead of stdout")
        ->capture_default_str();

    auto* convert = app.add_subcommand(
        "convert", "Convert between a coefficient matrix and its complex dilatation");
    std::string matrix_arg, mu_arg;
    convert->add_option("--matrix", matrix_arg, "a11,a12,a22 with det = 1");
    convert->add_option("--mu", mu_arg, "re,im with |mu| < 1");

    auto* bound = app.add_subcommand("bound", "Compute eigenvalue lower bounds for an entry");
    std::string entry_name;
    std::vector<std::string> param_args;
    double beta_value = 0.0;
    bound->add_option("--entry", entry_name, "Catalog entry name")->required();
    bound->add_option("--param", param_args, "Entry parameter key=value");
    auto* beta_opt = bound->add_option("--beta", beta_value,
                                       "Also emit the beta-regular bound (beta > 1)");

    auto* validate = app.add_subcommand(
        "validate", "Compare every applicable bound against a finite-element eigenvalue");
    std::string v_entry, v_format = "json", v_dump_mesh;
    std::vector<std::string> v_params;
    int v_levels = 4;
    double v_target_h = 0.1;
    double v_beta_value = 0.0;
    validate->add_option("--entry", v_entry, "Catalog entry name")->required();
    validate->add_option("--param", v_params, "Entry parameter key=value");
    validate->add_option("--levels", v_levels, "Refinement levels (>= 2)");
    validate->add_option("--target-h", v_target_h, "Initial mesh size");
    auto* v_beta_opt = validate->add_option("--beta", v_beta_value,
                                            "Also emit the beta-regular bound");
    validate->add_option("--format", v_format, "json or csv (convergence table)")
        ->check(CLI::IsMember({"json", "csv"}));
    validate->add_option("--dump-mesh", v_dump_mesh, "Write the finest mesh to a file");

    auto* catalog_cmd = app.add_subcommand("catalog", "List catalog entries");
    bool verify = false, inject_fault = false;
    catalog_cmd->add_flag("--verify", verify, "Run closed-form verification on each entry");
    catalog_cmd->add_flag("--test-inject-fault", inject_fault)->group("");  // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : kExitUsage;
    }

    OutputTarget out{output_path};
    try {
        if (convert->parsed()) {
            return cmd_convert(matrix_arg, mu_arg, out);
        }
        if (bound->parsed()) {
            std::optional<double> beta;
            if (beta_opt->count() > 0) beta = beta_value;
            return cmd_bound(entry_name, parse_params(param_args), beta, out);
        }
        if (validate->parsed()) {
            std::optional<double> beta;
            if (v_beta_opt->count() > 0) beta = v_beta_value;
            return cmd_validate(v_entry, parse_params(v_params), v_levels, v_target_h,
                                beta, v_format, v_dump_mesh, out);
        }
        if (catalog_cmd->parsed()) {
            return cmd_catalog(verify, inject_fault, out);
        }
    } catch (const membrane::InvalidMatrixError& err) {
        std::cerr << "invalid matrix: " << err.what() << '\n';
        return kExitUsage;
    } catch (const membrane::InvalidDilatationError& err) {
        std::cerr << "invalid dilatation: " << err.what() << '\n';
        return kExitUsage;
    } catch (const membrane::ParameterError& err) {
        std::cerr << "parameter error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& err) {
        std::cerr << "domain error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "invalid argument: " << err.what() << '\n';
        return kExitUsage;
    } catch (const membrane::ConvergenceError& err) {
        std::cerr << "numerical failure: " << err.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
