// cknlab: weighted-inequality laboratory on radial model spaces.
//
// Subcommands: params, copt, extremal-check, curves, volume-bound, audit,
// minimize. Every output file embeds the resolved run configuration, and a
// rerun with the same flags produces byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckn/comparison.hpp"
#include "ckn/errors.hpp"
#include "ckn/functionals.hpp"
#include "ckn/optimizer.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/serialize.hpp"
#include "ckn/special.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string n, p, q, mu;
    std::string params_file;
    std::string out_dir = ".";
    double quad_rel_tol = 1e-10;
    int quad_max_level = 12;
    double quad_split = 1.0;
};

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.n, "dimension (integer >= 2)");
    cmd->add_option("--p", o.p, "exponent p (decimal or fraction)");
    cmd->add_option("--q", o.q, "exponent q");
    cmd->add_option("--mu", o.mu, "weight exponent mu");
    cmd->add_option("--params-file", o.params_file, "JSON file with n, p, q, mu");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--quad-rel-tol", o.quad_rel_tol, "quadrature relative tolerance");
    cmd->add_option("--quad-max-level", o.quad_max_level, "quadrature refinement levels");
    cmd->add_option("--quad-split", o.quad_split, "origin/tail split point");
}

ckn::RawParams resolve_raw(const CommonOpts& o) {
    if (!o.params_file.empty()) {
        std::ifstream in(o.params_file);
        if (!in) throw ckn::IoError("cannot open params file: " + o.params_file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return ckn::raw_params_from_json_text(buffer.str());
    }
    if (o.n.empty() || o.p.empty() || o.q.empty() || o.mu.empty())
        throw ckn::InvalidParams("provide --n --p --q --mu or --params-file");
    ckn::RawParams raw;
    try {
        raw.n = std::stoi(o.n);
    } catch (const std::exception&) {
        throw ckn::InvalidParams("cannot parse --n: '" + o.n + "'");
    }
    raw.p = ckn::rational_from_string(o.p);
    raw.q = ckn::rational_from_string(o.q);
    raw.mu = ckn::rational_from_string(o.mu);
    return raw;
}

ckn::QuadConfig resolve_quad(const CommonOpts& o) {
    ckn::QuadConfig quad;
    quad.rel_tol = o.quad_rel_tol;
    quad.max_level = o.quad_max_level;
    quad.split_point = o.quad_split;
    return quad;
}

// "euclidean:n=4" | "cone:n=4,c=0.5" | "envelope:n=4,b0=0.3" | "table:path.csv,n=4"
ckn::RadialMeasure parse_model_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ckn::InvalidParams("model spec must look like kind:key=value,...: '" + spec + "'");
    const std::string kind = spec.substr(0, colon);

    int n = 0;
    double c = 1.0, b0 = 0.0;
    std::string path;
    std::stringstream rest(spec.substr(colon + 1));
    std::string token;
    while (std::getline(rest, token, ',')) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            path = token;  // bare token: the CSV path
            continue;
        }
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        try {
            if (key == "n")
                n = std::stoi(value);
            else if (key == "c")
                c = std::stod(value);
            else if (key == "b0")
                b0 = std::stod(value);
            else if (key == "path")
                path = value;
            else
                throw ckn::InvalidParams("unknown model key '" + key + "' in '" + spec + "'");
        } catch (const std::invalid_argument&) {
            throw ckn::InvalidParams("cannot parse model value in '" + token + "'");
        }
    }
    if (n < 1) throw ckn::InvalidParams("model spec needs n=<dimension>: '" + spec + "'");

    if (kind == "euclidean") return ckn::RadialMeasure::euclidean(n);
    if (kind == "cone") return ckn::RadialMeasure::cone(n, c);
    if (kind == "envelope") return ckn::RadialMeasure::envelope_ricci(n, b0);
    if (kind == "table") {
        if (path.empty()) throw ckn::InvalidParams("table model needs a CSV path: '" + spec + "'");
        return ckn::RadialMeasure::tabulated_from_csv(n, path);
    }
    throw ckn::InvalidParams("unknown model kind '" + kind + "'");
}

json run_header(const std::string& command, const CommonOpts& o, const ckn::RawParams& raw) {
    json run;
    run["command"] = command;
    run["params"] = {{"n", raw.n},
                     {"p", ckn::rational_to_string(raw.p)},
                     {"q", ckn::rational_to_string(raw.q)},
                     {"mu", ckn::rational_to_string(raw.mu)}};
    run["quad"] = {{"rel_tol", o.quad_rel_tol},
                   {"max_level", o.quad_max_level},
                   {"split_point", o.quad_split}};
    run["out_dir"] = o.out_dir;
    return run;
}

std::vector<std::string> csv_header_lines(const json& run) {
    std::vector<std::string> lines;
    lines.push_back("run_spec: " + run.dump());
    return lines;
}

fs::path prepare_out(const CommonOpts& o, const std::string& filename) {
    fs::create_directories(o.out_dir);
    return fs::path(o.out_dir) / filename;
}

int run_params(const CommonOpts& o) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::ValidationReport report = ckn::validate(raw);
    if (!report.ok) {
        std::string line = "invalid parameters:";
        for (const auto& v : report.violations) line += " [" + v + "]";
        std::cerr << line << "\n";
        return kExitValidation;
    }
    const ckn::CknParams c = ckn::derive(raw);
    json j = json::parse(ckn::params_to_json(c));
    j["run"] = run_header("params", o, raw);
    const std::string text = j.dump(2) + "\n";
    ckn::write_file_atomic(prepare_out(o, "params.json"), text);
    std::cout << text;
    return kExitOk;
}

int run_copt(const CommonOpts& o, double delta) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::CknParams c = ckn::derive(raw);
    const ckn::QuadConfig quad = resolve_quad(o);

    const double by_quadrature = ckn::copt_quadrature(c, quad);
    const ckn::CoptClosedFormTerms closed = ckn::copt_closed_form_terms(c, delta);

    json j;
    j["run"] = run_header("copt", o, raw);
    j["copt_quadrature"] = by_quadrature;
    j["copt_closed_form"] = closed.value;
    j["closed_form_delta"] = delta;
    j["closed_form_experimental"] = true;  // delta is not defined by the derivation
    j["ratio_closed_to_quadrature"] = closed.value / by_quadrature;
    j["closed_form_terms"] = {{"base_ratio_power", closed.base_ratio_power},
                              {"sqrt_pi_power", closed.sqrt_pi_power},
                              {"pq_power", closed.pq_power},
                              {"nu_power", closed.nu_power},
                              {"gamma_ratio_power", closed.gamma_ratio_power}};
    ckn::write_file_atomic(prepare_out(o, "copt.json"), j.dump(2) + "\n");
    std::printf("C_opt (quadrature)  = %.17g\n", by_quadrature);
    std::printf("C_opt (closed form) = %.17g  [experimental, delta=%.17g, ratio %.17g]\n",
                closed.value, delta, closed.value / by_quadrature);
    return kExitOk;
}

int run_extremal_check(const CommonOpts& o) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::CknParams c = ckn::derive(raw);
    const ckn::QuadConfig quad = resolve_quad(o);
    const ckn::RadialMeasure euclid = ckn::RadialMeasure::euclidean(c.n);

    const double copt = ckn::copt_quadrature(c, quad);
    const double copt_inv = 1.0 / copt;

    json lambdas = json::array();
    double max_dev = 0.0;
    for (double lambda : {0.25, 1.0, 4.0}) {
        const ckn::RadialProfile profile = ckn::RadialProfile::extremal(c, lambda);
        const double quotient =
            ckn::ckn_quotient(ckn::weighted_norms(euclid, c, profile, quad), c);
        max_dev = std::max(max_dev, std::fabs(quotient / copt_inv - 1.0));
        lambdas.push_back({{"lambda", lambda}, {"quotient", quotient}});
    }

    const auto probes = ckn::extremal_perturbations(c, 20, 1e-2, quad);
    json rows = json::array();
    double min_delta = 0.0;
    for (const auto& probe : probes) {
        rows.push_back({{"seed", probe.seed}, {"quotient_delta", probe.quotient_delta}});
        min_delta = std::min(min_delta, probe.quotient_delta);
    }

    json j;
    j["run"] = run_header("extremal-check", o, raw);
    j["copt_quadrature"] = copt;
    j["copt_inverse"] = copt_inv;
    j["quotients"] = lambdas;
    j["max_rel_deviation"] = max_dev;
    j["perturbations"] = rows;
    j["min_quotient_delta"] = min_delta;
    ckn::write_file_atomic(prepare_out(o, "extremal_check.json"), j.dump(2) + "\n");
    std::printf("quotient at extremal: max rel deviation %.3e; min perturbation delta %.3e\n",
                max_dev, min_delta);
    return kExitOk;
}

int run_curves(const CommonOpts& o, const std::string& model_spec, double c_multiple,
               double lambda_min, double lambda_max, int lambda_count) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::CknParams c = ckn::derive(raw);
    const ckn::QuadConfig quad = resolve_quad(o);
    const ckn::RadialMeasure model = parse_model_spec(model_spec);

    const auto grid = ckn::log_grid(lambda_min, lambda_max, lambda_count);
    const ckn::ComparisonCurve curve = ckn::build_comparison_curve(model, c, c_multiple, grid, quad);

    json run = run_header("curves", o, raw);
    run["model"] = model_spec;
    run["C_multiple"] = c_multiple;
    run["lambda"] = {{"min", lambda_min}, {"max", lambda_max}, {"count", lambda_count}};
    ckn::write_file_atomic(prepare_out(o, "curves.csv"),
                           ckn::curve_to_csv(curve, csv_header_lines(run)));
    std::printf("curves.csv written (%zu lambda points, C = %.17g)\n", curve.lambda.size(),
                curve.constants.C);
    return kExitOk;
}

int run_volume_bound(const CommonOpts& o, const std::string& model_spec, double c_multiple,
                     double c0, const std::vector<double>& rho_list) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::CknParams c = ckn::derive(raw);
    const ckn::QuadConfig quad = resolve_quad(o);
    const ckn::RadialMeasure model = parse_model_spec(model_spec);

    std::vector<double> rhos = rho_list;
    if (rhos.empty()) rhos = {0.5, 1.0, 2.0, 10.0};

    const double copt = ckn::copt_quadrature(c, quad);
    const ckn::SandwichReport report =
        ckn::growth_sandwich(model, c, c_multiple * copt, c0, rhos, quad);

    json run = run_header("volume-bound", o, raw);
    run["model"] = model_spec;
    run["C_multiple"] = c_multiple;
    run["C0"] = c0;
    ckn::write_file_atomic(prepare_out(o, "volume_bound.csv"),
                           ckn::sandwich_to_csv(report, csv_header_lines(run)));
    std::printf("volume bound verdict: %s\n", report.pass ? "PASS" : "FAIL");
    return kExitOk;
}

int run_audit(const CommonOpts& o, const std::string& model_spec) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::CknParams c = ckn::derive(raw);
    const ckn::QuadConfig quad = resolve_quad(o);
    const ckn::RadialMeasure model = parse_model_spec(model_spec);

    const auto radii = ckn::log_grid(1e-2, 1e2, 25);
    const double doubling = ckn::doubling_constant(model, radii);
    const double envelope = ckn::growth_envelope_constant(model, radii);
    const double density = ckn::origin_density(model);
    const double inf_density = ckn::volume_density_infimum(model, radii);
    const double copt = ckn::copt_quadrature(c, quad);
    const double implied = copt * std::pow(inf_density, -c.a_d() / c.n);

    json j;
    j["run"] = run_header("audit", o, raw);
    j["run"]["model"] = model_spec;
    j["doubling_constant"] = doubling;
    j["growth_envelope_constant"] = envelope;
    j["origin_density"] = density;
    j["volume_density_infimum"] = inf_density;
    j["copt_euclidean"] = copt;
    j["implied_best_constant_bound"] = implied;
    ckn::write_file_atomic(prepare_out(o, "audit.json"), j.dump(2) + "\n");
    std::printf(
        "doubling C0 = %.12g, growth envelope = %.12g, origin density = %.12g, "
        "implied best-constant bound = %.12g\n",
        doubling, envelope, density, implied);
    return kExitOk;
}

json minimize_result_json(const ckn::MinimizeResult& result) {
    return json::parse(ckn::minimize_result_to_json(result));
}

int run_minimize(const CommonOpts& o, const std::string& model_spec, const std::string& method,
                 int grid_size, double support_radius, int random_seeds, int max_iters,
                 double f_tol, double x_tol) {
    const ckn::RawParams raw = resolve_raw(o);
    const ckn::CknParams c = ckn::derive(raw);
    const ckn::QuadConfig quad = resolve_quad(o);
    const ckn::RadialMeasure model = parse_model_spec(model_spec);

    ckn::MinimizeConfig cfg;
    cfg.grid_size = grid_size;
    cfg.support_radius = support_radius;
    cfg.max_iters = max_iters;
    cfg.f_tol = f_tol;
    cfg.x_tol = x_tol;
    if (method == "simplex")
        cfg.method = ckn::MinimizeMethod::simplex;
    else if (method == "golden-section")
        cfg.method = ckn::MinimizeMethod::golden_section;
    else if (method == "coordinate-descent")
        cfg.method = ckn::MinimizeMethod::coordinate_descent;
    else
        throw ckn::InvalidParams("unknown method '" + method + "'");

    json j;
    j["run"] = run_header("minimize", o, raw);
    j["run"]["model"] = model_spec;
    j["run"]["method"] = method;
    j["run"]["grid_size"] = grid_size;
    j["run"]["support_radius"] = support_radius;
    j["run"]["random_seeds"] = random_seeds;

    const ckn::MinimizeResult family = ckn::minimize_family(model, c, ckn::FamilySpec{}, cfg, quad);
    j["family"] = minimize_result_json(family);

    cfg.init = ckn::GridInit::truncated_extremal;
    const ckn::MinimizeResult grid_ext = ckn::minimize_grid(model, c, cfg, quad);
    j["grid_extremal_init"] = minimize_result_json(grid_ext);

    double best_grid = grid_ext.best_quotient;
    ckn::RadialProfile best_profile = grid_ext.best_profile;
    json randoms = json::array();
    for (int s = 1; s <= random_seeds; ++s) {
        cfg.init = ckn::GridInit::random;
        cfg.seed = static_cast<unsigned>(s);
        const ckn::MinimizeResult run = ckn::minimize_grid(model, c, cfg, quad);
        randoms.push_back(minimize_result_json(run));
        if (run.best_quotient < best_grid) {
            best_grid = run.best_quotient;
            best_profile = run.best_profile;
        }
    }
    j["grid_random_init"] = randoms;
    j["best_quotient"] = std::min(best_grid, family.best_quotient);
    j["best_constant_estimate"] = 1.0 / std::min(best_grid, family.best_quotient);

    ckn::write_file_atomic(prepare_out(o, "minimize.json"), j.dump(2) + "\n");
    best_profile.save_csv(prepare_out(o, "best_profile.csv"));
    std::printf("family quotient %.12g; grid quotient %.12g; best constant %.12g\n",
                family.best_quotient, best_grid, j["best_constant_estimate"].get<double>());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cknlab: sharp weighted-inequality laboratory on radial model spaces"};
    app.require_subcommand(1);

    CommonOpts o_params, o_copt, o_ext, o_curves, o_vb, o_audit, o_min;
    double delta = 1.0;
    std::string curves_model = "euclidean:n=4", vb_model = "euclidean:n=4",
                audit_model = "euclidean:n=4", min_model = "euclidean:n=4";
    double c_multiple_curves = 1.0, c_multiple_vb = 1.0, c0 = 1.0;
    double lambda_min = 1e-2, lambda_max = 1e2;
    int lambda_count = 13;
    std::vector<double> rho_list;
    std::string method = "simplex";
    int grid_size = 128, random_seeds = 0, max_iters = 400;
    double support_radius = 50.0, f_tol = 1e-7, x_tol = 1e-9;

    auto* cmd_params = app.add_subcommand("params", "validate and derive the parameter record");
    add_param_flags(cmd_params, o_params);

    auto* cmd_copt = app.add_subcommand("copt", "optimal constant: quadrature vs closed form");
    add_param_flags(cmd_copt, o_copt);
    cmd_copt->add_option("--delta", delta,
                         "interpretation of the undefined closed-form symbol delta");

    auto* cmd_ext = app.add_subcommand("extremal-check",
                                       "quotient at the extremal family plus perturbations");
    add_param_flags(cmd_ext, o_ext);

    auto* cmd_curves = app.add_subcommand("curves", "comparison-curve CSV over a lambda grid");
    add_param_flags(cmd_curves, o_curves);
    cmd_curves->add_option("--model", curves_model, "model spec, e.g. cone:n=4,c=0.5");
    cmd_curves->add_option("--C-multiple", c_multiple_curves, "C as a multiple of C_opt");
    cmd_curves->add_option("--lambda-min", lambda_min);
    cmd_curves->add_option("--lambda-max", lambda_max);
    cmd_curves->add_option("--lambda-count", lambda_count);

    auto* cmd_vb = app.add_subcommand("volume-bound", "two-sided volume sandwich audit");
    add_param_flags(cmd_vb, o_vb);
    cmd_vb->add_option("--model", vb_model);
    cmd_vb->add_option("--C-multiple", c_multiple_vb, "C as a multiple of C_opt");
    cmd_vb->add_option("--C0", c0, "doubling constant hypothesis");
    cmd_vb->add_option("--rho", rho_list, "radii to audit");

    auto* cmd_audit = app.add_subcommand("audit", "doubling, origin density, implied bound");
    add_param_flags(cmd_audit, o_audit);
    cmd_audit->add_option("--model", audit_model);

    auto* cmd_min = app.add_subcommand("minimize", "quotient minimization runs");
    add_param_flags(cmd_min, o_min);
    cmd_min->add_option("--model", min_model);
    cmd_min->add_option("--method", method, "simplex | golden-section | coordinate-descent");
    cmd_min->add_option("--grid-size", grid_size);
    cmd_min->add_option("--support-radius", support_radius);
    cmd_min->add_option("--seeds", random_seeds, "number of random-start grid runs");
    cmd_min->add_option("--max-iters", max_iters);
    cmd_min->add_option("--f-tol", f_tol);
    cmd_min->add_option("--x-tol", x_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (cmd_params->parsed()) return run_params(o_params);
        if (cmd_copt->parsed()) return run_copt(o_copt, delta);
        if (cmd_ext->parsed()) return run_extremal_check(o_ext);
        if (cmd_curves->parsed())
            return run_curves(o_curves, curves_model, c_multiple_curves, lambda_min, lambda_max,
                              lambda_count);
        if (cmd_vb->parsed()) return run_volume_bound(o_vb, vb_model, c_multiple_vb, c0, rho_list);
        if (cmd_audit->parsed()) return run_audit(o_audit, audit_model);
        if (cmd_min->parsed())
            return run_minimize(o_min, min_model, method, grid_size, support_radius, random_seeds,
                                max_iters, f_tol, x_tol);
    } catch (const ckn::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ckn::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ckn::Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
