#include "ckn/serialize.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ckn/errors.hpp"

namespace ckn {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void put_rational(json& j, const std::string& key, const Rational& x) {
    j[key] = rational_to_string(x);
    j[key + "_value"] = to_double(x);
}

}  // namespace

std::string params_to_json(const CknParams& c) {
    json j;
    j["n"] = c.n;
    put_rational(j, "p", c.p);
    put_rational(j, "q", c.q);
    put_rational(j, "mu", c.mu);
    put_rational(j, "r", c.r);
    put_rational(j, "theta", c.theta);
    put_rational(j, "s", c.s);
    put_rational(j, "a", c.a);
    put_rational(j, "nu", c.nu);
    put_rational(j, "alpha", c.alpha);
    put_rational(j, "beta", c.beta);
    put_rational(j, "gamma", c.gamma);
    put_rational(j, "sigma", c.sigma);
    put_rational(j, "kappa", c.kappa);
    put_rational(j, "g_exp", c.g_exp);
    j["q_term_active"] = c.q_term_active();
    return j.dump(2) + "\n";
}

RawParams raw_params_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("params JSON parse error: ") + e.what());
    }
    auto rational_field = [&](const char* key) -> Rational {
        if (!j.contains(key)) throw IoError(std::string("params JSON: missing field ") + key);
        const json& v = j.at(key);
        if (v.is_string()) return rational_from_string(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_number_float()) return rational_from_string(json(v.get<double>()).dump());
        throw IoError(std::string("params JSON: field ") + key + " must be a number or string");
    };
    RawParams raw;
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw IoError("params JSON: integer field n required");
    raw.n = j.at("n").get<int>();
    raw.p = rational_field("p");
    raw.q = rational_field("q");
    raw.mu = rational_field("mu");
    return raw;
}

std::string norms_to_json(const WeightedNorms& norms) {
    json j;
    j["t_r"] = norms.t_r;
    j["t_grad"] = norms.t_grad;
    j["t_q"] = norms.t_q;
    j["est_errors"] = {norms.est_errors[0], norms.est_errors[1], norms.est_errors[2]};
    return j.dump(2) + "\n";
}

std::string minimize_result_to_json(const MinimizeResult& result) {
    json j;
    j["best_quotient"] = result.best_quotient;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["flatness"] = result.flatness;
    j["seed"] = result.seed;
    json probes = json::array();
    for (const auto& p : result.probes)
        probes.push_back({{"A", p.amplitude}, {"B", p.b}, {"quotient", p.quotient}});
    j["probes"] = probes;
    j["history"] = result.history;
    return j.dump(2) + "\n";
}

namespace {

std::string comment_block(const std::vector<std::string>& header_comments) {
    std::string out;
    for (const auto& line : header_comments) {
        out += "# ";
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace

std::string curve_to_csv(const ComparisonCurve& curve,
                         const std::vector<std::string>& header_comments) {
    std::string out = comment_block(header_comments);
    out += "# C: " + format_double(curve.constants.C) + "\n";
    out += "# C_opt: " + format_double(curve.constants.c_opt) + "\n";
    out += "# Gamma_coeff: " + format_double(curve.constants.gamma_coeff) + "\n";
    out += "# Gamma_tilde_coeff: " + format_double(curve.constants.gamma_tilde_coeff) + "\n";
    out += "lambda,F,G,H0,F_prime,ode_residual_G,ineq_slack_F\n";
    for (size_t i = 0; i < curve.lambda.size(); ++i) {
        out += format_double(curve.lambda[i]) + "," + format_double(curve.F[i]) + "," +
               format_double(curve.G[i]) + "," + format_double(curve.H0[i]) + "," +
               format_double(curve.F_prime[i]) + "," + format_double(curve.ode_residual_G[i]) +
               "," + format_double(curve.ineq_slack_F[i]) + "\n";
    }
    return out;
}

std::string sandwich_to_csv(const SandwichReport& report,
                            const std::vector<std::string>& header_comments) {
    std::string out = comment_block(header_comments);
    out += "# C: " + format_double(report.C) + "\n";
    out += "# C0: " + format_double(report.C0) + "\n";
    out += "# C_opt: " + format_double(report.c_opt) + "\n";
    out += "# verdict: " + std::string(report.pass ? "PASS" : "FAIL") + "\n";
    out += "rho,lower_bound,measured,upper_bound,verdict\n";
    for (const auto& row : report.rows) {
        out += format_double(row.rho) + "," + format_double(row.lower) + "," +
               format_double(row.measured) + "," + format_double(row.upper) + "," +
               (row.pass ? "PASS" : "FAIL") + "\n";
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path.string() + " (" + ec.message() + ")");
}

}  // namespace ckn
