#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ckn/comparison.hpp"
#include "ckn/functionals.hpp"
#include "ckn/optimizer.hpp"
#include "ckn/params.hpp"

namespace ckn {

// Lowercase scientific/shortest formatting with 17 significant digits;
// round-trips doubles exactly and is byte-stable across runs.
std::string format_double(double x);

// Flat key-value object; rational fields as exact strings ("4/9", "2.5")
// plus a parallel <name>_value double for each.
std::string params_to_json(const CknParams& params);

// Accepts {"n": 4, "p": "2", "q": 2.5, "mu": "1"}; numeric values are taken
// at their literal decimal meaning.
RawParams raw_params_from_json_text(const std::string& text);

std::string norms_to_json(const WeightedNorms& norms);
std::string minimize_result_to_json(const MinimizeResult& result);

// CSV with "# " comment header lines followed by
// lambda,F,G,H0,F_prime,ode_residual_G,ineq_slack_F.
std::string curve_to_csv(const ComparisonCurve& curve,
                         const std::vector<std::string>& header_comments);

std::string sandwich_to_csv(const SandwichReport& report,
                            const std::vector<std::string>& header_comments);

// Writes through a temp file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ckn
