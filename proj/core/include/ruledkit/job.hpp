#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ruledkit/oracle.hpp"

namespace ruledkit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NormalizationFamily { euclidean, manhart, polar, special };

// batch job description; parsed from the documented JSON schema
struct JobConfig {
    // surface
    std::string delta_src, kappa_src, lambda_src;
    double u_min = 0.0, u_max = 1.0;
    std::optional<double> u0;

    // normalization
    NormalizationFamily family = NormalizationFamily::euclidean;
    double manhart_a = 0.0;
    std::string polar_f_src; // expression in V
    double special_c1 = 1.0, special_c2 = 0.0;

    // grid
    int u_count = 2;
    double v_lo = -3.0, v_hi = 3.0;
    int v_count = 2;

    // outputs (resolved against out_dir by the CLI)
    std::string csv_path, obj_path, report_path;

    double tol_scale = 1.0;
    double perturb_J = 1.0, perturb_K = 1.0, perturb_H = 1.0;

    static JobConfig from_json_text(const std::string& text); // throws ConfigError
    static JobConfig from_file(const std::filesystem::path& path);
};

struct EvalOutputs {
    std::string csv; // fixed header, one row per grid point, round-trip doubles
    std::string obj; // v/f records of the position mesh
    int nudged_points = 0;
};

EvalOutputs run_eval(const JobConfig& config); // throws EvalError on evaluation failure

struct VerifyOutputs {
    std::string report_json;
    bool all_passed = false;
    int passed = 0, failed = 0, inconclusive = 0;
};

VerifyOutputs run_verify(const JobConfig& config);

std::string run_classify(const JobConfig& config); // JSON predicate set

// shortest exact decimal form of a double (round-trip formatting)
std::string format_double(double x);

} // namespace ruledkit
