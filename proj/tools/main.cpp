#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ruledkit/job.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitEvalError = 3;

fs::path resolve_output(const fs::path& out_dir, const std::string& configured,
                        const char* fallback) {
    fs::path p = configured.empty() ? fs::path(fallback) : fs::path(configured);
    if (p.is_relative()) p = out_dir / p;
    return p;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ruled-surface relative-geometry toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    double tol_scale = -1.0; // <0 means "use the config value"

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "job config (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out-dir", out_dir, "directory for output files");
        sub->add_option("--tol-scale", tol_scale,
                        "scale factor applied to all verification tolerances");
    };

    CLI::App* cmd_eval =
        app.add_subcommand("eval", "evaluate the invariant grid (CSV + OBJ)");
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "closed forms vs. numeric oracles (JSON report)");
    CLI::App* cmd_classify = app.add_subcommand("classify", "print the predicate set");
    add_common(cmd_eval);
    add_common(cmd_verify);
    add_common(cmd_classify);

    CLI11_PARSE(app, argc, argv);

    try {
        ruledkit::JobConfig config = ruledkit::JobConfig::from_file(config_path);
        if (tol_scale >= 0.0) config.tol_scale = tol_scale;
        const fs::path dir(out_dir);

        if (cmd_eval->parsed()) {
            ruledkit::EvalOutputs out = ruledkit::run_eval(config);
            fs::path csv = resolve_output(dir, config.csv_path, "out.csv");
            fs::path obj = resolve_output(dir, config.obj_path, "out.obj");
            write_file(csv, out.csv);
            write_file(obj, out.obj);
            std::cout << "wrote " << csv.string() << " and " << obj.string();
            if (out.nudged_points > 0)
                std::cout << " (" << out.nudged_points
                          << " grid points nudged off the q = 0 locus)";
            std::cout << "\n";
            return kExitOk;
        }
        if (cmd_verify->parsed()) {
            ruledkit::VerifyOutputs out = ruledkit::run_verify(config);
            fs::path report = resolve_output(dir, config.report_path, "report.json");
            write_file(report, out.report_json);
            std::cout << "verify: " << out.passed << " passed, " << out.failed
                      << " failed, " << out.inconclusive << " inconclusive -> "
                      << report.string() << "\n";
            return out.all_passed ? kExitOk : kExitVerifyFailed;
        }
        // classify
        std::cout << ruledkit::run_classify(config);
        return kExitOk;
    } catch (const ruledkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ruledkit::ExprParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitEvalError;
    }
}
