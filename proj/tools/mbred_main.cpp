// mbred: seeded verification runner for the classical-extension library.
//
// One subcommand per experiment group; every run emits a machine-readable
// JSON report whose numeric fields depend only on the configuration.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mbred/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct CliOptions {
    std::vector<int> dims;
    std::int64_t samples = -1;
    std::uint64_t seed = 1;
    std::vector<std::string> tolerance_args;
    std::string config_path;
    std::string out;
    int example = 1;
};

void apply_tolerance_args(const std::vector<std::string>& args, mbred::ExperimentConfig& config) {
    for (const std::string& arg : args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
            throw mbred::ValidationError("expected --tol NAME=VALUE, got '" + arg + "'");
        }
        config.tolerance_overrides[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
    }
}

void print_summary(const mbred::Report& report, std::ostream& os) {
    for (const auto& check : report.checks) {
        os << (check.pass ? "[PASS] " : "[FAIL] ") << report.experiment << "/" << check.name
           << "  max_error=" << check.max_error << "  tolerance=" << check.tolerance
           << "  cases=" << check.n_cases << "\n";
    }
    os << (report.overall_pass() ? "PASS" : "FAIL") << " " << report.experiment << " ("
       << report.checks.size() << " checks, " << report.wall_time_s << " s)\n";
}

int emit_report(const mbred::Report& report) {
    const std::string body = report.to_json().dump(2) + "\n";
    if (report.config.out.empty() || report.config.out == "-") {
        std::cout << body;
        print_summary(report, std::cerr);
    } else {
        std::ofstream file(report.config.out);
        if (!file) {
            std::cerr << "error: cannot open '" << report.config.out << "' for writing\n";
            return kExitConfigError;
        }
        file << body;
        if (!file) {
            std::cerr << "error: short write to '" << report.config.out << "'\n";
            return kExitConfigError;
        }
        print_summary(report, std::cout);
    }
    return report.overall_pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for the classical extension of quantum probability"};
    app.require_subcommand(1);

    CliOptions opts;
    std::vector<CLI::App*> subcommands;
    for (const std::string& name : mbred::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--dim", opts.dims, "Hilbert-space dimension (repeatable)");
        sub->add_option("--samples", opts.samples, "number of sampled cases per check");
        sub->add_option("--seed", opts.seed, "master seed; all case seeds derive from it");
        sub->add_option("--tol", opts.tolerance_args, "tolerance override NAME=VALUE (repeatable)");
        sub->add_option("--config", opts.config_path, "JSON config file");
        sub->add_option("--out", opts.out, "report destination path ('-' for stdout)");
        if (name == "extension" || name == "all") {
            sub->add_option("--example", opts.example, "extension construction: 1, 2, or 3")
                ->check(CLI::Range(1, 3));
        }
        subcommands.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitConfigError;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();

        mbred::ExperimentConfig config;
        if (sub->count("--config") > 0) {
            std::ifstream file(opts.config_path);
            if (!file) {
                std::cerr << "error: cannot read config file '" << opts.config_path << "'\n";
                return kExitConfigError;
            }
            mbred::Json j;
            file >> j;
            config = mbred::config_from_json(j);
        }
        config.experiment = sub->get_name();
        if (sub->count("--dim") > 0) config.dims = opts.dims;
        if (sub->count("--samples") > 0) config.samples = opts.samples;
        if (sub->count("--seed") > 0) config.seed = opts.seed;
        if (sub->count("--out") > 0) config.out = opts.out;
        if ((sub->get_name() == "extension" || sub->get_name() == "all") &&
            sub->count("--example") > 0) {
            config.example = opts.example;
        }
        apply_tolerance_args(opts.tolerance_args, config);

        const mbred::Report report = mbred::run(config);
        return emit_report(report);
    } catch (const mbred::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
