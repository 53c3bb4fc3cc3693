// Parameter sweeps over the LMG ground state, written as CSV.
//
//   lmg_sweep --mode field-sweep --n 100 --gamma 0.5 --h-start 0 --h-stop 2 --h-step 0.01 --out fig.csv
//   lmg_sweep --mode size-scaling --n 100 --n 200 --n 300 --n 400 --gamma 0.5 --h-fixed 0.5
//   lmg_sweep --config sweep.ini --jobs 4
//
// Exit codes: 0 success, 1 usage error, 2 a grid point failed to converge.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lmg/sweep.hpp"

namespace
{

constexpr int exit_usage = 1;
constexpr int exit_convergence = 2;

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact LMG ground states: quantum Fisher information and spin squeezing sweeps"};
    app.set_help_flag("--help", "Print this help message and exit");

    std::string mode_name = "field-sweep";
    std::vector<int> n_list;
    std::vector<double> gammas;
    std::vector<double> h_list;
    double h_start = 0.0;
    double h_stop = 0.0;
    double h_step = 0.0;
    double h_fixed = 0.0;
    int fit_min_n = 0;
    std::string out_path;
    unsigned jobs = 1;

    app.set_config("--config", "", "Plain key=value config file; command-line flags override it");
    app.add_option("--mode", mode_name, "field-sweep | size-scaling | isotropic | analytic-only");
    app.add_option("--n", n_list, "System size N (repeatable)")->take_all();
    app.add_option("--gamma", gammas, "Anisotropy gamma in [0,1] (repeatable)")->take_all();
    auto *h_opt = app.add_option("--h", h_list, "Explicit field value (repeatable)")->take_all();
    auto *start_opt = app.add_option("--h-start", h_start, "First field value of the range");
    auto *stop_opt = app.add_option("--h-stop", h_stop, "Last field value of the range (inclusive)");
    auto *step_opt = app.add_option("--h-step", h_step, "Field step of the range");
    auto *fixed_opt = app.add_option("--h-fixed", h_fixed, "Field for size-scaling mode");
    auto *fit_opt = app.add_option("--fit-min-n", fit_min_n, "Smallest N used in size-scaling fits");
    app.add_option("--out", out_path, "Output CSV path (stdout when omitted)");
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    lmg::SweepConfig config;
    const auto mode = lmg::parse_mode(mode_name);
    if (!mode) {
        std::cerr << "error: unknown mode '" << mode_name << "'\n";
        return exit_usage;
    }
    config.mode = *mode;
    config.n_list = n_list;
    config.gammas = gammas;
    if (h_opt->count() > 0) {
        config.h_list = h_list;
    }
    const std::size_t range_parts = start_opt->count() + stop_opt->count() + step_opt->count();
    if (range_parts > 0) {
        if (start_opt->count() == 0 || stop_opt->count() == 0 || step_opt->count() == 0) {
            std::cerr << "error: --h-start, --h-stop and --h-step must be given together\n";
            return exit_usage;
        }
        config.h_range = lmg::FieldRange{h_start, h_stop, h_step};
    }
    if (fixed_opt->count() > 0) {
        config.h_fixed = h_fixed;
    }
    if (fit_opt->count() > 0) {
        config.fit_min_n = fit_min_n;
    }
    config.output_path = out_path;
    config.jobs = jobs;

    lmg::SweepResult result;
    try {
        result = lmg::run_sweep(config);
    } catch (const lmg::UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const lmg::DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    const std::string csv = lmg::render_csv(result);
    if (config.output_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream file(config.output_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << config.output_path << '\n';
            return exit_usage;
        }
        file << csv;
    }
    return result.has_failures() ? exit_convergence : 0;
}
