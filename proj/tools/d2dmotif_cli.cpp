#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "d2dmotif/config.hpp"
#include "d2dmotif/report.hpp"
#include "d2dmotif/runner.hpp"
#include "d2dmotif/validation.hpp"

using namespace d2dmotif;

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    long trials = 100;
    bool trials_given = false;
    bool correlated = false;
    std::string axis = "s_th";
    std::vector<double> values;
    std::vector<std::string> modes = {"analytic"};
    bool quick = false;
    double tolerance_scale = 1.0;
};

NetworkConfig load(const Options& o) { return o.config_path.empty() ? NetworkConfig{} : load_config(o.config_path); }

std::string describe(const NetworkConfig& c) {
    std::ostringstream s;
    s << "N=" << c.devices_per_cluster << " sigma2=" << format_number(c.scatter_variance)
      << " s_th=" << format_number(c.max_link_distance_m) << " lambda_p=" << format_number(c.parent_density)
      << " beta=" << format_number(c.d2d_fraction) << " theta=" << format_number(c.star_fraction);
    return s.str();
}

// Runs `body` against the requested output stream.
template <class Body>
int with_output(const Options& o, Body&& body) {
    if (o.out_path.empty()) return body(std::cout);
    std::ofstream file(o.out_path);
    if (!file) {
        std::cerr << "error: cannot open " << o.out_path << " for writing\n";
        return 1;
    }
    return body(file);
}

int run(const std::string& command, const Options& o) {
    std::optional<NetworkConfig> config;
    try {
        config = load(o);
        if (command == "analytic") {
            const ResultRow row = run_analytic(*config, {}, o.correlated, true);
            return with_output(o, [&](std::ostream& out) {
                out << csv_header() << '\n' << csv_row(row) << '\n';
                return 0;
            });
        }
        if (command == "simulate") {
            const ResultRow row = run_simulate(*config, o.trials, o.seed);
            return with_output(o, [&](std::ostream& out) {
                out << csv_header() << '\n' << csv_row(row) << '\n';
                return 0;
            });
        }
        if (command == "sweep") {
            SweepSpec spec;
            spec.base = *config;
            spec.axis = parse_axis(o.axis);
            spec.values = o.values;
            spec.analytic = spec.simulate = false;
            for (const auto& m : o.modes) {
                if (m == "analytic") spec.analytic = true;
                else if (m == "simulate") spec.simulate = true;
                else throw DomainError("unknown mode '" + m + "' (expected analytic or simulate)");
            }
            spec.trials = o.trials;
            spec.seed = o.seed;
            spec.correlated_outage = o.correlated;
            spec.validate();
            return with_output(o, [&](std::ostream& out) {
                run_sweep(spec, {}, out);
                return 0;
            });
        }
        ValidationOptions v;
        v.base = *config;
        v.seed = o.seed;
        v.trials = o.trials_given ? o.trials : 0;
        v.tolerance_scale = o.tolerance_scale;
        return with_output(o, [&](std::ostream& out) {
            return run_validate(v, o.quick, out) ? 0 : kValidationFailedExit;
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (config) std::cerr << "  parameters: " << describe(*config) << '\n';
        return exit_code_for(std::current_exception());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motif statistics, interference and throughput of clustered D2D networks"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_path, "output file (default stdout)");
    };
    auto seeded = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "master random seed");
        sub->add_option("--trials", o.trials, "simulation trials")->check(CLI::PositiveNumber);
    };

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form statistics for one configuration");
    common(analytic);
    analytic->add_flag("--correlated-outage", o.correlated, "also evaluate the correlated chain outage");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates for one configuration");
    common(simulate);
    seeded(simulate);

    CLI::App* sweep = app.add_subcommand("sweep", "one row per axis value and mode");
    common(sweep);
    seeded(sweep);
    sweep->add_flag("--correlated-outage", o.correlated, "also evaluate the correlated chain outage");
    sweep->add_option("--axis", o.axis, "s_th, sigma2, lambda_p, beta or N")->required();
    sweep->add_option("--values", o.values, "comma-separated axis values")->delimiter(',')->required();
    sweep->add_option("--modes", o.modes, "analytic and/or simulate")->delimiter(',');

    CLI::App* validate = app.add_subcommand("validate", "run the acceptance matrix");
    common(validate);
    seeded(validate);
    validate->add_flag("--quick", o.quick, "motif probability checks only");
    validate->add_option("--tolerance-scale", o.tolerance_scale, "multiplies every tolerance")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    o.trials_given = validate->count("--trials") > 0;
    return run(app.get_subcommands().front()->get_name(), o);
}
