#include "d2dmotif/runner.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "d2dmotif/errors.hpp"

namespace d2dmotif {

SweepAxis parse_axis(const std::string& name) {
    if (name == "s_th") return SweepAxis::s_th;
    if (name == "sigma2") return SweepAxis::sigma2;
    if (name == "lambda_p") return SweepAxis::lambda_p;
    if (name == "beta") return SweepAxis::beta;
    if (name == "N") return SweepAxis::N;
    throw DomainError("unknown sweep axis '" + name + "' (expected s_th, sigma2, lambda_p, beta or N)");
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::s_th: return "s_th";
        case SweepAxis::sigma2: return "sigma2";
        case SweepAxis::lambda_p: return "lambda_p";
        case SweepAxis::beta: return "beta";
        case SweepAxis::N: return "N";
    }
    return "?";
}

NetworkConfig with_axis(NetworkConfig base, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::s_th: base.max_link_distance_m = value; break;
        case SweepAxis::sigma2: base.scatter_variance = value; break;
        case SweepAxis::lambda_p: base.parent_density = value; break;
        case SweepAxis::beta: base.d2d_fraction = value; break;
        case SweepAxis::N:
            if (value != std::floor(value) || value < 1 || value > std::numeric_limits<int>::max())
                throw DomainError("sweep: N values must be positive integers");
            base.devices_per_cluster = static_cast<int>(value);
            break;
    }
    base.validate();
    return base;
}

void SweepSpec::validate() const {
    base.validate();
    if (values.empty()) throw DomainError("sweep: no values given");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) throw DomainError("sweep: values must be strictly increasing");
    if (trials < 1) throw DomainError("sweep: trials must be at least 1");
    if (!analytic && !simulate) throw DomainError("sweep: no mode selected");
}

MotifStatistics motif_statistics_or_nan(const NetworkConfig& config) {
    try {
        return motif_statistics(config);
    } catch (const InvalidRegimeError&) {
    } catch (const UndefinedZError&) {
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    MotifStatistics s;
    s.p_ss = joint_motif_probability(config.max_link_distance_m, config.scatter_variance);
    const Occurrences occ = expected_occurrences(config.devices_per_cluster, s.p_ss, config.star_fraction);
    s.c_o = occ.c_o;
    s.c_o_star = occ.c_o_star;
    s.c_o_chain = occ.c_o_chain;
    s.p_r = s.c_r_star = s.c_r_chain = s.eps_star = s.eps_chain = s.z_star = s.z_chain = nan;
    try {
        s.p_r = baseline_link_probability(s.p_ss, config.motifs_per_cluster());
        const BaselineStats b = baseline_stats(s.p_ss, config.motifs_per_cluster(), config.star_fraction);
        s.c_r_star = b.c_r_star;
        s.c_r_chain = b.c_r_chain;
        s.eps_star = b.eps_star;
        s.eps_chain = b.eps_chain;
    } catch (const InvalidRegimeError&) {
    }
    return s;
}

ResultRow run_analytic(const NetworkConfig& config, const QuadratureSpec& q, bool correlated_outage, bool strict) {
    config.validate();
    ResultRow row;
    row.source = "analytic";
    row.config = config;
    row.stats = strict ? motif_statistics(config) : motif_statistics_or_nan(config);
    const LaplaceContext ctx = LaplaceContext::from_config(config);
    row.report = average_throughput_per_device(ctx, q, correlated_outage);
    row.report.z_star = row.stats.z_star;
    row.report.z_chain = row.stats.z_chain;
    return row;
}

ResultRow run_simulate(const NetworkConfig& config, long trials, std::uint64_t seed) {
    config.validate();
    ResultRow row;
    row.source = "simulated";
    row.config = config;
    row.stats = motif_statistics_or_nan(config);
    const SimulationReport sim = simulate(config, trials, seed);
    row.report = sim.report;
    row.report.z_star = row.stats.z_star;
    row.report.z_chain = row.stats.z_chain;
    row.stats.p_ss = sim.p_ss;
    row.stats.c_o_star = sim.c_o_star;
    row.stats.c_o_chain = sim.c_o_chain;
    row.stats.c_o = sim.c_o_star + sim.c_o_chain;
    row.simulated = sim;
    return row;
}

void run_sweep(const SweepSpec& spec, const QuadratureSpec& q, std::ostream& out) {
    spec.validate();
    out << csv_header() << '\n';
    for (double v : spec.values) {
        const NetworkConfig config = with_axis(spec.base, spec.axis, v);
        if (spec.analytic) out << csv_row(run_analytic(config, q, spec.correlated_outage, false)) << '\n';
        if (spec.simulate) out << csv_row(run_simulate(config, spec.trials, spec.seed)) << '\n';
        out.flush();
    }
}

int exit_code_for(std::exception_ptr error) {
    try {
        std::rethrow_exception(error);
    } catch (const NoMotifError&) {
        return 2;
    } catch (const InvalidRegimeError&) {
        return 3;
    } catch (const UndefinedZError&) {
        return 3;
    } catch (const ConvergenceError&) {
        return 4;
    } catch (const IntegrationError&) {
        return 4;
    } catch (...) {
        return 1;
    }
}

}  // namespace d2dmotif
