#include "d2dmotif/motifstats.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

#include "d2dmotif/errors.hpp"

namespace d2dmotif {

double joint_motif_probability(double s_th, double variance, const SeriesControl& control) {
    control.validate();
    if (!std::isfinite(s_th) || s_th < 0) throw DomainError("joint_motif_probability: s_th must be nonnegative");
    if (!std::isfinite(variance) || !(variance > 0))
        throw DomainError("joint_motif_probability: variance must be positive");
    if (s_th == 0) return 0.0;

    // gamma(1+k, x) / k! is the regularized P(1+k, x); using it directly
    // avoids forming k! and Gamma(1+k) separately.
    const double x = s_th * s_th / (3.0 * variance);
    double sum = 0;
    double half_pow = 1;
    double term = 0;
    for (int k = 0; k < control.max_terms; ++k) {
        const double a = half_pow * regularized_lower_gamma(1.0 + k, x);
        term = a * a;
        sum += term;
        if (term <= control.relative_tolerance * sum) {
            const double p = 0.75 * sum;
            if (p > 1.0 + 1e-9)
                throw ConvergenceError("joint_motif_probability: series overshoots one", term, k + 1);
            return std::min(p, 1.0);
        }
        half_pow *= 0.5;
    }
    throw ConvergenceError("joint_motif_probability: series did not converge", term, control.max_terms);
}

Occurrences expected_occurrences(int n_devices, double p_ss, double theta) {
    if (n_devices < 3) {
        throw NoMotifError("expected_occurrences: N = " + std::to_string(n_devices) +
                           " devices per cluster cannot hold a three-node motif");
    }
    if (!(p_ss >= 0 && p_ss <= 1)) throw DomainError("expected_occurrences: p_ss must lie in [0, 1]");
    if (!(theta > 0 && theta < 1)) throw DomainError("expected_occurrences: theta must lie in (0, 1)");
    const int n_m = n_devices / 3;
    Occurrences o;
    o.c_o = n_m * p_ss;
    o.c_o_star = theta * o.c_o;
    o.c_o_chain = (1.0 - theta) * o.c_o;
    return o;
}

double baseline_link_probability(double p_ss, int n_m) {
    if (!(p_ss >= 0 && p_ss <= 1)) throw DomainError("baseline_link_probability: p_ss must lie in [0, 1]");
    if (n_m < 2) {
        throw InvalidRegimeError("baseline_link_probability: N_m = " + std::to_string(n_m) +
                                 " leaves no node pairs for the baseline graph");
    }
    const double p_r = 4.0 * p_ss / (n_m - 1);
    if (p_r > 1.0) {
        std::ostringstream msg;
        msg << "baseline_link_probability: P_r = " << p_r << " > 1 (p_ss = " << p_ss << ", N_m = " << n_m << ")";
        throw InvalidRegimeError(msg.str());
    }
    return p_r;
}

BaselineStats baseline_stats(double p_ss, int n_m, double theta) {
    if (!(theta > 0 && theta < 1)) throw DomainError("baseline_stats: theta must lie in (0, 1)");
    baseline_link_probability(p_ss, n_m);

    const double m1 = n_m - 1.0;
    const double core = 48.0 * n_m * p_ss * p_ss * (m1 - 4.0 * p_ss) / (m1 * m1 * m1);
    BaselineStats b;
    b.c_r_star = theta * core;
    b.c_r_chain = (1.0 - theta) * core;

    auto deviation = [&](double mean, const char* which) {
        const double radicand = mean * (1.0 - mean);
        if (radicand < 0) {
            std::ostringstream msg;
            msg << "baseline_stats: negative variance radicand " << radicand << " for " << which
                << " (mean " << mean << ", p_ss = " << p_ss << ", N_m = " << n_m << ")";
            throw InvalidRegimeError(msg.str());
        }
        return std::sqrt(radicand);
    };
    b.eps_star = deviation(b.c_r_star, "star");
    b.eps_chain = deviation(b.c_r_chain, "chain");
    return b;
}

std::pair<double, double> z_scores(const MotifStatistics& s) {
    if (!(s.eps_star > 0) || !(s.eps_chain > 0))
        throw UndefinedZError("z_scores: baseline standard deviation is zero");
    return {(s.c_o_star - s.c_r_star) / s.eps_star, (s.c_o_chain - s.c_r_chain) / s.eps_chain};
}

MotifStatistics motif_statistics(const NetworkConfig& config, const SeriesControl& control) {
    config.validate();
    MotifStatistics s;
    s.p_ss = joint_motif_probability(config.max_link_distance_m, config.scatter_variance, control);
    const Occurrences o = expected_occurrences(config.devices_per_cluster, s.p_ss, config.star_fraction);
    s.c_o = o.c_o;
    s.c_o_star = o.c_o_star;
    s.c_o_chain = o.c_o_chain;
    const int n_m = config.motifs_per_cluster();
    s.p_r = baseline_link_probability(s.p_ss, n_m);
    const BaselineStats b = baseline_stats(s.p_ss, n_m, config.star_fraction);
    s.c_r_star = b.c_r_star;
    s.c_r_chain = b.c_r_chain;
    s.eps_star = b.eps_star;
    s.eps_chain = b.eps_chain;
    std::tie(s.z_star, s.z_chain) = z_scores(s);
    return s;
}

}  // namespace d2dmotif
