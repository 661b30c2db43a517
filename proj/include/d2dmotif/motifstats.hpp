#pragma once

#include <utility>

#include "d2dmotif/config.hpp"
#include "d2dmotif/specfun.hpp"

namespace d2dmotif {

struct MotifStatistics {
    double p_ss = 0;
    double c_o = 0;
    double c_o_star = 0;
    double c_o_chain = 0;
    double p_r = 0;
    double c_r_star = 0;
    double c_r_chain = 0;
    double eps_star = 0;
    double eps_chain = 0;
    double z_star = 0;
    double z_chain = 0;
};

struct Occurrences {
    double c_o = 0;
    double c_o_star = 0;
    double c_o_chain = 0;
};

struct BaselineStats {
    double c_r_star = 0;
    double c_r_chain = 0;
    double eps_star = 0;
    double eps_chain = 0;
};

/// Probability that a device lies within s_th of two other devices of its
/// cluster (all three scattered with per-axis variance `variance`).
double joint_motif_probability(double s_th, double variance, const SeriesControl& control = {});

/// Expected motif counts per cluster; N_m = floor(N / 3) disjoint triples.
/// Throws NoMotifError for N < 3.
Occurrences expected_occurrences(int n_devices, double p_ss, double theta);

/// Link probability of the random baseline graph over n_m nodes.
/// Throws InvalidRegimeError when it would exceed one.
double baseline_link_probability(double p_ss, int n_m);

BaselineStats baseline_stats(double p_ss, int n_m, double theta);

/// (z_star, z_chain) from the occurrence and baseline fields of `stats`.
/// Throws UndefinedZError when a baseline deviation is zero.
std::pair<double, double> z_scores(const MotifStatistics& stats);

/// Every field of MotifStatistics for one configuration.
MotifStatistics motif_statistics(const NetworkConfig& config, const SeriesControl& control = {});

}  // namespace d2dmotif
