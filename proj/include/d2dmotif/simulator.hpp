#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "d2dmotif/config.hpp"
#include "d2dmotif/interference.hpp"
#include "d2dmotif/performance.hpp"
#include "d2dmotif/pointprocess.hpp"
#include "d2dmotif/rng.hpp"

namespace d2dmotif {

enum class MotifKind { none, star, chain };

/// A disjoint triple of devices of one cluster. Indices are device indices
/// within the cluster.
struct MotifGroup {
    int cluster_index = 0;
    std::array<int, 3> member_indices{};
    MotifKind kind = MotifKind::none;
    int hub_index = 0;
    int seed_index = 0;
    // Chain only: the hub relays from the seed to the remaining member.
    std::optional<int> relay_index;

    /// The two devices that receive from the seed (star) or the relay's
    /// receiver pair {relay, final} (chain).
    std::array<int, 2> receivers() const;
};

/// Per cluster: a random 3 N_m subset of the devices split into triples, each
/// with a uniform hub. A triple qualifies when both hub-peer distances are at
/// most s_th; a qualifying triple is a star with probability theta, else a
/// chain whose relay is the hub and whose seed is one of the peers.
std::vector<MotifGroup> form_motif_groups(const NetworkRealization& realization, const NetworkConfig& config,
                                          std::uint64_t seed);

enum class SlotParity { first, second };

/// SIR of every D2D link of one slot, in the order of `groups` (two entries
/// per star group, one per chain group). Infinite when nothing interferes.
struct SlotSample {
    SlotParity slot_parity = SlotParity::first;
    std::vector<double> sir;
    std::vector<double> rate;  // bit/s, bandwidth rule of the link's motif
};

/// Draws one slot with fresh unit-mean exponential fades. Active transmitters
/// are every star seed plus, per chain, the seed (first slot) or relay
/// (second slot).
SlotSample sample_slot(const NetworkRealization& realization, const std::vector<MotifGroup>& groups,
                       const NetworkConfig& config, SlotParity parity, Rng& rng);

/// Empirical counterpart of ThroughputReport with standard errors.
struct SimulationReport {
    ThroughputReport report;
    double se_star = 0;
    double se_chain_first = 0;
    double se_chain_second = 0;
    double se_seeding = 0;
    double se_avg = 0;
    double se_outage_star = 0;
    double se_outage_chain = 0;
    double link_success_star = 0;
    double se_link_success_star = 0;
    double link_success_chain_first = 0;
    double se_link_success_chain_first = 0;
    // Qualifying fraction of formed triples (empirical P_SS).
    double p_ss = 0;
    // Mean motif counts per observed cluster.
    double c_o_star = 0;
    double c_o_chain = 0;
    long observed_clusters = 0;
    long star_motifs = 0;
    long chain_motifs = 0;
};

/// Fixed realization and groups, n_trials independent fade draws (both slots
/// per trial). Statistics use clusters whose parent lies in the observation
/// square [-L, L]^2; every cluster transmits.
SimulationReport simulate_slots(const NetworkRealization& realization, const std::vector<MotifGroup>& groups,
                                const NetworkConfig& config, long n_trials, std::uint64_t seed);

/// n_trials independent networks (fresh realization, grouping and fades
/// each), aggregated into one report.
SimulationReport simulate(const NetworkConfig& config, long n_trials, std::uint64_t seed);

struct Estimate {
    double value = 0;
    double standard_error = 0;
};

/// Monte Carlo E[exp(-s I)] with I built under the same independence and
/// thinning assumptions as the analytic transform of `kind`. `s_r` is the
/// relay distance for chain_intra and ignored otherwise.
Estimate empirical_laplace(double s, InterferenceKind kind, const NetworkConfig& config, long n_draws,
                           std::uint64_t seed, double s_r = 0.0);

/// Fraction of Gaussian triples (per-axis variance `variance`) whose first
/// point lies within s_th of the other two.
Estimate empirical_joint_motif_probability(double s_th, double variance, long n_draws, std::uint64_t seed);

/// Mean seeding rate w2 log2(1 + SNR) over devices with a uniform cluster
/// centre in the square, a Gaussian offset and a Rayleigh-faded BS link.
Estimate empirical_seeding_rate(const NetworkConfig& config, long n_draws, std::uint64_t seed);

struct EmpiricalZ {
    Estimate z_star;
    Estimate z_chain;
    double c_o_star = 0;
    double c_o_chain = 0;
};

/// Z-scores from simulated single-cluster motif counts against a rewired
/// baseline: per realization the observed 2 * count links are placed
/// uniformly over the node pairs of the N_m-node group graph, and N_m random
/// triples with exactly two links are counted (split star/chain by theta).
EmpiricalZ empirical_z_score(const NetworkConfig& config, long n_realizations, long n_rewires, std::uint64_t seed);

}  // namespace d2dmotif
