#include "d2dmotif/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "d2dmotif/rng.hpp"

namespace d2dmotif {

std::array<int, 2> MotifGroup::receivers() const {
    if (kind == MotifKind::chain) {
        const int relay = *relay_index;
        for (int m : member_indices)
            if (m != relay && m != seed_index) return {relay, m};
    }
    std::array<int, 2> out{};
    int k = 0;
    for (int m : member_indices)
        if (m != seed_index && k < 2) out[k++] = m;
    return out;
}

std::vector<MotifGroup> form_motif_groups(const NetworkRealization& realization, const NetworkConfig& config,
                                          std::uint64_t seed) {
    config.validate();
    const int n = config.devices_per_cluster;
    const int n_m = config.motifs_per_cluster();
    const double s_th2 = config.max_link_distance_m * config.max_link_distance_m;

    std::vector<MotifGroup> groups;
    groups.reserve(static_cast<std::size_t>(realization.cluster_count() * n_m));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < realization.cluster_count(); ++c) {
        const Eigen::Matrix2Xd& y = realization.offsets[static_cast<std::size_t>(c)];
        Rng rng = make_rng(seed, Stream::grouping, static_cast<std::uint64_t>(c));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::uniform_int_distribution<int> pick3(0, 2);
        std::uniform_int_distribution<int> pick2(0, 1);
        std::bernoulli_distribution is_star(config.star_fraction);

        for (int g = 0; g < n_m; ++g) {
            MotifGroup grp;
            grp.cluster_index = static_cast<int>(c);
            grp.member_indices = {order[3 * g], order[3 * g + 1], order[3 * g + 2]};
            const int h = pick3(rng);
            grp.hub_index = grp.member_indices[h];
            const int peer_a = grp.member_indices[(h + 1) % 3];
            const int peer_b = grp.member_indices[(h + 2) % 3];
            const bool linked = (y.col(grp.hub_index) - y.col(peer_a)).squaredNorm() <= s_th2 &&
                                (y.col(grp.hub_index) - y.col(peer_b)).squaredNorm() <= s_th2;
            // Draw the role variables for every triple so the random stream
            // does not depend on which triples qualify.
            const bool star = is_star(rng);
            const int seed_pick = pick2(rng);
            grp.seed_index = grp.hub_index;
            if (linked && star) {
                grp.kind = MotifKind::star;
            } else if (linked) {
                grp.kind = MotifKind::chain;
                grp.relay_index = grp.hub_index;
                grp.seed_index = seed_pick == 0 ? peer_a : peer_b;
            }
            groups.push_back(grp);
        }
    }
    return groups;
}

namespace {

struct Link {
    Eigen::Vector2d tx;
    Eigen::Vector2d rx;
    int tx_id;  // index into the slot's active transmitter list
};

// Geometry of one realization prepared for repeated fade draws.
struct Layout {
    std::vector<Eigen::Vector2d> active_first;   // transmitters, first slot
    std::vector<Eigen::Vector2d> active_second;  // transmitters, second slot
    // Observed motifs only.
    struct Star {
        int tx_first, tx_second;
        Eigen::Vector2d rx[2];
    };
    struct Chain {
        int tx_first, tx_second;  // seed id in first slot, relay id in second
        Eigen::Vector2d relay, final_rx;
    };
    std::vector<Star> stars;
    std::vector<Chain> chains;
    std::vector<Eigen::Vector2d> observed_seeds;
    long observed_clusters = 0;
    long formed_triples = 0;
    long qualifying_triples = 0;
};

bool observed(const Eigen::Vector2d& parent, double half_width) {
    return std::abs(parent.x()) <= half_width && std::abs(parent.y()) <= half_width;
}

Layout make_layout(const NetworkRealization& realization, const std::vector<MotifGroup>& groups,
                   const NetworkConfig& config) {
    Layout out;
    const double half = config.region_half_width_m;
    std::vector<Eigen::Matrix2Xd> devices;
    devices.reserve(static_cast<std::size_t>(realization.cluster_count()));
    for (Eigen::Index c = 0; c < realization.cluster_count(); ++c) {
        devices.push_back(realization.devices(c));
        if (observed(realization.parent_points.col(c), half)) ++out.observed_clusters;
    }

    for (const MotifGroup& g : groups) {
        const Eigen::Matrix2Xd& pos = devices[static_cast<std::size_t>(g.cluster_index)];
        const bool seen = observed(realization.parent_points.col(g.cluster_index), half);
        if (seen) {
            ++out.formed_triples;
            if (g.kind != MotifKind::none) ++out.qualifying_triples;
        }
        if (g.kind == MotifKind::none) continue;
        const Eigen::Vector2d seed_pos = pos.col(g.seed_index);
        const auto rx = g.receivers();
        if (g.kind == MotifKind::star) {
            const int first = static_cast<int>(out.active_first.size());
            const int second = static_cast<int>(out.active_second.size());
            out.active_first.push_back(seed_pos);
            out.active_second.push_back(seed_pos);
            if (seen) {
                out.stars.push_back({first, second, {pos.col(rx[0]), pos.col(rx[1])}});
                out.observed_seeds.push_back(seed_pos);
            }
        } else {
            const Eigen::Vector2d relay = pos.col(*g.relay_index);
            const int first = static_cast<int>(out.active_first.size());
            const int second = static_cast<int>(out.active_second.size());
            out.active_first.push_back(seed_pos);
            out.active_second.push_back(relay);
            if (seen) {
                out.chains.push_back({first, second, relay, pos.col(rx[1])});
                out.observed_seeds.push_back(seed_pos);
            }
        }
    }
    return out;
}

// Sums and counts of one trial; reduced across trials in trial order.
struct TrialStats {
    double star_rate_sum = 0;
    long star_rate_n = 0;
    long star_link_ok = 0;
    long star_link_n = 0;
    long star_outage = 0;
    long star_motif_n = 0;
    double chain_first_sum = 0;
    long chain_first_n = 0;
    double chain_second_sum = 0;  // relay -> final hop
    long chain_second_n = 0;
    long chain_link_ok = 0;
    long chain_link_n = 0;
    long chain_outage = 0;
    long chain_motif_n = 0;
    double seed_rate_sum = 0;
    long seed_rate_n = 0;
    long observed_clusters = 0;
    long star_count = 0;
    long chain_count = 0;
    long formed = 0;
    long qualifying = 0;
};

class SlotEngine {
public:
    explicit SlotEngine(const NetworkConfig& config) {
        alpha_ = config.pathloss_exponent;
        quartic_ = alpha_ == 4.0;
        noise_ = config.d2d_noise ? config.d2d_noise_w() / config.device_power_w() : 0.0;
    }

    double gain(const Eigen::Vector2d& a, const Eigen::Vector2d& b) const {
        const double d2 = (a - b).squaredNorm();
        return quartic_ ? 1.0 / (d2 * d2) : std::pow(d2, -0.5 * alpha_);
    }

    // SIR (transmit power cancels) with fresh fades on every path.
    double sir(const std::vector<Eigen::Vector2d>& active, int intended, const Eigen::Vector2d& rx, Rng& rng) {
        const double signal = exp_(rng) * gain(active[static_cast<std::size_t>(intended)], rx);
        double interference = noise_;
        for (std::size_t t = 0; t < active.size(); ++t) {
            if (static_cast<int>(t) == intended) continue;
            interference += exp_(rng) * gain(active[t], rx);
        }
        return interference > 0 ? signal / interference : std::numeric_limits<double>::infinity();
    }

private:
    double alpha_;
    bool quartic_;
    double noise_;
    std::exponential_distribution<double> exp_{1.0};
};

TrialStats run_trial(const Layout& layout, const NetworkConfig& config, Rng& rng) {
    TrialStats t;
    t.observed_clusters = layout.observed_clusters;
    t.star_count = static_cast<long>(layout.stars.size());
    t.chain_count = static_cast<long>(layout.chains.size());
    t.formed = layout.formed_triples;
    t.qualifying = layout.qualifying_triples;

    SlotEngine engine(config);
    const double delta = config.sir_threshold_linear();
    const double w1 = config.d2d_bandwidth_hz();
    const double w2 = config.cellular_bandwidth_hz();
    auto log_rate = [](double bandwidth, double sir) { return bandwidth * std::log2(1.0 + sir); };

    // Star links are observed in both slots.
    for (const auto& s : layout.stars) {
        for (int slot = 0; slot < 2; ++slot) {
            const auto& active = slot == 0 ? layout.active_first : layout.active_second;
            const int tx = slot == 0 ? s.tx_first : s.tx_second;
            bool outage = false;
            for (const auto& rx : s.rx) {
                const double sir = engine.sir(active, tx, rx, rng);
                ++t.star_link_n;
                if (sir >= delta) ++t.star_link_ok;
                else outage = true;
                if (std::isfinite(sir)) {
                    t.star_rate_sum += log_rate(0.5 * w1, sir);
                    ++t.star_rate_n;
                }
            }
            ++t.star_motif_n;
            if (outage) ++t.star_outage;
        }
    }

    for (const auto& c : layout.chains) {
        const double sir1 = engine.sir(layout.active_first, c.tx_first, c.relay, rng);
        const double sir2 = engine.sir(layout.active_second, c.tx_second, c.final_rx, rng);
        ++t.chain_link_n;
        if (sir1 >= delta) ++t.chain_link_ok;
        ++t.chain_motif_n;
        if (sir1 < delta || sir2 < delta) ++t.chain_outage;
        if (std::isfinite(sir1)) {
            t.chain_first_sum += log_rate(w1, sir1);
            ++t.chain_first_n;
        }
        if (std::isfinite(sir2)) {
            t.chain_second_sum += log_rate(w1, sir2);
            ++t.chain_second_n;
        }
    }

    // Seeds receive from the BS at the origin, noise-limited, Rayleigh faded.
    std::exponential_distribution<double> fade(1.0);
    const double snr_scale = config.bs_power_w() / config.seeding_noise_w();
    for (const auto& seed : layout.observed_seeds) {
        const double snr = snr_scale * fade(rng) * engine.gain(seed, Eigen::Vector2d::Zero());
        t.seed_rate_sum += log_rate(w2, snr);
        ++t.seed_rate_n;
    }
    return t;
}

// Ratio-of-sums estimator over trials with its delta-method standard error.
struct Ratio {
    double value = 0;
    double se = 0;
};

template <class Num, class Den>
Ratio ratio(const std::vector<TrialStats>& trials, Num num, Den den) {
    double sum_num = 0;
    double sum_den = 0;
    for (const auto& t : trials) {
        sum_num += num(t);
        sum_den += den(t);
    }
    if (sum_den == 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double r = sum_num / sum_den;
    const double n = static_cast<double>(trials.size());
    if (trials.size() < 2) return {r, std::numeric_limits<double>::infinity()};
    double ss = 0;
    for (const auto& t : trials) {
        const double e = num(t) - r * den(t);
        ss += e * e;
    }
    const double mean_den = sum_den / n;
    return {r, std::sqrt(ss / (n * (n - 1))) / mean_den};
}

SimulationReport reduce(const std::vector<TrialStats>& trials, const NetworkConfig& config) {
    SimulationReport out;
    ThroughputReport& r = out.report;
    auto num_den = [&](auto num, auto den) { return ratio(trials, num, den); };

    const Ratio star = num_den([](const TrialStats& t) { return t.star_rate_sum; },
                               [](const TrialStats& t) { return double(t.star_rate_n); });
    const Ratio first = num_den([](const TrialStats& t) { return t.chain_first_sum; },
                                [](const TrialStats& t) { return double(t.chain_first_n); });
    const Ratio second = num_den([](const TrialStats& t) { return t.chain_second_sum; },
                                 [](const TrialStats& t) { return double(t.chain_second_n); });
    const Ratio seeding = num_den([](const TrialStats& t) { return t.seed_rate_sum; },
                                  [](const TrialStats& t) { return double(t.seed_rate_n); });
    const Ratio out_star = num_den([](const TrialStats& t) { return double(t.star_outage); },
                                   [](const TrialStats& t) { return double(t.star_motif_n); });
    const Ratio out_chain = num_den([](const TrialStats& t) { return double(t.chain_outage); },
                                    [](const TrialStats& t) { return double(t.chain_motif_n); });
    const Ratio ok_star = num_den([](const TrialStats& t) { return double(t.star_link_ok); },
                                  [](const TrialStats& t) { return double(t.star_link_n); });
    const Ratio ok_chain = num_den([](const TrialStats& t) { return double(t.chain_link_ok); },
                                   [](const TrialStats& t) { return double(t.chain_link_n); });
    const Ratio c_star = num_den([](const TrialStats& t) { return double(t.star_count); },
                                 [](const TrialStats& t) { return double(t.observed_clusters); });
    const Ratio c_chain = num_den([](const TrialStats& t) { return double(t.chain_count); },
                                  [](const TrialStats& t) { return double(t.observed_clusters); });
    const Ratio p_ss = num_den([](const TrialStats& t) { return double(t.qualifying); },
                               [](const TrialStats& t) { return double(t.formed); });

    r.e_star = star.value;
    r.e_chain_first = first.value;
    // Device k gets half the smaller of the two mean hop rates.
    const bool first_smaller = !(second.value < first.value);
    r.e_chain_second = 0.5 * (first_smaller ? first.value : second.value);
    r.e_seeding = seeding.value;
    r.outage_star = out_star.value;
    r.outage_chain = out_chain.value;
    out.se_star = star.se;
    out.se_chain_first = first.se;
    out.se_chain_second = 0.5 * (first_smaller ? first.se : second.se);
    out.se_seeding = seeding.se;
    out.se_outage_star = out_star.se;
    out.se_outage_chain = out_chain.se;
    out.link_success_star = ok_star.value;
    out.se_link_success_star = ok_star.se;
    out.link_success_chain_first = ok_chain.value;
    out.se_link_success_chain_first = ok_chain.se;
    out.p_ss = p_ss.value;
    out.c_o_star = c_star.value;
    out.c_o_chain = c_chain.value;
    for (const auto& t : trials) {
        out.observed_clusters += t.observed_clusters;
        out.star_motifs += t.star_count;
        out.chain_motifs += t.chain_count;
    }

    // Per-device average with the realized per-cluster motif counts; roles
    // with no finite samples contribute nothing.
    auto zero_nan = [](double v) { return std::isnan(v) ? 0.0 : v; };
    const double cs = zero_nan(out.c_o_star);
    const double cc = zero_nan(out.c_o_chain);
    const Occurrences occ{cs + cc, cs, cc};
    const int n = config.devices_per_cluster;
    r.e_avg = weighted_average_throughput(occ, n, zero_nan(r.e_star), zero_nan(r.e_chain_first),
                                          zero_nan(r.e_chain_second), zero_nan(r.e_seeding));
    const double a = 2.0 * cs * zero_nan(star.se);
    const double b = cc * zero_nan(first.se);
    const double c = cc * zero_nan(out.se_chain_second);
    const double d = (cs + cc + 1.0) * zero_nan(seeding.se);
    out.se_avg = std::sqrt(a * a + b * b + c * c + d * d) / n;
    return out;
}

}  // namespace

SlotSample sample_slot(const NetworkRealization& realization, const std::vector<MotifGroup>& groups,
                       const NetworkConfig& config, SlotParity parity, Rng& rng) {
    config.validate();
    const bool first = parity == SlotParity::first;
    std::vector<Eigen::Matrix2Xd> devices;
    for (Eigen::Index c = 0; c < realization.cluster_count(); ++c) devices.push_back(realization.devices(c));

    // Transmitter id per group (-1 when silent).
    std::vector<Eigen::Vector2d> active;
    std::vector<int> tx_of(groups.size(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const MotifGroup& grp = groups[g];
        if (grp.kind == MotifKind::none) continue;
        const Eigen::Matrix2Xd& pos = devices[static_cast<std::size_t>(grp.cluster_index)];
        const int tx = grp.kind == MotifKind::chain && !first ? *grp.relay_index : grp.seed_index;
        tx_of[g] = static_cast<int>(active.size());
        active.push_back(pos.col(tx));
    }

    SlotEngine engine(config);
    const double w1 = config.d2d_bandwidth_hz();
    SlotSample out;
    out.slot_parity = parity;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const MotifGroup& grp = groups[g];
        if (grp.kind == MotifKind::none) continue;
        const Eigen::Matrix2Xd& pos = devices[static_cast<std::size_t>(grp.cluster_index)];
        const auto rx = grp.receivers();
        if (grp.kind == MotifKind::star) {
            for (int r : rx) {
                const double sir = engine.sir(active, tx_of[g], pos.col(r), rng);
                out.sir.push_back(sir);
                out.rate.push_back(0.5 * w1 * std::log2(1.0 + sir));
            }
        } else {
            const double sir = engine.sir(active, tx_of[g], pos.col(first ? rx[0] : rx[1]), rng);
            out.sir.push_back(sir);
            out.rate.push_back(w1 * std::log2(1.0 + sir));
        }
    }
    return out;
}

SimulationReport simulate_slots(const NetworkRealization& realization, const std::vector<MotifGroup>& groups,
                                const NetworkConfig& config, long n_trials, std::uint64_t seed) {
    config.validate();
    if (n_trials < 1) throw DomainError("simulate_slots: n_trials must be positive");
    const Layout layout = make_layout(realization, groups, config);
    std::vector<TrialStats> trials;
    trials.reserve(static_cast<std::size_t>(n_trials));
    for (long t = 0; t < n_trials; ++t) {
        Rng rng = make_rng(seed, Stream::fading, static_cast<std::uint64_t>(t));
        trials.push_back(run_trial(layout, config, rng));
    }
    return reduce(trials, config);
}

SimulationReport simulate(const NetworkConfig& config, long n_trials, std::uint64_t seed) {
    config.validate();
    if (n_trials < 1) throw DomainError("simulate: n_trials must be positive");
    std::vector<TrialStats> trials;
    trials.reserve(static_cast<std::size_t>(n_trials));
    for (long t = 0; t < n_trials; ++t) {
        const auto index = static_cast<std::uint64_t>(t);
        const NetworkRealization realization =
            sample_tcp(config, config.guard_margin_m, substream_seed(seed, Stream::parents, index));
        const auto groups = form_motif_groups(realization, config, substream_seed(seed, Stream::grouping, index));
        const Layout layout = make_layout(realization, groups, config);
        Rng rng = make_rng(seed, Stream::fading, index);
        trials.push_back(run_trial(layout, config, rng));
    }
    return reduce(trials, config);
}

namespace {

Estimate mean_estimate(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double sum = 0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, values.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0};
}

}  // namespace

Estimate empirical_laplace(double s, InterferenceKind kind, const NetworkConfig& config, long n_draws,
                           std::uint64_t seed, double s_r) {
    config.validate();
    if (!(s >= 0) || !std::isfinite(s)) throw DomainError("empirical_laplace: s must be finite and non-negative");
    if (n_draws < 1) throw DomainError("empirical_laplace: n_draws must be positive");
    if (kind == InterferenceKind::chain_intra && !(s_r >= 0)) throw DomainError("empirical_laplace: negative s_r");

    const LaplaceContext ctx = LaplaceContext::from_config(config);
    const double alpha = config.pathloss_exponent;
    const double a = std::pow(s * ctx.transmit_power_w, 1.0 / alpha);
    const double sd = std::sqrt(config.scatter_variance);
    const int n_m = ctx.n_m;

    Rng rng = make_rng(seed, Stream::oracle, static_cast<std::uint64_t>(kind));
    std::exponential_distribution<double> fade(1.0);
    std::bernoulli_distribution active(ctx.p_ss);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // s * P_t * h * d^-alpha = h (a/d)^alpha
    auto term = [&](double d2) { return fade(rng) * std::pow(a * a / d2, 0.5 * alpha); };

    double radius = 0;
    std::poisson_distribution<long> parents(1.0);
    const bool inter = kind == InterferenceKind::star_inter || kind == InterferenceKind::chain_inter;
    const double offset_sd = kind == InterferenceKind::star_inter ? std::sqrt(3.0) * sd : sd;
    if (inter) {
        if (!(alpha > 2)) throw DomainError("empirical_laplace: inter-cluster sum needs alpha > 2");
        // Mean of s * I over parents beyond R is at most
        // 2 pi lambda N_m p a^alpha R^{2-alpha} / (alpha - 2).
        const double lambda = config.parent_density_per_m2();
        const double coeff = 2.0 * std::numbers::pi * lambda * n_m * ctx.p_ss * std::pow(a, alpha) / (alpha - 2.0);
        radius = std::max(std::pow(coeff / 1e-4, 1.0 / (alpha - 2.0)), a + 10.0 * offset_sd);
        parents = std::poisson_distribution<long>(lambda * std::numbers::pi * radius * radius);
    }
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> values(static_cast<std::size_t>(n_draws));
    for (long k = 0; k < n_draws; ++k) {
        double sum = 0;
        if (s > 0) switch (kind) {
            case InterferenceKind::star_intra:
                for (int m = 0; m < n_m - 1; ++m) {
                    if (!active(rng)) continue;
                    const double u = std::sqrt(2.0) * sd * gauss(rng);
                    const double v = std::sqrt(2.0) * sd * gauss(rng);
                    sum += term(u * u + v * v);
                }
                break;
            case InterferenceKind::chain_intra:
                for (int m = 0; m < n_m - 1; ++m) {
                    if (!active(rng)) continue;
                    const double u = s_r + sd * gauss(rng);
                    const double v = sd * gauss(rng);
                    sum += term(u * u + v * v);
                }
                break;
            case InterferenceKind::star_inter:
            case InterferenceKind::chain_inter: {
                const long count = parents(rng);
                for (long c = 0; c < count; ++c) {
                    const double rho = radius * std::sqrt(unit(rng));
                    const double phi = 2.0 * std::numbers::pi * unit(rng);
                    for (int m = 0; m < n_m; ++m) {
                        if (!active(rng)) continue;
                        const double u = rho * std::cos(phi) + offset_sd * gauss(rng);
                        const double v = rho * std::sin(phi) + offset_sd * gauss(rng);
                        sum += term(u * u + v * v);
                    }
                }
                break;
            }
        }
        values[static_cast<std::size_t>(k)] = std::exp(-sum);
    }
    return mean_estimate(values);
}

Estimate empirical_joint_motif_probability(double s_th, double variance, long n_draws, std::uint64_t seed) {
    if (!(s_th >= 0) || !(variance > 0)) throw DomainError("empirical_joint_motif_probability: bad arguments");
    if (n_draws < 1) throw DomainError("empirical_joint_motif_probability: n_draws must be positive");
    Rng rng = make_rng(seed, Stream::oracle, 100);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
    auto draw = [&] {
        const double u = gauss(rng);
        return Eigen::Vector2d(u, gauss(rng));
    };
    const double s2 = s_th * s_th;
    long hits = 0;
    for (long k = 0; k < n_draws; ++k) {
        const Eigen::Vector2d hub = draw();
        const Eigen::Vector2d a = draw();
        const Eigen::Vector2d b = draw();
        if ((hub - a).squaredNorm() <= s2 && (hub - b).squaredNorm() <= s2) ++hits;
    }
    const double n = static_cast<double>(n_draws);
    const double p = hits / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

Estimate empirical_seeding_rate(const NetworkConfig& config, long n_draws, std::uint64_t seed) {
    config.validate();
    if (n_draws < 2) throw DomainError("empirical_seeding_rate: n_draws must be at least 2");
    Rng rng = make_rng(seed, Stream::oracle, 101);
    const double half = config.region_half_width_m;
    std::uniform_real_distribution<double> centre(-half, half);
    std::normal_distribution<double> gauss(0.0, std::sqrt(config.scatter_variance));
    std::exponential_distribution<double> fade(1.0);
    const double snr_scale = config.bs_power_w() / config.seeding_noise_w();
    const double w2 = config.cellular_bandwidth_hz();
    const double alpha = config.pathloss_exponent;
    std::vector<double> values(static_cast<std::size_t>(n_draws));
    for (auto& v : values) {
        double x = centre(rng);
        double y = centre(rng);
        x += gauss(rng);
        y += gauss(rng);
        const double snr = snr_scale * fade(rng) * std::pow(x * x + y * y, -0.5 * alpha);
        v = w2 * std::log2(1.0 + snr);
    }
    return mean_estimate(values);
}

EmpiricalZ empirical_z_score(const NetworkConfig& config, long n_realizations, long n_rewires, std::uint64_t seed) {
    config.validate();
    if (config.devices_per_cluster < 3) throw NoMotifError("empirical_z_score: fewer than three devices");
    if (n_realizations < 2 || n_rewires < 1) throw DomainError("empirical_z_score: need >= 2 realizations and >= 1 rewire");
    const int n_m = config.motifs_per_cluster();
    if (n_m < 3) throw UndefinedZError("empirical_z_score: baseline graph has fewer than three nodes");
    const int n = config.devices_per_cluster;
    const double sd = std::sqrt(config.scatter_variance);
    const long pairs = static_cast<long>(n_m) * (n_m - 1) / 2;

    std::vector<double> obs_star, obs_chain, base_star, base_chain;
    std::normal_distribution<double> gauss(0.0, sd);
    std::vector<char> adjacency(static_cast<std::size_t>(n_m * n_m));
    for (long r = 0; r < n_realizations; ++r) {
        const auto index = static_cast<std::uint64_t>(r);
        NetworkRealization one;
        one.parent_points = Eigen::Matrix2Xd::Zero(2, 1);
        Eigen::Matrix2Xd y(2, n);
        Rng offsets = make_rng(seed, Stream::offsets, index);
        for (int d = 0; d < n; ++d) {
            y(0, d) = gauss(offsets);
            y(1, d) = gauss(offsets);
        }
        one.offsets.push_back(y);
        const auto groups = form_motif_groups(one, config, substream_seed(seed, Stream::grouping, index));
        long stars = 0, chains = 0;
        for (const auto& g : groups) {
            if (g.kind == MotifKind::star) ++stars;
            if (g.kind == MotifKind::chain) ++chains;
        }
        obs_star.push_back(static_cast<double>(stars));
        obs_chain.push_back(static_cast<double>(chains));

        const long edges = std::min(2 * (stars + chains), pairs);
        Rng rng = make_rng(seed, Stream::baseline, index);
        std::uniform_int_distribution<int> node(0, n_m - 1);
        std::bernoulli_distribution is_star(config.star_fraction);
        for (long w = 0; w < n_rewires; ++w) {
            std::fill(adjacency.begin(), adjacency.end(), 0);
            for (long e = 0; e < edges;) {
                const int i = node(rng);
                const int j = node(rng);
                if (i == j || adjacency[static_cast<std::size_t>(i * n_m + j)]) continue;
                adjacency[static_cast<std::size_t>(i * n_m + j)] = 1;
                adjacency[static_cast<std::size_t>(j * n_m + i)] = 1;
                ++e;
            }
            long r_star = 0, r_chain = 0;
            for (int t = 0; t < n_m; ++t) {
                int i, j, k;
                do {
                    i = node(rng);
                    j = node(rng);
                    k = node(rng);
                } while (i == j || j == k || i == k);
                const int links = adjacency[static_cast<std::size_t>(i * n_m + j)] +
                                  adjacency[static_cast<std::size_t>(j * n_m + k)] +
                                  adjacency[static_cast<std::size_t>(i * n_m + k)];
                if (links != 2) continue;
                if (is_star(rng)) ++r_star;
                else ++r_chain;
            }
            base_star.push_back(static_cast<double>(r_star));
            base_chain.push_back(static_cast<double>(r_chain));
        }
    }

    auto z = [&](const std::vector<double>& obs, const std::vector<double>& base) {
        const Estimate o = mean_estimate(obs);
        const Estimate b = mean_estimate(base);
        const double nb = static_cast<double>(base.size());
        const double base_sd = b.standard_error * std::sqrt(nb);
        if (!(base_sd > 0)) throw UndefinedZError("empirical_z_score: baseline count has zero spread");
        const double value = (o.value - b.value) / base_sd;
        const double se = std::sqrt((o.standard_error * o.standard_error + b.standard_error * b.standard_error) /
                                        (base_sd * base_sd) +
                                    value * value / (2.0 * nb));
        return Estimate{value, se};
    };

    EmpiricalZ out;
    out.z_star = z(obs_star, base_star);
    out.z_chain = z(obs_chain, base_chain);
    out.c_o_star = mean_estimate(obs_star).value;
    out.c_o_chain = mean_estimate(obs_chain).value;
    return out;
}

}  // namespace d2dmotif
