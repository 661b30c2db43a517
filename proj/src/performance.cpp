#include "d2dmotif/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "d2dmotif/pointprocess.hpp"

namespace d2dmotif {

namespace {

constexpr double kTailSd = 10.0;
// The rate integrals stop once the success probability drops below this.
constexpr double kSurvivalCutoff = 1e-10;
// Beyond R = kMaxRateFactor * bandwidth the threshold 2^{R/B} - 1 overflows.
constexpr double kMaxRateFactor = 1000.0;

double threshold_for_rate(double rate, double bandwidth) {
    return std::expm1(rate / bandwidth * std::numbers::ln2);
}

// Adaptive integral over [lo, hi] split at the interior points of `cuts`,
// so that features much narrower than [lo, hi] are not stepped over by the
// first Kronrod panel.
template <class F>
double integrate_split(F&& f, double lo, double hi, std::vector<double> cuts, const QuadratureSpec& q) {
    std::erase_if(cuts, [&](double c) { return !(c > lo && c < hi); });
    std::sort(cuts.begin(), cuts.end());
    double total = 0;
    double left = lo;
    for (double c : cuts) {
        total += integrate(f, left, c, q).value;
        left = c;
    }
    return total + integrate(f, left, hi, q).value;
}

// Equivalent distance at which a decreasing transform crosses `level`.
template <class T>
double crossing(const T& transform, double level) {
    double lo = std::log(1e-8);
    double hi = std::log(1e8);
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (transform(std::exp(mid)) > level ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double intra_midpoint(const LaplaceContext& ctx) {
    const double floor = std::exp((ctx.n_m - 1) * std::log1p(-ctx.p_ss));
    return 0.5 * (1.0 + floor);
}

void require_threshold(double delta, const char* fn) {
    if (!(delta >= 0) || std::isnan(delta)) throw DomainError(std::string(fn) + ": threshold must be nonnegative");
}

}  // namespace

PerformanceModel::PerformanceModel(const LaplaceContext& ctx, const QuadratureSpec& q) : ctx_(ctx), q_(q) {
    ctx_.validate();
    q_.validate();
}

void PerformanceModel::require_star_tables() {
    if (star_inter_) return;
    star_inter_ = std::make_unique<InterTransformTable>(InterferenceKind::star_inter, ctx_, q_);
    star_intra_ = std::make_unique<IntraTransformTable>(InterferenceKind::star_intra, 0.0, ctx_, q_);
    star_marks_ = {crossing([&](double a) { return star_inter_->at(a); }, 0.5),
                   crossing([&](double a) { return star_intra_->at(a); }, intra_midpoint(ctx_))};
}

void PerformanceModel::require_chain_tables() {
    if (chain_inter_) return;
    chain_inter_ = std::make_unique<InterTransformTable>(InterferenceKind::chain_inter, ctx_, q_);
    // Relay distance s_r ~ Rayleigh(sigma^2): 4 x 12-point panels on [0, 10 sigma].
    const double sd = std::sqrt(ctx_.config.scatter_variance);
    const GaussRule rule = composite_gauss_legendre(12, 4, 0.0, kTailSd * sd);
    sr_nodes_ = rule.nodes;
    sr_weights_ = rule.weights;
    chain_intra_.reserve(sr_nodes_.size());
    const double inter_mark = crossing([&](double a) { return chain_inter_->at(a); }, 0.5);
    for (double s_r : sr_nodes_) {
        chain_intra_.emplace_back(InterferenceKind::chain_intra, s_r, ctx_, q_);
        const IntraTransformTable& intra = chain_intra_.back();
        chain_marks_.push_back({inter_mark, crossing([&](double a) { return intra.at(a); }, intra_midpoint(ctx_))});
    }
}

std::vector<double> PerformanceModel::cuts(const std::array<double, 2>& marks, double scale) const {
    // Inter-cluster transform falls off like exp(-c a^2): mark its half point
    // and where it is nearly gone; intra-cluster transform at its midpoint.
    return {marks[0] / scale, 3.0 * marks[0] / scale, marks[1] / scale};
}

double PerformanceModel::link_success_star(double delta) {
    require_threshold(delta, "link_success_star");
    if (delta == 0 || ctx_.p_ss == 0) return 1.0;
    if (std::isinf(delta)) return 0.0;
    require_star_tables();
    const double scale = std::pow(delta, 1.0 / ctx_.config.pathloss_exponent);
    const double variance = 2.0 * ctx_.config.scatter_variance;
    auto f = [&](double r) {
        const double a = scale * r;
        return star_inter_->at(a) * star_intra_->at(a) * rayleigh_pdf(r, variance);
    };
    const double value = integrate_split(f, 0.0, kTailSd * std::sqrt(variance), cuts(star_marks_, scale), q_);
    return std::clamp(value, 0.0, 1.0);
}

double PerformanceModel::link_success_chain_first(double delta) {
    require_threshold(delta, "link_success_chain_first");
    if (delta == 0 || ctx_.p_ss == 0) return 1.0;
    if (std::isinf(delta)) return 0.0;
    require_chain_tables();
    const double scale = std::pow(delta, 1.0 / ctx_.config.pathloss_exponent);
    const double variance = ctx_.config.scatter_variance;
    const double sd = std::sqrt(variance);
    double total = 0;
    for (std::size_t j = 0; j < sr_nodes_.size(); ++j) {
        const double s_r = sr_nodes_[j];
        const IntraTransformTable& intra = chain_intra_[j];
        auto f = [&](double r2) {
            const double a = scale * r2;
            return chain_inter_->at(a) * intra.at(a) * rician_pdf(r2, s_r, variance);
        };
        const double lo = std::max(0.0, s_r - kTailSd * sd);
        const double inner = integrate_split(f, lo, s_r + kTailSd * sd, cuts(chain_marks_[j], scale), q_);
        total += sr_weights_[j] * rayleigh_pdf(s_r, variance) * inner;
    }
    return std::clamp(total, 0.0, 1.0);
}

double PerformanceModel::outage_star(double delta) {
    const double s = link_success_star(delta);
    return 1.0 - s * s;
}

double PerformanceModel::outage_chain_uncorrelated(double delta) {
    return 1.0 - link_success_star(delta) * link_success_chain_first(delta);
}

double PerformanceModel::throughput_cdf_star(double rate) {
    if (!(rate >= 0)) throw DomainError("throughput_cdf_star: rate must be nonnegative");
    if (std::isinf(rate)) return 1.0;
    return 1.0 - link_success_star(threshold_for_rate(rate, 0.5 * ctx_.config.d2d_bandwidth_hz()));
}

template <class Success>
double PerformanceModel::rate_integral(Success&& success, double bandwidth, double* remainder) {
    auto f = [&](double rate) { return success(threshold_for_rate(rate, bandwidth)); };
    double total = 0;
    double lo = 0;
    double width = 0.5 * bandwidth;
    double s_prev = f(0.0);
    while (lo < kMaxRateFactor * bandwidth) {
        const double hi = lo + width;
        // Panels deep in the tail only need accuracy relative to the whole
        // integral, which is of order bandwidth * S(lo) from here on.
        QuadratureSpec panel = q_;
        panel.absolute_tolerance = std::max(q_.absolute_tolerance, 1e-2 * q_.relative_tolerance * bandwidth * s_prev);
        total += integrate(f, lo, hi, panel).value;
        const double s_hi = f(hi);
        if (s_hi < kSurvivalCutoff) {
            // Geometric-tail remainder: S decays at least as fast as over the last panel.
            double rest = 0;
            if (s_hi > 0) {
                const double rate_of_decay = std::log(s_prev / s_hi) / width;
                rest = rate_of_decay > 0 ? s_hi / rate_of_decay : s_hi * kMaxRateFactor * bandwidth;
            }
            if (remainder) *remainder = rest;
            return total;
        }
        s_prev = s_hi;
        lo = hi;
        width = std::min(1.3 * width, 4.0 * bandwidth);
    }
    std::ostringstream msg;
    msg << "rate integral is not integrable: success probability " << s_prev << " at rate " << lo
        << " bit/s (interference- or noise-free regime)";
    throw IntegrationError(msg.str(), total, std::numeric_limits<double>::infinity());
}

double PerformanceModel::expected_throughput_star(double* remainder) {
    return rate_integral([&](double d) { return link_success_star(d); }, 0.5 * ctx_.config.d2d_bandwidth_hz(),
                         remainder);
}

double PerformanceModel::expected_throughput_chain_first(double* remainder) {
    if (!chain_first_) {
        double rest = 0;
        const double value = rate_integral([&](double d) { return link_success_chain_first(d); },
                                           ctx_.config.d2d_bandwidth_hz(), &rest);
        chain_first_ = {value, rest};
    }
    if (remainder) *remainder = chain_first_->second;
    return chain_first_->first;
}

double PerformanceModel::expected_throughput_chain_second(double* remainder) {
    // The j -> k hop is evaluated with the star-motif transforms and link
    // distance law, at full bandwidth w1, then halved with the first hop's
    // rate by the two-hop min rule.
    double rest_second = 0;
    double rest_first = 0;
    const double second = rate_integral([&](double d) { return link_success_star(d); },
                                        ctx_.config.d2d_bandwidth_hz(), &rest_second);
    const double first = expected_throughput_chain_first(&rest_first);
    if (remainder) *remainder = 0.5 * std::max(rest_second, rest_first);
    return 0.5 * std::min(second, first);
}

double PerformanceModel::seeding_success(double delta) {
    require_threshold(delta, "seeding_success");
    if (delta == 0) return 1.0;
    const double k0 = delta * ctx_.config.seeding_noise_w() / ctx_.config.bs_power_w();
    if (std::isinf(k0)) return 0.0;
    const double alpha = ctx_.config.pathloss_exponent;
    const double variance = ctx_.config.scatter_variance;
    const double sd = std::sqrt(variance);
    const double half = ctx_.config.region_half_width_m;

    QuadratureSpec inner = q_;
    inner.relative_tolerance = std::max(q_.relative_tolerance * 1e-2, 1e-13);
    inner.absolute_tolerance = std::numeric_limits<double>::min();
    // Distance at which the noise term k0 r^alpha reaches one.
    const double knee = std::pow(k0, -1.0 / alpha);
    auto given_z = [&](double z) {
        auto g = [&](double r3) { return std::exp(-k0 * std::pow(r3, alpha)) * rician_pdf(r3, z, variance); };
        return integrate_split(g, std::max(0.0, z - kTailSd * sd), z + kTailSd * sd, {knee, 2.0 * knee}, inner);
    };
    auto outer = [&](double z) { return bs_distance_pdf(z, half) * given_z(z); };
    QuadratureSpec outer_spec = q_;
    outer_spec.absolute_tolerance = std::numeric_limits<double>::min();
    const double value =
        integrate_split(outer, 0.0, std::numbers::sqrt2 * half, {half, knee, 2.0 * knee}, outer_spec);
    return std::clamp(value, 0.0, 1.0);
}

double PerformanceModel::expected_throughput_seeding(double* remainder) {
    return rate_integral([&](double d) { return seeding_success(d); }, ctx_.config.cellular_bandwidth_hz(),
                         remainder);
}

double link_success_star(double delta, const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).link_success_star(delta);
}
double link_success_chain_first(double delta, const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).link_success_chain_first(delta);
}
double outage_star(double delta, const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).outage_star(delta);
}
double outage_chain_uncorrelated(double delta, const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).outage_chain_uncorrelated(delta);
}
double throughput_cdf_star(double rate, const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).throughput_cdf_star(rate);
}
double expected_throughput_star(const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).expected_throughput_star();
}
double expected_throughput_chain_first(const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).expected_throughput_chain_first();
}
double expected_throughput_chain_second(const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).expected_throughput_chain_second();
}
double expected_throughput_seeding(const LaplaceContext& ctx, const QuadratureSpec& q) {
    return PerformanceModel(ctx, q).expected_throughput_seeding();
}

double weighted_average_throughput(const Occurrences& occ, int n_devices, double e_star, double e_chain_first,
                                   double e_chain_second, double e_seeding) {
    if (n_devices < 1) throw DomainError("weighted_average_throughput: N must be positive");
    return (2.0 * occ.c_o_star * e_star + occ.c_o_chain * e_chain_first + occ.c_o_chain * e_chain_second +
            (occ.c_o + 1.0) * e_seeding) /
           n_devices;
}

ThroughputReport average_throughput_per_device(const LaplaceContext& ctx, const QuadratureSpec& q,
                                               bool correlated_outage) {
    PerformanceModel model(ctx, q);
    const NetworkConfig& c = ctx.config;
    const Occurrences occ = expected_occurrences(c.devices_per_cluster, ctx.p_ss, c.star_fraction);

    ThroughputReport r;
    r.e_star = model.expected_throughput_star(&r.truncation.star);
    r.e_chain_first = model.expected_throughput_chain_first(&r.truncation.chain_first);
    r.e_chain_second = model.expected_throughput_chain_second(&r.truncation.chain_second);
    r.e_seeding = model.expected_throughput_seeding(&r.truncation.seeding);
    r.e_avg = weighted_average_throughput(occ, c.devices_per_cluster, r.e_star, r.e_chain_first, r.e_chain_second,
                                          r.e_seeding);

    const double delta = c.sir_threshold_linear();
    r.outage_star = model.outage_star(delta);
    r.outage_chain = model.outage_chain_uncorrelated(delta);
    if (correlated_outage) r.outage_chain_correlated = outage_chain_correlated(delta, ctx, q);

    try {
        MotifStatistics s;
        s.c_o_star = occ.c_o_star;
        s.c_o_chain = occ.c_o_chain;
        const BaselineStats b = baseline_stats(ctx.p_ss, ctx.n_m, c.star_fraction);
        s.c_r_star = b.c_r_star;
        s.c_r_chain = b.c_r_chain;
        s.eps_star = b.eps_star;
        s.eps_chain = b.eps_chain;
        std::tie(r.z_star, r.z_chain) = z_scores(s);
    } catch (const InvalidRegimeError&) {
    } catch (const UndefinedZError&) {
    }
    return r;
}

}  // namespace d2dmotif
