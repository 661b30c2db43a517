#include "d2dmotif/interference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "d2dmotif/motifstats.hpp"
#include "d2dmotif/pointprocess.hpp"

namespace d2dmotif {

namespace {

constexpr double kTailSd = 10.0;  // Gaussian mass beyond 10 sd is below 1e-21

// Inner integrals feed an outer adaptive rule, so they are resolved two
// orders tighter and purely relatively.
QuadratureSpec inner_spec(const QuadratureSpec& q) {
    QuadratureSpec inner = q;
    inner.relative_tolerance = std::max(q.relative_tolerance * 1e-2, 1e-13);
    inner.absolute_tolerance = std::numeric_limits<double>::min();
    return inner;
}

// 1 - E[exp(-s P_t h v^-alpha)] for a unit-mean exponential fade h, i.e.
// 1 - 1/(1 + (a/v)^alpha), in a form that stays accurate when it is small.
inline double absorb(double v, double a, double alpha) {
    return 1.0 / (1.0 + std::pow(v / a, alpha));
}

// int f(v) absorb(v) dv over [lo, hi], splitting at v = a where the weight turns.
template <class Density>
double weighted_mass(Density&& f, double lo, double hi, double a, double alpha, const QuadratureSpec& q) {
    auto g = [&](double v) { return v > 0 ? f(v) * absorb(v, a, alpha) : 0.0; };
    if (a > lo && a < hi) return integrate(g, lo, a, q).value + integrate(g, a, hi, q).value;
    return integrate(g, lo, hi, q).value;
}

double rician_mass(double t, double variance, double a, double alpha, const QuadratureSpec& q) {
    const double sd = std::sqrt(variance);
    const double lo = std::max(0.0, t - kTailSd * sd);
    const double hi = t + kTailSd * sd;
    return weighted_mass([&](double v) { return rician_pdf(v, t, variance); }, lo, hi, a, alpha, q);
}

double rayleigh_mass(double variance, double a, double alpha, const QuadratureSpec& q) {
    const double hi = kTailSd * std::sqrt(variance);
    return weighted_mass([&](double v) { return rayleigh_pdf(v, variance); }, 0.0, hi, a, alpha, q);
}

void require_distance(double a, const char* fn) {
    if (!std::isfinite(a) || a < 0) throw DomainError(std::string(fn) + ": argument must be finite and nonnegative");
}

double equivalent_distance(double s, const LaplaceContext& ctx, const char* fn) {
    if (!std::isfinite(s) || s < 0) throw DomainError(std::string(fn) + ": s must be finite and nonnegative");
    return std::pow(s * ctx.transmit_power_w, 1.0 / ctx.config.pathloss_exponent);
}

double intra_from_mass(double mass, const LaplaceContext& ctx) {
    return std::exp((ctx.n_m - 1) * std::log1p(-ctx.p_ss * mass));
}

}  // namespace

const char* to_string(InterferenceKind kind) {
    switch (kind) {
        case InterferenceKind::star_intra: return "star_intra";
        case InterferenceKind::star_inter: return "star_inter";
        case InterferenceKind::chain_intra: return "chain_intra";
        case InterferenceKind::chain_inter: return "chain_inter";
    }
    return "unknown";
}

LaplaceContext LaplaceContext::from_config(const NetworkConfig& config, const SeriesControl& control) {
    config.validate();
    if (config.devices_per_cluster < 3)
        throw NoMotifError("LaplaceContext: N = " + std::to_string(config.devices_per_cluster) +
                           " devices per cluster cannot hold a three-node motif");
    LaplaceContext ctx;
    ctx.config = config;
    ctx.p_ss = joint_motif_probability(config.max_link_distance_m, config.scatter_variance, control);
    ctx.n_m = config.motifs_per_cluster();
    ctx.transmit_power_w = config.device_power_w();
    return ctx;
}

void LaplaceContext::validate() const {
    config.validate();
    if (!(p_ss >= 0 && p_ss <= 1)) throw DomainError("LaplaceContext: p_ss must lie in [0, 1]");
    if (n_m < 1) throw NoMotifError("LaplaceContext: N_m must be at least one");
    if (!(transmit_power_w > 0)) throw DomainError("LaplaceContext: transmit power must be positive");
}

double star_intra_at(double a, const LaplaceContext& ctx, const QuadratureSpec& q) {
    require_distance(a, "star_intra_at");
    if (a == 0 || ctx.p_ss == 0 || ctx.n_m == 1) return 1.0;
    const double mass = rayleigh_mass(2.0 * ctx.config.scatter_variance, a, ctx.config.pathloss_exponent, inner_spec(q));
    return intra_from_mass(mass, ctx);
}

double chain_intra_at(double a, double s_r, const LaplaceContext& ctx, const QuadratureSpec& q) {
    require_distance(a, "chain_intra_at");
    if (!std::isfinite(s_r) || s_r < 0) throw DomainError("chain_intra_at: s_r must be finite and nonnegative");
    if (a == 0 || ctx.p_ss == 0 || ctx.n_m == 1) return 1.0;
    const double mass = rician_mass(s_r, ctx.config.scatter_variance, a, ctx.config.pathloss_exponent, inner_spec(q));
    return intra_from_mass(mass, ctx);
}

double inter_exponent(InterferenceKind kind, double a, const LaplaceContext& ctx, const QuadratureSpec& q) {
    require_distance(a, "inter_exponent");
    double variance = 0;
    switch (kind) {
        case InterferenceKind::star_inter: variance = 3.0 * ctx.config.scatter_variance; break;
        case InterferenceKind::chain_inter: variance = ctx.config.scatter_variance; break;
        default: throw DomainError("inter_exponent: kind must be star_inter or chain_inter");
    }
    if (a == 0 || ctx.p_ss == 0) return 0.0;

    const double alpha = ctx.config.pathloss_exponent;
    const double p = ctx.p_ss;
    const int n = ctx.n_m;
    const QuadratureSpec inner = inner_spec(q);
    auto mass = [&](double t) { return rician_mass(t, variance, a, alpha, inner); };
    // t (1 - (1 - p h(t))^{N_m})
    auto integrand = [&](double t) { return -t * std::expm1(n * std::log1p(-p * mass(t))); };

    const double width = 0.25 * std::max(a, std::sqrt(variance));
    QuadratureSpec outer = q;
    outer.absolute_tolerance = std::numeric_limits<double>::min();
    double end = 0;
    const QuadResult total = integrate_panels(integrand, 0.0, width, outer, q.absolute_tolerance, &end);
    const double tail = n * p * mass(end);
    if (tail > 1e-6)
        throw IntegrationError("inter_exponent: interferer activity has not vanished at truncation", total.value, tail);
    return total.value;
}

double laplace_star_intra(double s, const LaplaceContext& ctx, const QuadratureSpec& q) {
    ctx.validate();
    return star_intra_at(equivalent_distance(s, ctx, "laplace_star_intra"), ctx, q);
}

double laplace_chain_intra(double s, double s_r, const LaplaceContext& ctx, const QuadratureSpec& q) {
    ctx.validate();
    return chain_intra_at(equivalent_distance(s, ctx, "laplace_chain_intra"), s_r, ctx, q);
}

double laplace_star_inter(double s, const LaplaceContext& ctx, const QuadratureSpec& q) {
    ctx.validate();
    const double a = equivalent_distance(s, ctx, "laplace_star_inter");
    const double x = inter_exponent(InterferenceKind::star_inter, a, ctx, q);
    return std::exp(-2.0 * std::numbers::pi * ctx.config.parent_density_per_m2() * x);
}

double laplace_chain_inter(double s, const LaplaceContext& ctx, const QuadratureSpec& q) {
    ctx.validate();
    const double a = equivalent_distance(s, ctx, "laplace_chain_inter");
    const double x = inter_exponent(InterferenceKind::chain_inter, a, ctx, q);
    return std::exp(-2.0 * std::numbers::pi * ctx.config.parent_density_per_m2() * x);
}

InterTransformTable::InterTransformTable(InterferenceKind kind, const LaplaceContext& ctx, const QuadratureSpec& q,
                                         double log_step, double a_min, double a_max) {
    ctx.validate();
    if (!(log_step > 0) || !(a_min > 0) || !(a_max > a_min))
        throw DomainError("InterTransformTable: invalid grid");
    log_min_ = std::log(a_min);
    const auto count = static_cast<std::size_t>(std::ceil((std::log(a_max) - log_min_) / log_step)) + 1;
    log_max_ = log_min_ + log_step * static_cast<double>(count - 1);

    std::vector<double> ratios(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = std::exp(log_min_ + log_step * static_cast<double>(i));
        ratios[i] = inter_exponent(kind, a, ctx, q) / (a * a);
    }
    ratio_low_ = ratios.front();
    ratio_high_ = ratios.back();
    spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(ratios.data(), ratios.size(), log_min_,
                                                                           log_step);
    density_ = ctx.config.parent_density_per_m2();
    alpha_ = ctx.config.pathloss_exponent;
    transmit_power_w_ = ctx.transmit_power_w;
}

double InterTransformTable::ratio(double log_a) const {
    if (log_a <= log_min_) return ratio_low_;
    if (log_a >= log_max_) return ratio_high_;
    return std::max(0.0, spline_(log_a));
}

double InterTransformTable::at(double a) const {
    require_distance(a, "InterTransformTable::at");
    if (a == 0) return 1.0;
    return std::exp(-2.0 * std::numbers::pi * density_ * ratio(std::log(a)) * a * a);
}

IntraTransformTable::IntraTransformTable(InterferenceKind kind, double s_r, const LaplaceContext& ctx,
                                         const QuadratureSpec& q, double log_step, double a_min, double a_max) {
    ctx.validate();
    if (kind != InterferenceKind::star_intra && kind != InterferenceKind::chain_intra)
        throw DomainError("IntraTransformTable: kind must be star_intra or chain_intra");
    if (!(log_step > 0) || !(a_min > 0) || !(a_max > a_min))
        throw DomainError("IntraTransformTable: invalid grid");
    if (!std::isfinite(s_r) || s_r < 0) throw DomainError("IntraTransformTable: s_r must be finite and nonnegative");
    p_ss_ = ctx.p_ss;
    n_m_ = ctx.n_m;
    trivial_ = ctx.p_ss == 0 || ctx.n_m == 1;
    if (trivial_) return;

    log_min_ = std::log(a_min);
    const auto count = static_cast<std::size_t>(std::ceil((std::log(a_max) - log_min_) / log_step)) + 1;
    log_max_ = log_min_ + log_step * static_cast<double>(count - 1);
    const double alpha = ctx.config.pathloss_exponent;
    const QuadratureSpec inner = inner_spec(q);

    std::vector<double> log_h(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = std::exp(log_min_ + log_step * static_cast<double>(i));
        const double h = kind == InterferenceKind::star_intra
                             ? rayleigh_mass(2.0 * ctx.config.scatter_variance, a, alpha, inner)
                             : rician_mass(s_r, ctx.config.scatter_variance, a, alpha, inner);
        log_h[i] = std::log(std::max(h, 1e-300));
    }
    log_h_low_ = log_h.front();
    log_h_high_ = log_h.back();
    spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(log_h.data(), log_h.size(), log_min_,
                                                                           log_step);
}

double IntraTransformTable::at(double a) const {
    require_distance(a, "IntraTransformTable::at");
    if (trivial_ || a == 0) return 1.0;
    const double la = std::log(a);
    double log_h;
    if (la <= log_min_) log_h = log_h_low_ + 2.0 * (la - log_min_);
    else if (la >= log_max_) log_h = log_h_high_;
    else log_h = spline_(la);
    const double h = std::min(1.0, std::exp(log_h));
    return std::exp((n_m_ - 1) * std::log1p(-p_ss_ * h));
}

double InterTransformTable::operator()(double s) const {
    if (!std::isfinite(s) || s < 0) throw DomainError("InterTransformTable: s must be finite and nonnegative");
    return at(std::pow(s * transmit_power_w_, 1.0 / alpha_));
}

}  // namespace d2dmotif
