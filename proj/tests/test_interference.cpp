#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "d2dmotif/interference.hpp"
#include "d2dmotif/pointprocess.hpp"
#include "d2dmotif/simulator.hpp"

using namespace d2dmotif;
using boost::math::quadrature::gauss_kronrod;

namespace {

NetworkConfig reference_config(double s_th = 40) {
    NetworkConfig c;
    c.devices_per_cluster = 25;
    c.scatter_variance = 100;
    c.parent_density = 20;
    c.max_link_distance_m = s_th;
    return c;
}

double absorb(double v, double a, double alpha) { return 1.0 / (1.0 + std::pow(v / a, alpha)); }

// Thinned interferer mass at distance law `pdf` on [lo, hi].
template <class Pdf>
double mass(Pdf pdf, double lo, double hi, double a, double alpha) {
    auto f = [&](double v) { return pdf(v) * absorb(v, a, alpha); };
    const double cut = std::clamp(a, lo, hi);
    return gauss_kronrod<double, 61>::integrate(f, lo, cut, 20, 1e-13) +
           gauss_kronrod<double, 61>::integrate(f, cut, hi, 20, 1e-13);
}

double a_of(double s, const LaplaceContext& ctx) {
    return std::pow(s * ctx.transmit_power_w, 1.0 / ctx.config.pathloss_exponent);
}

double star_intra_oracle(double s, const LaplaceContext& ctx) {
    const double v = 2 * ctx.config.scatter_variance;
    const double h = mass([&](double d) { return rayleigh_pdf(d, v); }, 0.0, 14 * std::sqrt(v), a_of(s, ctx),
                          ctx.config.pathloss_exponent);
    return std::pow(1 - ctx.p_ss * h, ctx.n_m - 1);
}

double chain_intra_oracle(double s, double s_r, const LaplaceContext& ctx) {
    const double v = ctx.config.scatter_variance;
    const double sd = std::sqrt(v);
    const double h = mass([&](double d) { return rician_pdf(d, s_r, v); }, std::max(0.0, s_r - 14 * sd),
                          s_r + 14 * sd, a_of(s, ctx), ctx.config.pathloss_exponent);
    return std::pow(1 - ctx.p_ss * h, ctx.n_m - 1);
}

// exp(-2 pi lambda int_0^inf t (1 - (1 - p h(t))^N_m) dt), the integral split
// at R with the far part replaced by its leading term
// N_m p a^alpha R^{2 - alpha} / (alpha - 2).
double inter_oracle(double s, double variance, const LaplaceContext& ctx) {
    const double a = a_of(s, ctx);
    const double alpha = ctx.config.pathloss_exponent;
    const double sd = std::sqrt(variance);
    const double p = ctx.p_ss;
    const int n = ctx.n_m;
    auto body = [&](double t) {
        const double h = mass([&](double d) { return rician_pdf(d, t, variance); }, std::max(0.0, t - 14 * sd),
                              t + 14 * sd, a, alpha);
        return t * -std::expm1(n * std::log1p(-p * h));
    };
    const double r = 200 * std::max(a, sd);
    double near = 0;
    for (double lo = 0, w = 0.25 * std::max(a, sd); lo < r; lo += w, w *= 1.5)
        near += gauss_kronrod<double, 31>::integrate(body, lo, std::min(lo + w, r), 10, 1e-11);
    const double far = n * p * std::pow(a, alpha) * std::pow(r, 2 - alpha) / (alpha - 2);
    return std::exp(-2 * std::numbers::pi * ctx.config.parent_density_per_m2() * (near + far));
}

}  // namespace

TEST_CASE("intra-cluster transforms against direct quadrature") {
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config());
    for (double r : {2.0, 10.0, 20.0, 45.0}) {
        const double s = std::pow(r, 4) / ctx.transmit_power_w;
        INFO("r = " << r);
        CHECK(laplace_star_intra(s, ctx) == doctest::Approx(star_intra_oracle(s, ctx)).epsilon(1e-7));
        for (double s_r : {0.0, 8.0, 30.0})
            CHECK(laplace_chain_intra(s, s_r, ctx) == doctest::Approx(chain_intra_oracle(s, s_r, ctx)).epsilon(1e-7));
    }
}

TEST_CASE("inter-cluster transforms against direct quadrature") {
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config());
    for (double r : {5.0, 20.0, 60.0}) {
        const double s = std::pow(r, 4) / ctx.transmit_power_w;
        INFO("r = " << r);
        CHECK(laplace_star_inter(s, ctx) ==
              doctest::Approx(inter_oracle(s, 3 * ctx.config.scatter_variance, ctx)).epsilon(1e-6));
        CHECK(laplace_chain_inter(s, ctx) ==
              doctest::Approx(inter_oracle(s, ctx.config.scatter_variance, ctx)).epsilon(1e-6));
    }
}

TEST_CASE("frozen transform values at the reference setting") {
    // s_th = 20, link length 20 m at 0 dB; values from the oracles above.
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config(20));
    const double s = std::pow(20.0, 4) / ctx.transmit_power_w;
    CHECK(laplace_star_intra(s, ctx) == doctest::Approx(0.10974).epsilon(1e-4));
    CHECK(laplace_star_inter(s, ctx) == doctest::Approx(0.90439).epsilon(1e-4));
    CHECK(laplace_chain_intra(s, 15.0, ctx) == doctest::Approx(0.13022).epsilon(1e-4));
    CHECK(laplace_chain_inter(s, ctx) == doctest::Approx(0.91565).epsilon(1e-4));
}

TEST_CASE("transforms equal one at s = 0 and decrease strictly") {
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config(20));
    CHECK(laplace_star_intra(0.0, ctx) == 1.0);
    CHECK(laplace_star_inter(0.0, ctx) == 1.0);
    CHECK(laplace_chain_intra(0.0, 10.0, ctx) == 1.0);
    CHECK(laplace_chain_inter(0.0, ctx) == 1.0);
    double last[4] = {1, 1, 1, 1};
    for (double r : {0.5, 1.0, 3.0, 10.0, 30.0, 100.0}) {
        const double s = std::pow(r, 4) / ctx.transmit_power_w;
        const double now[4] = {laplace_star_intra(s, ctx), laplace_star_inter(s, ctx),
                               laplace_chain_intra(s, 10.0, ctx), laplace_chain_inter(s, ctx)};
        for (int k = 0; k < 4; ++k) {
            CHECK(now[k] < last[k]);
            CHECK(now[k] > 0.0);
            last[k] = now[k];
        }
    }
}

TEST_CASE("no active interferers") {
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config(0));
    CHECK(ctx.p_ss == 0.0);
    const double s = 1e6;
    CHECK(laplace_star_intra(s, ctx) == 1.0);
    CHECK(laplace_star_inter(s, ctx) == 1.0);
    CHECK(laplace_chain_intra(s, 5.0, ctx) == 1.0);
    CHECK(laplace_chain_inter(s, ctx) == 1.0);
}

TEST_CASE("tabulated transforms track direct evaluation") {
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config(20));
    const QuadratureSpec q;
    for (InterferenceKind kind : {InterferenceKind::star_inter, InterferenceKind::chain_inter}) {
        const InterTransformTable table(kind, ctx, q);
        for (double a : {0.013, 0.5, 3.7, 12.0, 40.0, 333.0}) {
            const double direct =
                std::exp(-2 * std::numbers::pi * ctx.config.parent_density_per_m2() * inter_exponent(kind, a, ctx, q));
            INFO(to_string(kind) << " a = " << a);
            CHECK(table.at(a) == doctest::Approx(direct).epsilon(1e-6));
        }
    }
    const IntraTransformTable star(InterferenceKind::star_intra, 0.0, ctx, q);
    const IntraTransformTable chain(InterferenceKind::chain_intra, 12.0, ctx, q);
    for (double a : {0.02, 0.9, 6.0, 25.0, 90.0}) {
        INFO("a = " << a);
        CHECK(star.at(a) == doctest::Approx(star_intra_at(a, ctx, q)).epsilon(1e-6));
        CHECK(chain.at(a) == doctest::Approx(chain_intra_at(a, 12.0, ctx, q)).epsilon(1e-6));
    }
}

TEST_CASE("Monte Carlo transform brackets the quadrature value") {
    const NetworkConfig c = reference_config(20);
    const LaplaceContext ctx = LaplaceContext::from_config(c);
    const double s = std::pow(15.0, 4) / ctx.transmit_power_w;
    const Estimate star = empirical_laplace(s, InterferenceKind::star_intra, c, 50'000, 11);
    CHECK(std::abs(star.value - laplace_star_intra(s, ctx)) <= 3 * star.standard_error);
    const Estimate chain = empirical_laplace(s, InterferenceKind::chain_intra, c, 50'000, 12, 10.0);
    CHECK(std::abs(chain.value - laplace_chain_intra(s, 10.0, ctx)) <= 3 * chain.standard_error);
}

TEST_CASE("argument checks") {
    const LaplaceContext ctx = LaplaceContext::from_config(reference_config());
    CHECK_THROWS_AS(laplace_star_intra(-1.0, ctx), DomainError);
    CHECK_THROWS_AS(laplace_chain_intra(1.0, -2.0, ctx), DomainError);
    LaplaceContext bad = ctx;
    bad.p_ss = 1.5;
    CHECK_THROWS_AS(laplace_star_inter(1.0, bad), DomainError);
}
