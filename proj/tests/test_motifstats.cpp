#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "d2dmotif/errors.hpp"
#include "d2dmotif/motifstats.hpp"
#include "d2dmotif/pointprocess.hpp"

using namespace d2dmotif;

namespace {

// Independent route to the joint probability: given the hub at distance u
// from the cluster centre, each peer is within s_th with probability
// F(u) = int_0^{s_th} Rician(d; u, v) dd, the two peers independently, so
// P = E_u[F(u)^2] with u ~ Rayleigh(v). Nested Boost Gauss-Kronrod.
double joint_probability_oracle(double s_th, double v) {
    using boost::math::quadrature::gauss_kronrod;
    const double sd = std::sqrt(v);
    auto inner = [&](double u) {
        return gauss_kronrod<double, 61>::integrate([&](double d) { return rician_pdf(d, u, v); }, 0.0, s_th, 15,
                                                     1e-13);
    };
    auto outer = [&](double u) {
        const double f = inner(u);
        return f * f * rayleigh_pdf(u, v);
    };
    return gauss_kronrod<double, 61>::integrate(outer, 0.0, 12 * sd, 15, 1e-12);
}

}  // namespace

TEST_CASE("joint probability against the nested-integral oracle") {
    for (double v : {50.0, 100.0, 150.0})
        for (double s : {2.0, 10.0, 20.0, 40.0, 60.0}) {
            INFO("s_th = " << s << ", variance = " << v);
            CHECK(joint_motif_probability(s, v) == doctest::Approx(joint_probability_oracle(s, v)).epsilon(1e-9));
        }
}

TEST_CASE("joint probability frozen values") {
    // From the nested-integral oracle above.
    CHECK(joint_motif_probability(10, 100) == doctest::Approx(0.0606403476).epsilon(1e-8));
    CHECK(joint_motif_probability(20, 100) == doctest::Approx(0.435589738).epsilon(1e-8));
    CHECK(joint_motif_probability(30, 100) == doctest::Approx(0.814593579).epsilon(1e-8));
    CHECK(joint_motif_probability(20, 50) == doctest::Approx(0.766122663).epsilon(1e-8));
    CHECK(joint_motif_probability(20, 150) == doctest::Approx(0.269630409).epsilon(1e-8));
}

TEST_CASE("joint probability limits and shape") {
    CHECK(joint_motif_probability(0.0, 100.0) == 0.0);
    CHECK(joint_motif_probability(500.0, 100.0) == doctest::Approx(1.0).epsilon(1e-12));
    double last = 0;
    for (double s = 1; s <= 80; s += 1) {
        const double p = joint_motif_probability(s, 100.0);
        CHECK(p > last);
        CHECK(p <= 1.0);
        last = p;
    }
    // Only s_th^2 / sigma^2 matters.
    CHECK(joint_motif_probability(20.0, 100.0) == doctest::Approx(joint_motif_probability(40.0, 400.0)).epsilon(1e-13));
}

TEST_CASE("joint probability errors") {
    CHECK_THROWS_AS(joint_motif_probability(-1.0, 100.0), DomainError);
    CHECK_THROWS_AS(joint_motif_probability(10.0, 0.0), DomainError);
    SeriesControl tight;
    tight.max_terms = 10;
    CHECK_THROWS_AS(joint_motif_probability(60.0, 10.0, tight), ConvergenceError);
}

TEST_CASE("expected occurrences") {
    const Occurrences o = expected_occurrences(50, 0.3, 1.0 / 3.0);
    CHECK(o.c_o == doctest::Approx(16 * 0.3));
    CHECK(o.c_o_star == doctest::Approx(1.6));
    CHECK(o.c_o_chain == doctest::Approx(3.2));
    CHECK(expected_occurrences(3, 1.0, 0.5).c_o == doctest::Approx(1.0));
    CHECK(expected_occurrences(5, 0.5, 0.5).c_o == doctest::Approx(0.5));
    CHECK_THROWS_AS(expected_occurrences(2, 0.5, 0.5), NoMotifError);
    CHECK_THROWS_AS(expected_occurrences(10, 1.5, 0.5), DomainError);
}

TEST_CASE("baseline statistics") {
    // P_r = 4 p / (N_m - 1); c_r = theta N_m 3 P_r^2 (1 - P_r) with the chain
    // share 1 - theta; eps = sqrt(c_r (1 - c_r)).
    CHECK(baseline_link_probability(0.45, 16) == doctest::Approx(0.12));
    const BaselineStats b = baseline_stats(0.45, 16, 1.0 / 3.0);
    CHECK(b.c_r_star == doctest::Approx(0.202752).epsilon(1e-12));
    CHECK(b.c_r_chain == doctest::Approx(0.405504).epsilon(1e-12));
    CHECK(b.eps_star == doctest::Approx(std::sqrt(0.202752 * (1 - 0.202752))).epsilon(1e-12));
    CHECK(b.eps_chain == doctest::Approx(std::sqrt(0.405504 * (1 - 0.405504))).epsilon(1e-12));
}

TEST_CASE("baseline validity range") {
    CHECK_THROWS_AS(baseline_link_probability(0.5, 1), InvalidRegimeError);
    CHECK_THROWS_AS(baseline_link_probability(0.9, 3), InvalidRegimeError);
    // c_r above one makes the deviation imaginary.
    CHECK_THROWS_AS(baseline_stats(0.8, 16, 1.0 / 3.0), InvalidRegimeError);
    CHECK_NOTHROW(baseline_stats(0.7, 16, 1.0 / 3.0));
}

TEST_CASE("Z-scores") {
    MotifStatistics s;
    s.c_o_star = 1.2;
    s.c_o_chain = 2.4;
    s.c_r_star = 0.2;
    s.c_r_chain = 0.4;
    s.eps_star = 0.4;
    s.eps_chain = 0.5;
    const auto [zs, zc] = z_scores(s);
    CHECK(zs == doctest::Approx(2.5));
    CHECK(zc == doctest::Approx(4.0));
    s.eps_star = 0;
    CHECK_THROWS_AS(z_scores(s), UndefinedZError);
}

TEST_CASE("full statistics at N = 50, s_th = 15") {
    NetworkConfig c;
    c.devices_per_cluster = 50;
    c.max_link_distance_m = 15;
    const double variances[] = {50, 75, 100, 125, 150};
    // Frozen from the closed forms above evaluated at p_ss from the oracle.
    const double z_star[] = {5.587, 5.175, 5.054, 5.011, 4.995};
    const double z_chain[] = {9.533, 7.774, 7.340, 7.185, 7.119};
    for (int i = 0; i < 5; ++i) {
        c.scatter_variance = variances[i];
        const MotifStatistics m = motif_statistics(c);
        CHECK(m.p_ss == doctest::Approx(joint_probability_oracle(15, variances[i])).epsilon(1e-9));
        CHECK(m.z_star == doctest::Approx(z_star[i]).epsilon(2e-4));
        CHECK(m.z_chain == doctest::Approx(z_chain[i]).epsilon(2e-4));
        CHECK(m.c_o == doctest::Approx(m.c_o_star + m.c_o_chain));
    }
}

TEST_CASE("statistics error classes") {
    NetworkConfig c;
    c.devices_per_cluster = 2;
    CHECK_THROWS_AS(motif_statistics(c), NoMotifError);
    c.devices_per_cluster = 6;
    c.max_link_distance_m = 20;
    CHECK_THROWS_AS(motif_statistics(c), InvalidRegimeError);
    c.devices_per_cluster = 50;
    c.max_link_distance_m = 0;
    CHECK_THROWS_AS(motif_statistics(c), UndefinedZError);
}
