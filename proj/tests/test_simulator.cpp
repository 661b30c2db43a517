#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "d2dmotif/motifstats.hpp"
#include "d2dmotif/quadrature.hpp"
#include "d2dmotif/simulator.hpp"

using namespace d2dmotif;

namespace {

NetworkConfig small(double s_th = 40) {
    NetworkConfig c;
    c.devices_per_cluster = 25;
    c.scatter_variance = 100;
    c.parent_density = 20;
    c.max_link_distance_m = s_th;
    c.region_half_width_m = 200;
    c.guard_margin_m = 100;
    return c;
}

struct Counts {
    long groups = 0, star = 0, chain = 0;
};

Counts count(const std::vector<MotifGroup>& groups) {
    Counts k;
    for (const auto& g : groups) {
        ++k.groups;
        if (g.kind == MotifKind::star) ++k.star;
        if (g.kind == MotifKind::chain) ++k.chain;
    }
    return k;
}

}  // namespace

TEST_CASE("parents fill the guard-expanded square") {
    const NetworkConfig c = small();
    const double side = 2 * (c.region_half_width_m + c.guard_margin_m);
    const double mean = c.parent_density_per_m2() * side * side;
    double total = 0;
    const int draws = 200;
    for (int i = 0; i < draws; ++i) {
        const NetworkRealization r = sample_tcp(c, c.guard_margin_m, 1000 + i);
        total += r.cluster_count();
        const double edge = c.region_half_width_m + c.guard_margin_m;
        CHECK(r.parent_points.cwiseAbs().maxCoeff() <= edge);
        CHECK(r.offsets.size() == static_cast<std::size_t>(r.cluster_count()));
    }
    // Poisson: sd of the mean is sqrt(mean / draws).
    CHECK(std::abs(total / draws - mean) <= 4 * std::sqrt(mean / draws));
}

TEST_CASE("guard margin covers the far field") {
    // Receiver at a corner of the observation window. Parents beyond the
    // guarded square lie farther than g, so doubling g adds at most
    // int_{|x| > g} |x|^-alpha dx = 2 pi g^{2 - alpha} / (alpha - 2) to the
    // mean interference (per unit density and cluster size), while the disc
    // of radius g alone already holds 2 pi int_0^g r f(r) dr with f the
    // offset-averaged loss min(1, |.|^-alpha).
    const NetworkConfig c;
    const double g = c.guard_margin_m;
    const double alpha = c.pathloss_exponent;
    const double sd = std::sqrt(c.scatter_variance);
    const GaussRule gh = gauss_hermite_normal(40);
    auto f = [&](double r) {
        double sum = 0;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i)
            for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
                const double d = std::hypot(r + sd * gh.nodes[i], sd * gh.nodes[j]);
                sum += gh.weights[i] * gh.weights[j] * std::min(1.0, std::pow(d, -alpha));
            }
        return sum;
    };
    QuadratureSpec q;
    q.relative_tolerance = 1e-6;
    const double inside = 2 * std::numbers::pi * integrate([&](double r) { return r * f(r); }, 0.0, g, q).value;
    const double added = 2 * std::numbers::pi * std::pow(g, 2 - alpha) / (alpha - 2);
    INFO("inside " << inside << " added at most " << added);
    CHECK(added / inside < 0.01);
}

TEST_CASE("groups are disjoint triples") {
    const NetworkConfig c = small();
    const NetworkRealization r = sample_tcp(c, c.guard_margin_m, 7);
    const auto groups = form_motif_groups(r, c, 8);
    CHECK(groups.size() == static_cast<std::size_t>(r.cluster_count() * c.motifs_per_cluster()));
    std::set<std::pair<int, int>> used;
    for (const auto& g : groups) {
        for (int m : g.member_indices) {
            CHECK(m >= 0);
            CHECK(m < c.devices_per_cluster);
            CHECK(used.insert({g.cluster_index, m}).second);
        }
        CHECK(std::ranges::count(g.member_indices, g.hub_index) == 1);
        if (g.kind == MotifKind::chain) {
            CHECK(*g.relay_index == g.hub_index);
            CHECK(g.seed_index != g.hub_index);
            const auto rx = g.receivers();
            CHECK(rx[0] == g.hub_index);
            CHECK(rx[1] != g.seed_index);
        } else if (g.kind == MotifKind::star) {
            CHECK(g.seed_index == g.hub_index);
            CHECK(!g.relay_index);
        }
    }
}

TEST_CASE("qualifying fraction matches the joint probability") {
    const NetworkConfig c = small(20);
    const double p = joint_motif_probability(20, 100);
    Counts total;
    for (int i = 0; i < 30; ++i) {
        const NetworkRealization r = sample_tcp(c, c.guard_margin_m, 50 + i);
        const Counts k = count(form_motif_groups(r, c, 90 + i));
        total.groups += k.groups;
        total.star += k.star;
        total.chain += k.chain;
    }
    const double n = double(total.groups);
    const double q = double(total.star + total.chain) / n;
    CHECK(std::abs(q - p) <= 3 * std::sqrt(p * (1 - p) / n));
    const double share = double(total.star) / double(total.star + total.chain);
    const double m = double(total.star + total.chain);
    CHECK(std::abs(share - 1.0 / 3.0) <= 3 * std::sqrt(2.0 / 9.0 / m));
}

TEST_CASE("no qualifying triples at a zero threshold") {
    const NetworkConfig c = small(0);
    const NetworkRealization r = sample_tcp(c, c.guard_margin_m, 3);
    const Counts k = count(form_motif_groups(r, c, 4));
    CHECK(k.groups > 0);
    CHECK(k.star == 0);
    CHECK(k.chain == 0);
}

TEST_CASE("slot samples") {
    const NetworkConfig c = small();
    const NetworkRealization r = sample_tcp(c, c.guard_margin_m, 21);
    const auto groups = form_motif_groups(r, c, 22);
    const Counts k = count(groups);
    Rng rng(5);
    const SlotSample first = sample_slot(r, groups, c, SlotParity::first, rng);
    const SlotSample second = sample_slot(r, groups, c, SlotParity::second, rng);
    CHECK(first.sir.size() == static_cast<std::size_t>(2 * k.star + k.chain));
    CHECK(second.sir.size() == first.sir.size());
    CHECK(first.rate.size() == first.sir.size());
    for (double s : first.sir) CHECK(s >= 0);
    for (double x : second.rate) CHECK(x >= 0);
}

TEST_CASE("simulation is reproducible from the seed") {
    const NetworkConfig c = small();
    const SimulationReport a = simulate(c, 5, 99);
    const SimulationReport b = simulate(c, 5, 99);
    CHECK(a.report.e_star == b.report.e_star);
    CHECK(a.report.e_chain_second == b.report.e_chain_second);
    CHECK(a.report.outage_chain == b.report.outage_chain);
    CHECK(a.se_star == b.se_star);
    const SimulationReport other = simulate(c, 5, 100);
    CHECK(other.report.e_star != a.report.e_star);
}

TEST_CASE("simulated report is well formed") {
    const NetworkConfig c = small();
    const SimulationReport s = simulate(c, 20, 1);
    CHECK(s.observed_clusters > 0);
    CHECK(s.star_motifs > 0);
    CHECK(s.chain_motifs > 0);
    for (double v : {s.report.outage_star, s.report.outage_chain, s.link_success_star, s.link_success_chain_first}) {
        CHECK(v >= 0);
        CHECK(v <= 1);
    }
    CHECK(s.report.e_star > 0);
    CHECK(s.report.e_seeding > 0);
    CHECK(s.report.e_chain_second <= 0.5 * s.report.e_chain_first * (1 + 1e-12) + 1e-9);
    CHECK(s.se_star > 0);
    CHECK(s.p_ss == doctest::Approx(joint_motif_probability(40, 100)).epsilon(0.05));
}

TEST_CASE("a sparse network is nearly interference free") {
    // One tight triple per cluster and few clusters: one link per cluster,
    // clusters far apart.
    NetworkConfig c = small(40);
    c.parent_density = 0.5;
    c.devices_per_cluster = 3;
    c.scatter_variance = 1;
    const SimulationReport s = simulate(c, 200, 3);
    CHECK(s.report.outage_star < 0.05);
    CHECK(s.report.outage_chain < 0.05);
}

TEST_CASE("Monte Carlo transform limits") {
    const NetworkConfig c = small(20);
    CHECK(empirical_laplace(0.0, InterferenceKind::star_intra, c, 100, 1).value == 1.0);
    CHECK(empirical_laplace(0.0, InterferenceKind::chain_inter, c, 100, 1).value == 1.0);
    const NetworkConfig quiet = small(0);
    CHECK(empirical_laplace(1.0, InterferenceKind::star_intra, quiet, 100, 1).value == 1.0);
    CHECK(empirical_laplace(1.0, InterferenceKind::star_inter, quiet, 100, 1).value == 1.0);
}

TEST_CASE("Monte Carlo joint probability") {
    const Estimate e = empirical_joint_motif_probability(20, 100, 200'000, 4);
    CHECK(std::abs(e.value - joint_motif_probability(20, 100)) <= 3 * e.standard_error);
    CHECK(empirical_joint_motif_probability(0, 100, 1000, 4).value == 0.0);
}

TEST_CASE("Monte Carlo seeding rate") {
    const NetworkConfig c = small();
    const Estimate e = empirical_seeding_rate(c, 200'000, 6);
    const double analytic = expected_throughput_seeding(LaplaceContext::from_config(c));
    CHECK(std::abs(e.value - analytic) <= 3 * e.standard_error);
}

TEST_CASE("empirical Z needs a baseline spread") {
    NetworkConfig c = small(0);
    CHECK_THROWS_AS(empirical_z_score(c, 10, 10, 1), UndefinedZError);
    c = small();
    c.devices_per_cluster = 8;
    CHECK_THROWS_AS(empirical_z_score(c, 10, 10, 1), UndefinedZError);
    c = small(15);
    const EmpiricalZ z = empirical_z_score(c, 100, 50, 2);
    CHECK(std::isfinite(z.z_star.value));
    CHECK(std::isfinite(z.z_chain.value));
    CHECK(z.z_star.standard_error > 0);
    CHECK(z.c_o_chain > z.c_o_star);
}

TEST_CASE("argument checks") {
    const NetworkConfig c = small();
    CHECK_THROWS_AS(simulate(c, 0, 1), DomainError);
    CHECK_THROWS_AS(empirical_laplace(-1.0, InterferenceKind::star_intra, c, 10, 1), DomainError);
}
