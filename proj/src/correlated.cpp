#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Core>

#include "d2dmotif/performance.hpp"
#include "d2dmotif/rng.hpp"

namespace d2dmotif {

namespace {

constexpr int kRadialNodes = 48;
constexpr int kAngularNodes = 24;
constexpr int kHermiteNodes = 8;

// 1 - L_h(s P_t d^-alpha) with L_h(x) = 1/(1+x), as a function of squared
// distance d2 and squared equivalent distance a2.
struct Absorb {
    double half_alpha;
    bool quartic;

    double operator()(double d2, double a2) const {
        const double ratio = d2 / a2;
        return 1.0 / (1.0 + (quartic ? ratio * ratio : std::pow(ratio, half_alpha)));
    }
};

}  // namespace

CorrelatedOutage outage_chain_correlated(double delta, const LaplaceContext& ctx, const QuadratureSpec& q) {
    ctx.validate();
    q.validate();
    if (!(delta >= 0) || !std::isfinite(delta)) throw DomainError("outage_chain_correlated: invalid threshold");

    const NetworkConfig& c = ctx.config;
    const int n = c.devices_per_cluster;
    // Per-device transmit probability: N_m motifs each contribute one
    // active transmitter with probability p_ss.
    const double p = ctx.n_m * ctx.p_ss / n;
    if (delta == 0 || p == 0) return {0.0, 0.0};

    const double alpha = c.pathloss_exponent;
    const Absorb absorb{alpha / 2.0, alpha == 4.0};
    const double lambda = c.parent_density_per_m2();
    const double sd = std::sqrt(c.scatter_variance);
    const double delta_root = std::pow(delta, 1.0 / alpha);

    const GaussRule radial = gauss_legendre(kRadialNodes, 0.0, 1.0);
    const GaussRule hermite = gauss_hermite_normal(kHermiteNodes);
    std::vector<Eigen::Vector2d> y_nodes;
    std::vector<double> y_weights;
    for (int a = 0; a < kHermiteNodes; ++a)
        for (int b = 0; b < kHermiteNodes; ++b) {
            y_nodes.emplace_back(sd * hermite.nodes[a], sd * hermite.nodes[b]);
            y_weights.push_back(hermite.weights[a] * hermite.weights[b]);
        }

    Rng rng = make_rng(q.mc_seed, Stream::correlated);
    std::normal_distribution<double> gauss(0.0, sd);
    auto draw = [&] {
        const double u = gauss(rng);
        return Eigen::Vector2d(u, gauss(rng));
    };

    // Receiver j sits at the origin, its cluster centre at x_r; the seed i at
    // x_r + y_i and the final receiver k at x_r + y_k.
    double sum = 0;
    double sum_sq = 0;
    for (long m = 0; m < q.mc_samples; ++m) {
        const Eigen::Vector2d x_r = draw();
        const Eigen::Vector2d pos_i = x_r + draw();
        const Eigen::Vector2d pos_k = x_r + draw();
        const double a1 = delta_root * pos_i.norm();
        const double a2 = delta_root * pos_k.norm();
        const double a1_sq = a1 * a1;
        const double a2_sq = a2 * a2;

        // Probability-generating factor of one cluster member, averaged over
        // its Gaussian offset from a parent at x.
        auto member = [&](const Eigen::Vector2d& x) {
            double g = 0;
            for (std::size_t t = 0; t < y_nodes.size(); ++t) {
                const Eigen::Vector2d at = x + y_nodes[t];
                const double w1 = absorb(at.squaredNorm(), a1_sq);
                const double w2 = absorb((at - pos_k).squaredNorm(), a2_sq);
                g += y_weights[t] * (1.0 - p * w1) * (1.0 - p * w2);
            }
            return g;
        };

        // Other clusters: exp(-lambda int (1 - G(x)^N) dx) in polar
        // coordinates with r = c u / (1 - u).
        const double scale = std::max({a1, a2, pos_k.norm(), sd});
        double exponent = 0;
        for (int ir = 0; ir < kRadialNodes; ++ir) {
            const double u = radial.nodes[ir];
            const double r = scale * u / (1.0 - u);
            const double jac = scale / ((1.0 - u) * (1.0 - u)) * r;
            double ring = 0;
            for (int it = 0; it < kAngularNodes; ++it) {
                const double theta = 2.0 * std::numbers::pi * (it + 0.5) / kAngularNodes;
                const Eigen::Vector2d x(r * std::cos(theta), r * std::sin(theta));
                ring += -std::expm1(n * std::log(member(x)));
            }
            exponent += radial.weights[ir] * jac * ring * (2.0 * std::numbers::pi / kAngularNodes);
        }

        // Own cluster: the N - 3 devices outside the motif.
        const double own = std::exp((n - 3) * std::log(member(x_r)));
        const double outage = 1.0 - own * std::exp(-lambda * exponent);
        sum += outage;
        sum_sq += outage * outage;
    }
    const double count = static_cast<double>(q.mc_samples);
    const double mean = sum / count;
    const double var = count > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1)) : 0.0;
    return {mean, std::sqrt(var / count)};
}

}  // namespace d2dmotif
