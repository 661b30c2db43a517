#include "d2dmotif/pointprocess.hpp"

#include <random>

#include "d2dmotif/rng.hpp"

namespace d2dmotif {

NetworkRealization sample_tcp(const NetworkConfig& config, double guard_margin_m, std::uint64_t seed) {
    config.validate();
    if (!(guard_margin_m >= 0)) throw DomainError("sample_tcp: guard margin must be nonnegative");

    const double half = config.region_half_width_m + guard_margin_m;
    const double mean_count = config.parent_density_per_m2() * 4.0 * half * half;

    Rng parent_rng = make_rng(seed, Stream::parents);
    std::poisson_distribution<long> count_dist(mean_count);
    std::uniform_real_distribution<double> coord(-half, half);
    const long count = count_dist(parent_rng);

    NetworkRealization out;
    out.seed = seed;
    out.parent_points.resize(2, count);
    for (long i = 0; i < count; ++i) {
        out.parent_points(0, i) = coord(parent_rng);
        out.parent_points(1, i) = coord(parent_rng);
    }

    const int n = config.devices_per_cluster;
    const double sd = std::sqrt(config.scatter_variance);
    out.offsets.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        Rng rng = make_rng(seed, Stream::offsets, static_cast<std::uint64_t>(i));
        std::normal_distribution<double> gauss(0.0, sd);
        Eigen::Matrix2Xd y(2, n);
        for (int k = 0; k < n; ++k) {
            y(0, k) = gauss(rng);
            y(1, k) = gauss(rng);
        }
        out.offsets.push_back(std::move(y));
    }
    return out;
}

}  // namespace d2dmotif
