#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "d2dmotif/config.hpp"
#include "d2dmotif/errors.hpp"
#include "d2dmotif/specfun.hpp"

namespace d2dmotif {

namespace detail {

template <class Scalar>
void require_variance(Scalar variance, const char* fn) {
    if (!(variance > 0) || !std::isfinite(variance))
        throw DomainError(std::string(fn) + ": variance must be positive and finite");
}

}  // namespace detail

/// Density of the distance to a point drawn from an isotropic Gaussian
/// (per-axis variance `variance`) centred at distance s.
template <class Scalar>
Scalar rician_pdf(Scalar d, Scalar s, Scalar variance) {
    detail::require_variance(variance, "rician_pdf");
    if (d < 0 || s < 0) throw DomainError("rician_pdf: negative distance");
    if (d == 0) return Scalar(0);
    // exp(-(d^2+s^2)/2v) I0(ds/v) = exp(-(d-s)^2/2v) * e^{-ds/v} I0(ds/v)
    const Scalar diff = d - s;
    return d / variance * std::exp(-diff * diff / (Scalar(2) * variance)) *
           bessel_i0_scaled(d * s / variance);
}

template <class Scalar>
Scalar rayleigh_pdf(Scalar s, Scalar variance) {
    detail::require_variance(variance, "rayleigh_pdf");
    if (s < 0) throw DomainError("rayleigh_pdf: negative distance");
    return s / variance * std::exp(-s * s / (Scalar(2) * variance));
}

/// CDF of the distance from the centre of a square of half-width L to a
/// uniform point in it.
template <class Scalar>
Scalar bs_distance_cdf(Scalar z, Scalar half_width) {
    if (!(half_width > 0)) throw DomainError("bs_distance_cdf: half_width must be positive");
    if (z < 0) throw DomainError("bs_distance_cdf: negative distance");
    const Scalar L = half_width;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    if (z <= L) return pi * z * z / (Scalar(4) * L * L);
    if (z >= std::numbers::sqrt2_v<Scalar> * L) return Scalar(1);
    const Scalar corner = z * z * std::acos(L / z) - L * std::sqrt(z * z - L * L);
    return (pi * z * z - Scalar(4) * corner) / (Scalar(4) * L * L);
}

template <class Scalar>
Scalar bs_distance_pdf(Scalar z, Scalar half_width) {
    if (!(half_width > 0)) throw DomainError("bs_distance_pdf: half_width must be positive");
    if (z < 0) throw DomainError("bs_distance_pdf: negative distance");
    const Scalar L = half_width;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    if (z <= L) return pi * z / (Scalar(2) * L * L);
    if (z > std::numbers::sqrt2_v<Scalar> * L) return Scalar(0);
    return (pi * z - Scalar(4) * z * std::acos(L / z)) / (Scalar(2) * L * L);
}

/// One draw of the Thomas cluster process.
struct NetworkRealization {
    Eigen::Matrix2Xd parent_points;          // 2 x P, metres
    std::vector<Eigen::Matrix2Xd> offsets;   // per parent, 2 x N
    std::uint64_t seed = 0;

    Eigen::Index cluster_count() const { return parent_points.cols(); }

    /// Absolute device positions of cluster i.
    Eigen::Matrix2Xd devices(Eigen::Index i) const {
        return offsets[static_cast<std::size_t>(i)].colwise() + parent_points.col(i);
    }
};

/// Parents form a PPP on [-L-g, L+g]^2; each gets N Gaussian daughters.
NetworkRealization sample_tcp(const NetworkConfig& config, double guard_margin_m, std::uint64_t seed);

}  // namespace d2dmotif
