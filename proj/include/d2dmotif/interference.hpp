#pragma once

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "d2dmotif/config.hpp"
#include "d2dmotif/quadrature.hpp"
#include "d2dmotif/specfun.hpp"

namespace d2dmotif {

enum class InterferenceKind { star_intra, star_inter, chain_intra, chain_inter };

const char* to_string(InterferenceKind kind);

/// Inputs shared by the four interference transforms. Each potential
/// interferer is active independently with probability p_ss.
struct LaplaceContext {
    NetworkConfig config;
    double p_ss = 0;
    int n_m = 0;
    double transmit_power_w = 0;

    static LaplaceContext from_config(const NetworkConfig& config, const SeriesControl& control = {});
    void validate() const;
};

// Transforms of the interference I at argument s, E[exp(-s I)].
double laplace_star_intra(double s, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double laplace_star_inter(double s, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double laplace_chain_intra(double s, double s_r, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double laplace_chain_inter(double s, const LaplaceContext& ctx, const QuadratureSpec& q = {});

// The same transforms parametrised by the equivalent distance
// a = (s P_t)^{1/alpha}: an interferer at distance v then contributes the
// factor 1 / (1 + (v/a)^alpha) under unit-mean Rayleigh fading. For a link
// of length r at SIR threshold delta, a = delta^{1/alpha} r.
double star_intra_at(double a, const LaplaceContext& ctx, const QuadratureSpec& q);
double chain_intra_at(double a, double s_r, const LaplaceContext& ctx, const QuadratureSpec& q);

/// Exponent integral int_0^inf (1 - (1 - p h(t))^{N_m}) t dt of the
/// inter-cluster transforms (m^2); the transform is exp(-2 pi lambda_p X).
double inter_exponent(InterferenceKind kind, double a, const LaplaceContext& ctx, const QuadratureSpec& q);

/// Inter-cluster transform tabulated against log a.
///
/// The exponent integral grows like a^2 at both ends, so X(a) / a^2 is
/// tabulated on a uniform grid in log a and interpolated with a cubic
/// B-spline; outside the grid the ratio is held at its end value.
class InterTransformTable {
public:
    InterTransformTable(InterferenceKind kind, const LaplaceContext& ctx, const QuadratureSpec& q,
                        double log_step = 0.1, double a_min = 1e-2, double a_max = 1e4);

    /// Transform at equivalent distance a.
    double at(double a) const;
    /// Transform at Laplace argument s.
    double operator()(double s) const;

private:
    double ratio(double a) const;

    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
    double log_min_ = 0;
    double log_max_ = 0;
    double ratio_low_ = 0;
    double ratio_high_ = 0;
    double density_ = 0;
    double alpha_ = 0;
    double transmit_power_w_ = 0;
};

/// Intra-cluster transform tabulated against log a.
///
/// The thinned interferer mass h(a) rises like a^2 for small a and
/// saturates at one, so log h is tabulated on a uniform log a grid and
/// extrapolated linearly (slope 2) below it and held above it.
class IntraTransformTable {
public:
    /// Star form (Rayleigh interferer distances); s_r is ignored.
    /// Chain form uses Rician distances centred at s_r.
    IntraTransformTable(InterferenceKind kind, double s_r, const LaplaceContext& ctx, const QuadratureSpec& q,
                        double log_step = 0.1, double a_min = 1e-2, double a_max = 1e4);

    double at(double a) const;

private:
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
    double log_min_ = 0;
    double log_max_ = 0;
    double log_h_low_ = 0;
    double log_h_high_ = 0;
    double p_ss_ = 0;
    int n_m_ = 0;
    bool trivial_ = false;
};

}  // namespace d2dmotif
