#pragma once

#include <array>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "d2dmotif/interference.hpp"
#include "d2dmotif/motifstats.hpp"
#include "d2dmotif/quadrature.hpp"

namespace d2dmotif {

/// Remainder bounds of the truncated rate integrals, bit/s.
struct TruncationBounds {
    double star = 0;
    double chain_first = 0;
    double chain_second = 0;
    double seeding = 0;
};

struct CorrelatedOutage {
    double estimate = 0;
    double standard_error = 0;
};

/// Analytic or simulated throughput and outage bundle. Rates are bit/s.
struct ThroughputReport {
    double e_star = 0;
    double e_chain_first = 0;
    double e_chain_second = 0;
    double e_seeding = 0;
    double e_avg = 0;
    double outage_star = 0;
    double outage_chain = 0;
    std::optional<CorrelatedOutage> outage_chain_correlated;
    double z_star = std::numeric_limits<double>::quiet_NaN();
    double z_chain = std::numeric_limits<double>::quiet_NaN();
    TruncationBounds truncation;
};

/// Holds the tabulated transforms for one LaplaceContext so repeated
/// link-success evaluations (rate integrals) stay cheap. Tables are built on
/// first use. Not safe for concurrent first use; copy per thread instead.
class PerformanceModel {
public:
    PerformanceModel(const LaplaceContext& ctx, const QuadratureSpec& q = {});

    const LaplaceContext& context() const { return ctx_; }

    /// Probability that a star link meets the (linear) SIR threshold delta.
    double link_success_star(double delta);
    /// Probability that the first chain hop (seed to relay) meets delta.
    double link_success_chain_first(double delta);

    double outage_star(double delta);
    double outage_chain_uncorrelated(double delta);
    double throughput_cdf_star(double rate);

    // Expected throughputs. When `remainder` is given it receives the bound
    // on the truncated tail of the rate integral.
    double expected_throughput_star(double* remainder = nullptr);
    double expected_throughput_chain_first(double* remainder = nullptr);
    double expected_throughput_chain_second(double* remainder = nullptr);
    double expected_throughput_seeding(double* remainder = nullptr);

    /// Seeding-link success probability at SNR threshold delta.
    double seeding_success(double delta);

private:
    void require_star_tables();
    void require_chain_tables();
    // int_0^inf success(2^{R/bandwidth} - 1) dR with tail truncation.
    std::vector<double> cuts(const std::array<double, 2>& marks, double scale) const;
    template <class Success>
    double rate_integral(Success&& success, double bandwidth, double* remainder);

    LaplaceContext ctx_;
    QuadratureSpec q_;
    std::unique_ptr<InterTransformTable> star_inter_;
    std::unique_ptr<IntraTransformTable> star_intra_;
    std::unique_ptr<InterTransformTable> chain_inter_;
    // Chain intra tables at fixed quadrature nodes of the relay distance s_r.
    std::vector<double> sr_nodes_;
    std::vector<double> sr_weights_;
    std::vector<IntraTransformTable> chain_intra_;
    // Equivalent distances where the inter / intra transforms turn over;
    // used as integration break points.
    std::array<double, 2> star_marks_{};
    std::vector<std::array<double, 2>> chain_marks_;
    // E_chain and its remainder, reused by the two-hop rate.
    std::optional<std::pair<double, double>> chain_first_;
};

double link_success_star(double delta, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double link_success_chain_first(double delta, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double outage_star(double delta, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double outage_chain_uncorrelated(double delta, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double throughput_cdf_star(double rate, const LaplaceContext& ctx, const QuadratureSpec& q = {});
double expected_throughput_star(const LaplaceContext& ctx, const QuadratureSpec& q = {});
double expected_throughput_chain_first(const LaplaceContext& ctx, const QuadratureSpec& q = {});
double expected_throughput_chain_second(const LaplaceContext& ctx, const QuadratureSpec& q = {});
double expected_throughput_seeding(const LaplaceContext& ctx, const QuadratureSpec& q = {});

/// Chain outage with the interference at the two receivers treated jointly.
/// Outer expectation over the three Gaussian device offsets by Monte Carlo
/// (q.mc_samples draws seeded by q.mc_seed); the point-process functional by
/// deterministic quadrature.
CorrelatedOutage outage_chain_correlated(double delta, const LaplaceContext& ctx, const QuadratureSpec& q = {});

/// Per-device average: (2 c_star E_star + c_chain (E_chain + E_chain')
/// + (c_o + 1) E_seeding) / N.
double weighted_average_throughput(const Occurrences& occ, int n_devices, double e_star, double e_chain_first,
                                   double e_chain_second, double e_seeding);

/// Full analytic report at ctx.config's SIR threshold. Z-scores are NaN when
/// the baseline graph is outside its validity range; the throughput average
/// only needs the occurrence counts.
ThroughputReport average_throughput_per_device(const LaplaceContext& ctx, const QuadratureSpec& q = {},
                                               bool correlated_outage = false);

}  // namespace d2dmotif
