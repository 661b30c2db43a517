#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "d2dmotif/report.hpp"

namespace d2dmotif {

enum class SweepAxis { s_th, sigma2, lambda_p, beta, N };

/// Accepts the axis names used on the command line (s_th, sigma2,
/// lambda_p, beta, N). Throws DomainError otherwise.
SweepAxis parse_axis(const std::string& name);
const char* to_string(SweepAxis axis);

/// `base` with the axis field set to `value`.
NetworkConfig with_axis(NetworkConfig base, SweepAxis axis, double value);

struct SweepSpec {
    NetworkConfig base;
    SweepAxis axis = SweepAxis::s_th;
    std::vector<double> values;
    bool analytic = true;
    bool simulate = false;
    long trials = 100;
    std::uint64_t seed = 1;
    bool correlated_outage = false;

    /// Values nonempty and strictly increasing, trials >= 1, a mode chosen.
    void validate() const;
};

/// Motif statistics with the baseline and Z fields set to NaN when the
/// baseline graph is invalid or Z is undefined.
MotifStatistics motif_statistics_or_nan(const NetworkConfig& config);

/// Analytic row. With `strict` the baseline must be valid (errors propagate);
/// otherwise invalid baseline fields become NaN.
ResultRow run_analytic(const NetworkConfig& config, const QuadratureSpec& q = {}, bool correlated_outage = false,
                       bool strict = true);

/// Simulated row. Occurrence columns are empirical; baseline and Z columns
/// are the analytic values for the same configuration.
ResultRow run_simulate(const NetworkConfig& config, long trials, std::uint64_t seed);

/// Header plus one row per value and mode (analytic before simulated).
void run_sweep(const SweepSpec& spec, const QuadratureSpec& q, std::ostream& out);

/// Process exit status for an exception thrown by the library:
/// 1 generic, 2 no motif, 3 invalid regime or undefined Z, 4 convergence or
/// integration failure.
int exit_code_for(std::exception_ptr error);

/// Exit status of a failed validation run.
inline constexpr int kValidationFailedExit = 5;

}  // namespace d2dmotif
