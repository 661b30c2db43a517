#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "d2dmotif/config.hpp"

namespace d2dmotif {

/// One comparison of the acceptance matrix. `band` is the allowed absolute
/// (or, where the name says so, relative) difference after scaling; property
/// checks leave the numbers NaN and explain themselves in `note`.
struct CheckResult {
    int criterion = 0;
    std::string name;
    double analytic = 0;
    double simulated = 0;
    double band = 0;
    bool pass = false;
    std::string note;
};

struct ValidationOptions {
    // Fixed parameters (powers, bandwidth, path loss, ...) come from here;
    // each criterion overrides the swept or pinned fields.
    NetworkConfig base;
    std::uint64_t seed = 20240601;
    // Simulation trials for the simulator-based criteria; 0 keeps each
    // criterion's default.
    long trials = 0;
    // Multiplies every numeric tolerance. 0 makes every banded check fail.
    double tolerance_scale = 1.0;
    // Progress lines go here when set.
    std::ostream* progress = nullptr;
};

inline constexpr int kCriterionCount = 10;

std::vector<CheckResult> run_criterion(int id, const ValidationOptions& options);

/// Empirical Z-scores from simulated counts against the analytic Z-scores
/// at three configurations (3 combined standard errors).
std::vector<CheckResult> run_empirical_z_check(const ValidationOptions& options);

/// `[C4] name: analytic=... simulated=... band=... PASS`.
std::string format_check(const CheckResult& check);

/// Criteria 1..10 (quick: 1 and 2 only), a detail line per check and a
/// summary line per criterion. True when everything passed.
bool run_validate(const ValidationOptions& options, bool quick, std::ostream& out);

/// Unimodal up to a relative per-step tolerance: some index m has
/// y[i+1] >= y[i](1 - tol) before m and y[i+1] <= y[i](1 + tol) after it.
bool unimodal(const std::vector<double>& y, double tol);

}  // namespace d2dmotif
