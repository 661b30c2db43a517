#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace d2dmotif {

/// Physical and topological parameters of one network scenario.
///
/// Fields are stored in the units named by the config keys (dBm, m, m^2,
/// clusters/km^2, Hz); the accessors below convert to watts and per-m^2.
struct NetworkConfig {
    double bs_power_dbm = 46.0;
    double device_power_dbm = 23.0;
    int devices_per_cluster = 50;
    double scatter_variance = 100.0;
    double parent_density = 10.0;  // clusters / km^2
    double total_bandwidth_hz = 2e7;
    double d2d_fraction = 0.6;
    double pathloss_exponent = 4.0;
    double sir_threshold_db = 0.0;
    double max_link_distance_m = 15.0;
    double star_fraction = 1.0 / 3.0;
    double region_half_width_m = 500.0;
    double noise_density_dbm_hz = -174.0;
    double guard_margin_m = 200.0;
    // Adds thermal noise (over w1) to the simulated D2D SIR. Off by default.
    bool d2d_noise = false;

    /// Throws DomainError when a field is out of range. Does not require
    /// N >= 3; the motif analytics report that case separately.
    void validate() const;

    int motifs_per_cluster() const { return devices_per_cluster / 3; }
    double d2d_bandwidth_hz() const { return d2d_fraction * total_bandwidth_hz; }
    double cellular_bandwidth_hz() const { return (1.0 - d2d_fraction) * total_bandwidth_hz; }
    double bs_power_w() const;
    double device_power_w() const;
    double parent_density_per_m2() const;
    double sir_threshold_linear() const;
    /// Thermal noise power over the cellular band w2, in watts.
    double seeding_noise_w() const;
    /// Thermal noise power over the D2D band w1, in watts.
    double d2d_noise_w() const;
};

/// Parses flat `key = value` text. Unknown keys are rejected; missing keys
/// keep their defaults.
NetworkConfig parse_config(std::istream& in);
NetworkConfig load_config(const std::string& path);

/// Canonical `key=value` listing of every field, one per line, fixed order.
std::string canonical_text(const NetworkConfig& config);

/// FNV-1a 64-bit hash of canonical_text.
std::uint64_t config_hash(const NetworkConfig& config);

}  // namespace d2dmotif
