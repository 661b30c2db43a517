#include "d2dmotif/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "d2dmotif/errors.hpp"
#include "d2dmotif/units.hpp"

namespace d2dmotif {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError("config: " + message);
}

}  // namespace

void NetworkConfig::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(bs_power_dbm) && finite(device_power_dbm) && finite(noise_density_dbm_hz) &&
                finite(sir_threshold_db),
            "power, noise and threshold values must be finite");
    require(devices_per_cluster >= 1, "devices_per_cluster must be positive");
    require(finite(scatter_variance) && scatter_variance > 0, "scatter_variance_m2 must be positive");
    require(finite(parent_density) && parent_density > 0, "parent_density_per_km2 must be positive");
    require(finite(total_bandwidth_hz) && total_bandwidth_hz > 0, "total_bandwidth_hz must be positive");
    require(d2d_fraction > 0 && d2d_fraction < 1, "d2d_fraction must lie in (0, 1)");
    require(finite(pathloss_exponent) && pathloss_exponent > 2, "pathloss_exponent must exceed 2");
    require(finite(max_link_distance_m) && max_link_distance_m >= 0,
            "max_link_distance_m must be nonnegative");
    require(star_fraction > 0 && star_fraction < 1, "star_fraction must lie in (0, 1)");
    require(finite(region_half_width_m) && region_half_width_m > 0, "region_half_width_m must be positive");
    require(finite(guard_margin_m) && guard_margin_m >= 0, "guard_margin_m must be nonnegative");
}

double NetworkConfig::bs_power_w() const { return units::dbm_to_watt(bs_power_dbm); }
double NetworkConfig::device_power_w() const { return units::dbm_to_watt(device_power_dbm); }
double NetworkConfig::parent_density_per_m2() const { return units::per_km2_to_per_m2(parent_density); }
double NetworkConfig::sir_threshold_linear() const { return units::db_to_linear(sir_threshold_db); }
double NetworkConfig::seeding_noise_w() const {
    return units::dbm_to_watt(noise_density_dbm_hz) * cellular_bandwidth_hz();
}
double NetworkConfig::d2d_noise_w() const {
    return units::dbm_to_watt(noise_density_dbm_hz) * d2d_bandwidth_hz();
}

NetworkConfig parse_config(std::istream& in) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw DomainError(std::string("config: ") + e.what());
    }

    NetworkConfig c;
    for (const auto& [key, node] : tree) {
        require(node.empty(), "sections are not supported ([" + key + "])");
        const std::string& text = node.data();
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(text, &used);
            require(text.find_first_not_of(" \t", used) == std::string::npos, "trailing characters in " + key);
        } catch (const std::logic_error&) {
            throw DomainError("config: value of " + key + " is not a number: '" + text + "'");
        }

        if (key == "bs_power_dbm") c.bs_power_dbm = v;
        else if (key == "device_power_dbm") c.device_power_dbm = v;
        else if (key == "devices_per_cluster") {
            require(v == std::floor(v), "devices_per_cluster must be an integer");
            c.devices_per_cluster = static_cast<int>(v);
        }
        else if (key == "scatter_variance_m2") c.scatter_variance = v;
        else if (key == "parent_density_per_km2") c.parent_density = v;
        else if (key == "total_bandwidth_hz") c.total_bandwidth_hz = v;
        else if (key == "d2d_fraction") c.d2d_fraction = v;
        else if (key == "pathloss_exponent") c.pathloss_exponent = v;
        else if (key == "sir_threshold_db") c.sir_threshold_db = v;
        else if (key == "max_link_distance_m") c.max_link_distance_m = v;
        else if (key == "star_fraction") c.star_fraction = v;
        else if (key == "region_half_width_m") c.region_half_width_m = v;
        else if (key == "noise_density_dbm_hz") c.noise_density_dbm_hz = v;
        else if (key == "guard_margin_m") c.guard_margin_m = v;
        else if (key == "d2d_noise") c.d2d_noise = v != 0;
        else throw DomainError("config: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

NetworkConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    return parse_config(in);
}

std::string canonical_text(const NetworkConfig& c) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "bs_power_dbm=" << c.bs_power_dbm << '\n'
        << "device_power_dbm=" << c.device_power_dbm << '\n'
        << "devices_per_cluster=" << c.devices_per_cluster << '\n'
        << "scatter_variance_m2=" << c.scatter_variance << '\n'
        << "parent_density_per_km2=" << c.parent_density << '\n'
        << "total_bandwidth_hz=" << c.total_bandwidth_hz << '\n'
        << "d2d_fraction=" << c.d2d_fraction << '\n'
        << "pathloss_exponent=" << c.pathloss_exponent << '\n'
        << "sir_threshold_db=" << c.sir_threshold_db << '\n'
        << "max_link_distance_m=" << c.max_link_distance_m << '\n'
        << "star_fraction=" << c.star_fraction << '\n'
        << "region_half_width_m=" << c.region_half_width_m << '\n'
        << "noise_density_dbm_hz=" << c.noise_density_dbm_hz << '\n'
        << "guard_margin_m=" << c.guard_margin_m << '\n'
        << "d2d_noise=" << (c.d2d_noise ? 1 : 0) << '\n';
    return out.str();
}

std::uint64_t config_hash(const NetworkConfig& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_text(config)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace d2dmotif
