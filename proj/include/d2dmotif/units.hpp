#pragma once

#include <cmath>

namespace d2dmotif::units {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double per_km2_to_per_m2(double density) { return density * 1e-6; }

}  // namespace d2dmotif::units
