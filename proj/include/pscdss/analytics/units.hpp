#pragma once

#include <cmath>

namespace pscdss::analytics {

inline constexpr double kLightSpeed = 2.99792458e8;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbw_to_watt(double dbw) { return db_to_linear(dbw); }
inline double dbm_to_watt(double dbm) { return db_to_linear(dbm - 30.0); }
inline double watt_to_dbm(double w) { return linear_to_db(w) + 30.0; }

}  // namespace pscdss::analytics
