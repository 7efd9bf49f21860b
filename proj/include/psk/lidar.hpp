#pragma once

#include <cstdint>

#include "psk/csv.hpp"

namespace psk {

// Synthetic stand-in for the LIDAR data set: 221 ranges in [390, 720] and a
// log-ratio with a sigmoidal drop and noise that grows with range.
XYData synthetic_lidar(std::uint64_t seed = 1);

}  // namespace psk
