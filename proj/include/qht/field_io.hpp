#pragma once

#include <string>

#include "qht/grid.hpp"

namespace qht {

// Binary scalar-field format: magic "QHT1", then uint32 n, uint32
// points_per_axis, uint32 scheme (0 = central2, 1 = spectral), uint64 value
// count, then count little-endian float64 values in grid storage order.
// write_field also emits a JSON sidecar at path + ".json".
void write_field(const std::string& path, const ScalarField& f);
ScalarField read_field(const std::string& path);

} // namespace qht
