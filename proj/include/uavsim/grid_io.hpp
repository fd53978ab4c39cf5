#pragma once

#include "uavsim/fusion.hpp"

#include <filesystem>

namespace uavsim {

/// Binary tensor format: header H, W, D as little-endian u32, then
/// H*W*D row-major float32 values.
void write_grid(const FeatureGrid& grid, const std::filesystem::path& path);
FeatureGrid read_grid(const std::filesystem::path& path);

}  // namespace uavsim
