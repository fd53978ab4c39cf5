#include "uavsim/grid_io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace uavsim {

void write_grid(const FeatureGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  const std::uint32_t header[3] = {static_cast<std::uint32_t>(grid.height()),
                                   static_cast<std::uint32_t>(grid.width()),
                                   static_cast<std::uint32_t>(grid.depth())};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(grid.data().data()),
            static_cast<std::streamsize>(grid.data().size() * sizeof(float)));
}

FeatureGrid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes < 12) throw std::runtime_error("grid file too short: " + path.string());
  in.seekg(0);
  std::uint32_t header[3];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  const std::size_t n = static_cast<std::size_t>(header[0]) * header[1] * header[2];
  if (bytes != 12 + n * sizeof(float))
    throw std::runtime_error("grid payload length mismatch: " + path.string());
  FeatureGrid grid(static_cast<int>(header[0]), static_cast<int>(header[1]),
                   static_cast<int>(header[2]));
  in.read(reinterpret_cast<char*>(grid.data().data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  return grid;
}

}  // namespace uavsim
