#pragma once

#include "voxshift/world/voxel_world.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace voxshift::world {

// voxgrid v1, all integers little-endian:
//   "VOXG" | u16 version (=1) | i32 ox, oy, oz | u32 sx, sy, sz
//   | u16 palette count | palette entries (u8 length + UTF-8 bytes)
//   | sx*sy*sz u16 palette indices, x-fastest, then z, then y
inline constexpr std::uint16_t kVoxgridVersion = 1;

// Throws FormatError with the byte offset of the offending field.
VoxelWorld load_world(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> save_world(const VoxelWorld& world);

VoxelWorld read_world_file(const std::filesystem::path& path);
void write_world_file(const std::filesystem::path& path, const VoxelWorld& world);

} // namespace voxshift::world
