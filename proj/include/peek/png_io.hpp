#pragma once

#include <filesystem>

#include "peek/types.hpp"

namespace peek {

// Reads any 8-bit PNG, converted to RGB. Throws DataError on failure.
Frame read_png(const std::filesystem::path& path, int frame_index = 0);

// Writes a frame as an RGB PNG. Throws DataError on failure.
void write_png(const std::filesystem::path& path, const Frame& frame);

}  // namespace peek
