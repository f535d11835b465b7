#include "peek/png_io.hpp"

#include <png.h>

#include <cstring>

namespace peek {

Frame read_png(const std::filesystem::path& path, int frame_index) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;

  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw DataError("failed to open PNG " + path.string() + ": " +
                    image.message);
  }
  image.format = PNG_FORMAT_RGB;

  Frame frame;
  frame.index = frame_index;
  frame.width = static_cast<int>(image.width);
  frame.height = static_cast<int>(image.height);
  frame.pixels.resize(PNG_IMAGE_SIZE(image));

  if (!png_image_finish_read(&image, nullptr, frame.pixels.data(), 0,
                             nullptr)) {
    png_image_free(&image);
    throw DataError("failed to decode PNG " + path.string() + ": " +
                    image.message);
  }
  return frame;
}

void write_png(const std::filesystem::path& path, const Frame& frame) {
  if (!frame.valid()) {
    throw DataError("write_png: invalid frame buffer for " + path.string());
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width);
  image.height = static_cast<png_uint_32>(frame.height);
  image.format = PNG_FORMAT_RGB;

  if (!png_image_write_to_file(&image, path.string().c_str(), 0,
                               frame.pixels.data(), 0, nullptr)) {
    throw DataError("failed to write PNG " + path.string() + ": " +
                    image.message);
  }
}

}  // namespace peek
