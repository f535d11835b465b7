#include "peek/types.hpp"

namespace peek {

NormPoint normalize(double px, double py, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw ConfigError("normalize: width and height must be positive");
  }
  return NormPoint(px / width, py / height);
}

Frame Frame::filled(int index, int width, int height, std::uint8_t r,
                    std::uint8_t g, std::uint8_t b) {
  Frame f;
  f.index = index;
  f.width = width;
  f.height = height;
  f.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < f.pixels.size(); i += 3) {
    f.pixels[i] = r;
    f.pixels[i + 1] = g;
    f.pixels[i + 2] = b;
  }
  return f;
}

namespace {

void check_fraction(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ConfigError(std::string(name) + " must be in (0,1), got " +
                      std::to_string(v));
  }
}

void check_period(int v, const char* name) {
  if (v < 1) {
    throw ConfigError(std::string(name) + " must be >= 1, got " +
                      std::to_string(v));
  }
}

}  // namespace

void PipelineConfig::validate() const {
  check_fraction(movement_threshold, "movement_threshold");
  check_fraction(still_eps, "still_eps");
  check_fraction(rdp_eps_path, "rdp_eps_path");
  check_fraction(rdp_eps_mask, "rdp_eps_mask");
  check_fraction(mask_edge_frac, "mask_edge_frac");
  check_fraction(trim_frac, "trim_frac");
  check_period(stop_window, "stop_window");
  check_period(h_label, "h_label");
  check_period(h_rollout, "h_rollout");
  check_period(raster_size, "raster_size");
  if (grid_side < 15 || grid_side > 30) {
    throw ConfigError("grid_side must be in [15,30], got " +
                      std::to_string(grid_side));
  }
  if (resample_count < 0) {
    throw ConfigError("resample_count must be >= 0, got " +
                      std::to_string(resample_count));
  }
}

}  // namespace peek
