#pragma once

#include <cstdint>
#include <vector>

#include "peek/types.hpp"

namespace peek {

struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

struct RenderSpec {
  Color color_start{0x40, 0x00, 0x00};  // dark red, first path segment
  Color color_end{0xFF, 0x00, 0x00};    // light red, last path segment
  int line_width = 3;
  double mask_edge_frac = 0.08;
};

// Denormalizes a fraction to a pixel index with round-half-up, clamped to
// [0, size-1].
int to_pixel(double v, int size);

// Inclusive pixel bounds of the square revealed around a mask point. The
// square has edge floor(edge_frac * min(width,height)) and is clipped to the
// frame; a non-positive edge yields an empty rect (x1 < x0).
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
};

PixelRect mask_square(const NormPoint& p, int width, int height,
                      double edge_frac);

// Draws the path as thickened line segments. Segment k of K-1 is colored by
// linear interpolation from color_start (k=0) to color_end (k=K-2); a single
// segment uses color_start. One-point paths and zero-length segments render
// as filled discs of radius line_width. Later segments overwrite earlier
// pixels at junctions.
Frame draw_path(const Frame& frame, const std::vector<NormPoint>& path,
                const RenderSpec& spec);

// Black canvas with the input pixels revealed inside the mask squares.
Frame apply_mask(const Frame& frame, const std::vector<NormPoint>& mask,
                 const RenderSpec& spec);

// apply_mask then draw_path, so the path stays visible over blacked-out
// regions. Empty mask leaves the frame unmasked; empty path draws nothing.
Frame compose(const Frame& frame, const AnnotationBundle& bundle,
              const RenderSpec& spec);

}  // namespace peek
