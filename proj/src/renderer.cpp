#include "peek/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace peek {

namespace {

void put(Frame& f, int x, int y, const Color& c) {
  if (x < 0 || y < 0 || x >= f.width || y >= f.height) return;
  std::uint8_t* px = f.at(x, y);
  px[0] = c.r;
  px[1] = c.g;
  px[2] = c.b;
}

// line_width x line_width square centered on (cx, cy); even widths lean one
// pixel toward the top-left.
void stamp(Frame& f, int cx, int cy, int lw, const Color& c) {
  const int lo = -(lw / 2);
  const int hi = (lw - 1) / 2;
  for (int dy = lo; dy <= hi; ++dy)
    for (int dx = lo; dx <= hi; ++dx) put(f, cx + dx, cy + dy, c);
}

void disc(Frame& f, int cx, int cy, int radius, const Color& c) {
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (dx * dx + dy * dy <= radius * radius) put(f, cx + dx, cy + dy, c);
}

void line(Frame& f, int x0, int y0, int x1, int y1, int lw, const Color& c) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    stamp(f, x0, y0, lw, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

Color lerp_color(const Color& a, const Color& b, double t) {
  auto ch = [t](std::uint8_t u, std::uint8_t v) {
    return static_cast<std::uint8_t>(std::lround(u + t * (v - u)));
  };
  return Color{ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

}  // namespace

int to_pixel(double v, int size) {
  const int px = static_cast<int>(std::floor(v * size + 0.5));
  return std::clamp(px, 0, size - 1);
}

PixelRect mask_square(const NormPoint& p, int width, int height,
                      double edge_frac) {
  const int edge =
      static_cast<int>(std::floor(edge_frac * std::min(width, height)));
  if (edge <= 0) return PixelRect{};
  const int px = to_pixel(p.x, width);
  const int py = to_pixel(p.y, height);
  PixelRect r;
  r.x0 = std::max(0, px - edge / 2);
  r.y0 = std::max(0, py - edge / 2);
  r.x1 = std::min(width - 1, px - edge / 2 + edge - 1);
  r.y1 = std::min(height - 1, py - edge / 2 + edge - 1);
  return r;
}

Frame draw_path(const Frame& frame, const std::vector<NormPoint>& path,
                const RenderSpec& spec) {
  Frame out = frame;
  if (path.empty()) return out;
  const int lw = std::max(1, spec.line_width);
  if (path.size() == 1) {
    disc(out, to_pixel(path[0].x, out.width), to_pixel(path[0].y, out.height),
         lw, spec.color_end);
    return out;
  }
  const int segments = static_cast<int>(path.size()) - 1;
  for (int k = 0; k < segments; ++k) {
    const double t = segments == 1 ? 0.0 : static_cast<double>(k) / (segments - 1);
    const Color c = lerp_color(spec.color_start, spec.color_end, t);
    const int x0 = to_pixel(path[k].x, out.width);
    const int y0 = to_pixel(path[k].y, out.height);
    const int x1 = to_pixel(path[k + 1].x, out.width);
    const int y1 = to_pixel(path[k + 1].y, out.height);
    if (x0 == x1 && y0 == y1) {
      disc(out, x0, y0, lw, c);
    } else {
      line(out, x0, y0, x1, y1, lw, c);
    }
  }
  return out;
}

Frame apply_mask(const Frame& frame, const std::vector<NormPoint>& mask,
                 const RenderSpec& spec) {
  Frame out = frame;
  std::fill(out.pixels.begin(), out.pixels.end(), 0);
  for (const NormPoint& p : mask) {
    const PixelRect r = mask_square(p, frame.width, frame.height,
                                    spec.mask_edge_frac);
    if (r.empty()) continue;
    for (int y = r.y0; y <= r.y1; ++y) {
      std::memcpy(out.at(r.x0, y), frame.at(r.x0, y),
                  static_cast<std::size_t>(r.x1 - r.x0 + 1) * 3);
    }
  }
  return out;
}

Frame compose(const Frame& frame, const AnnotationBundle& bundle,
              const RenderSpec& spec) {
  Frame out = bundle.mask.empty() ? frame : apply_mask(frame, bundle.mask, spec);
  if (!bundle.path.empty()) out = draw_path(out, bundle.path, spec);
  return out;
}

}  // namespace peek
