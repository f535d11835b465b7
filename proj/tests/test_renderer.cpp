#include <cstdint>
#include <vector>

#include "doctest.h"
#include "peek/renderer.hpp"
#include "peek/types.hpp"

using namespace peek;

namespace {

bool pixel_is(const Frame& f, int x, int y, std::uint8_t r, std::uint8_t g,
              std::uint8_t b) {
  const std::uint8_t* px = f.at(x, y);
  return px[0] == r && px[1] == g && px[2] == b;
}

int count_nonblack(const Frame& f) {
  int n = 0;
  for (std::size_t i = 0; i < f.pixels.size(); i += 3) {
    if (f.pixels[i] || f.pixels[i + 1] || f.pixels[i + 2]) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("to_pixel rounds half up and clamps") {
  CHECK(to_pixel(0.5, 256) == 128);
  CHECK(to_pixel(0.0, 256) == 0);
  CHECK(to_pixel(1.0, 256) == 255);
  CHECK(to_pixel(0.999, 256) == 255);
  CHECK(to_pixel(0.25, 128) == 32);
  CHECK(to_pixel(0.5, 2) == 1);
}

TEST_CASE("mask square bounds") {
  PixelRect r = mask_square(NormPoint(0.5, 0.5), 256, 256, 0.08);
  CHECK(r.x0 == 118);
  CHECK(r.y0 == 118);
  CHECK(r.x1 == 137);
  CHECK(r.y1 == 137);

  PixelRect corner = mask_square(NormPoint(0.0, 0.0), 256, 256, 0.08);
  CHECK(corner.x0 == 0);
  CHECK(corner.y0 == 0);
  CHECK(corner.x1 == 9);
  CHECK(corner.y1 == 9);

  // edge floor(0.08 * 8) = 0: nothing revealed
  PixelRect none = mask_square(NormPoint(0.5, 0.5), 8, 8, 0.08);
  CHECK(none.empty());
}

TEST_CASE("apply_mask reveals exactly the squares") {
  Frame f = Frame::filled(0, 256, 256, 200, 150, 100);
  RenderSpec spec;

  Frame center = apply_mask(f, {NormPoint(0.5, 0.5)}, spec);
  int preserved = 0;
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 256; ++x) {
      if (pixel_is(center, x, y, 200, 150, 100)) {
        ++preserved;
        CHECK(x >= 118);
        CHECK(x <= 137);
        CHECK(y >= 118);
        CHECK(y <= 137);
      } else {
        CHECK(pixel_is(center, x, y, 0, 0, 0));
      }
    }
  }
  CHECK(preserved == 400);

  Frame corner = apply_mask(f, {NormPoint(0.0, 0.0)}, spec);
  CHECK(count_nonblack(corner) == 100);

  Frame empty = apply_mask(f, {}, spec);
  CHECK(count_nonblack(empty) == 0);

  // overlapping squares preserve the union, not double-count
  Frame overlap =
      apply_mask(f, {NormPoint(0.5, 0.5), NormPoint(0.5, 0.5)}, spec);
  CHECK(count_nonblack(overlap) == 400);
}

TEST_CASE("path gradient walks dark red to light red") {
  Frame black = Frame::filled(0, 256, 256, 0, 0, 0);
  RenderSpec spec;
  std::vector<NormPoint> path{NormPoint(0.1, 0.5), NormPoint(0.3, 0.5),
                              NormPoint(0.5, 0.5), NormPoint(0.7, 0.5),
                              NormPoint(0.9, 0.5)};
  Frame out = draw_path(black, path, spec);

  // segment interiors, sampled away from the junction overwrites
  CHECK(pixel_is(out, 51, 128, 0x40, 0, 0));
  CHECK(pixel_is(out, 102, 128, 0x80, 0, 0));
  CHECK(pixel_is(out, 153, 128, 0xBF, 0, 0));
  CHECK(pixel_is(out, 204, 128, 0xFF, 0, 0));

  // line width 3: rows 127..129 colored, 126 and 130 untouched
  CHECK(pixel_is(out, 51, 127, 0x40, 0, 0));
  CHECK(pixel_is(out, 51, 129, 0x40, 0, 0));
  CHECK(pixel_is(out, 51, 126, 0, 0, 0));
  CHECK(pixel_is(out, 51, 130, 0, 0, 0));

  // nothing outside the path band
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 256; ++x) {
      if (y < 127 || y > 129) {
        CHECK(pixel_is(out, x, y, 0, 0, 0));
      }
    }
  }
}

TEST_CASE("single-segment paths use the start color") {
  Frame black = Frame::filled(0, 256, 256, 0, 0, 0);
  RenderSpec spec;
  Frame out = draw_path(
      black, {NormPoint(0.2, 0.5), NormPoint(0.8, 0.5)}, spec);
  CHECK(pixel_is(out, 128, 128, 0x40, 0, 0));
}

TEST_CASE("one-point paths render a disc in the end color") {
  Frame black = Frame::filled(0, 256, 256, 0, 0, 0);
  RenderSpec spec;
  Frame out = draw_path(black, {NormPoint(0.5, 0.5)}, spec);
  CHECK(pixel_is(out, 128, 128, 0xFF, 0, 0));
  CHECK(pixel_is(out, 131, 128, 0xFF, 0, 0));  // radius 3 boundary
  CHECK(pixel_is(out, 132, 128, 0, 0, 0));
  CHECK(pixel_is(out, 130, 130, 0xFF, 0, 0));  // 2^2 + 2^2 = 8 <= 9: inside
  CHECK(pixel_is(out, 131, 131, 0, 0, 0));     // 18 > 9: outside
}

TEST_CASE("zero-length interior segments render discs in segment color") {
  Frame black = Frame::filled(0, 256, 256, 0, 0, 0);
  RenderSpec spec;
  std::vector<NormPoint> path{NormPoint(0.5, 0.5), NormPoint(0.5, 0.5),
                              NormPoint(0.9, 0.5)};
  Frame out = draw_path(black, path, spec);
  // disc from the first (degenerate) segment survives off the line band
  CHECK(pixel_is(out, 128, 131, 0x40, 0, 0));
  // second segment is the last of two, colored 0xFF
  CHECK(pixel_is(out, 200, 128, 0xFF, 0, 0));
}

TEST_CASE("diagonal lines are connected") {
  Frame black = Frame::filled(0, 256, 256, 0, 0, 0);
  RenderSpec spec;
  spec.line_width = 1;
  Frame out = draw_path(
      black, {NormPoint(0.1, 0.1), NormPoint(0.9, 0.9)}, spec);
  // dx == dy: exactly the pixel diagonal from (26,26) to (230,230)
  CHECK(count_nonblack(out) == 205);
  for (int i = 26; i <= 230; ++i) CHECK(pixel_is(out, i, i, 0x40, 0, 0));
}

TEST_CASE("empty path leaves the frame untouched") {
  Frame f = Frame::filled(0, 64, 64, 7, 7, 7);
  RenderSpec spec;
  Frame out = draw_path(f, {}, spec);
  CHECK(out.pixels == f.pixels);
}

TEST_CASE("compose layers mask then path") {
  Frame f = Frame::filled(0, 256, 256, 10, 20, 30);
  RenderSpec spec;
  AnnotationBundle bundle;
  bundle.mask = {NormPoint(0.2, 0.2)};
  bundle.path = {NormPoint(0.6, 0.5), NormPoint(0.8, 0.5)};
  Frame out = compose(f, bundle, spec);

  // mask square around (51,51) shows the original pixels
  CHECK(pixel_is(out, 51, 51, 10, 20, 30));
  // path over blacked-out area is still drawn
  CHECK(pixel_is(out, 180, 128, 0x40, 0, 0));
  // everything else black
  CHECK(pixel_is(out, 10, 200, 0, 0, 0));

  AnnotationBundle no_mask;
  no_mask.path = {NormPoint(0.6, 0.5), NormPoint(0.8, 0.5)};
  Frame unmasked = compose(f, no_mask, spec);
  CHECK(pixel_is(unmasked, 10, 200, 10, 20, 30));  // frame kept
  CHECK(pixel_is(unmasked, 180, 128, 0x40, 0, 0));

  AnnotationBundle no_path;
  no_path.mask = {NormPoint(0.2, 0.2)};
  Frame masked = compose(f, no_path, spec);
  CHECK(pixel_is(masked, 51, 51, 10, 20, 30));
  CHECK(pixel_is(masked, 180, 128, 0, 0, 0));

  AnnotationBundle nothing;
  Frame untouched = compose(f, nothing, spec);
  CHECK(untouched.pixels == f.pixels);
}
