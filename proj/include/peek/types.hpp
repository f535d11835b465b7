#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace peek {

// Normalized image coordinates: x is the column fraction, y the row fraction,
// origin at the top-left. Values are clamped to [0,1] on construction so
// off-frame detections stay representable instead of erroring.
struct NormPoint {
  double x = 0.0;
  double y = 0.0;

  NormPoint() = default;
  NormPoint(double px, double py)
      : x(std::clamp(px, 0.0, 1.0)), y(std::clamp(py, 0.0, 1.0)) {}

  bool operator==(const NormPoint& o) const { return x == o.x && y == o.y; }
};

inline double distance(const NormPoint& a, const NormPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const NormPoint& a, const NormPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Serialized coordinates are quantized to 2 decimal places; comparisons of
// round-tripped annotations are made at this quantization.
inline double quantize2(double v) { return std::round(v * 100.0) / 100.0; }

inline NormPoint quantize2(const NormPoint& p) {
  return NormPoint(quantize2(p.x), quantize2(p.y));
}

// Pixel -> normalized fraction, clamped. Width/height must be positive.
NormPoint normalize(double px, double py, int width, int height);

// Row-major RGB image for one timestep.
struct Frame {
  int index = 0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3

  static Frame filled(int index, int width, int height, std::uint8_t r,
                      std::uint8_t g, std::uint8_t b);

  std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (y * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (y * width + x);
  }
  bool valid() const {
    return width > 0 && height > 0 &&
           pixels.size() == static_cast<std::size_t>(width) * height * 3;
  }
};

struct Trajectory {
  std::vector<Frame> frames;
  std::string instruction;

  int length() const { return static_cast<int>(frames.size()); }
};

// Per-frame normalized positions of tracked points. Track-major storage:
// positions[track * num_frames + frame].
struct TrackSet {
  int num_points = 0;
  int num_frames = 0;
  int origin_frame = 0;  // frame the grid was initialized at
  std::vector<NormPoint> positions;

  const NormPoint& at(int track, int frame) const {
    return positions[static_cast<std::size_t>(track) * num_frames + frame];
  }
  NormPoint& at(int track, int frame) {
    return positions[static_cast<std::size_t>(track) * num_frames + frame];
  }
  bool valid() const {
    return num_points > 0 && num_frames > 0 &&
           positions.size() ==
               static_cast<std::size_t>(num_points) * num_frames;
  }
};

// One gripper detection. min/max corners are ordered componentwise when
// present is true.
struct GripperBox {
  int frame = 0;
  NormPoint lo;
  NormPoint hi;
  double confidence = 0.0;
  bool present = false;

  NormPoint center() const {
    return NormPoint((lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0);
  }
};

// Per-frame end-effector positions. interpolated[t] marks frames whose point
// was filled from neighboring detections rather than observed.
struct GripperPath {
  std::vector<NormPoint> points;
  std::vector<bool> interpolated;

  int length() const { return static_cast<int>(points.size()); }
};

// Final annotation for one query frame: simplified path, thinned mask and the
// serialized text target. Coordinates are stored at 2-decimal quantization so
// they match the text exactly.
struct AnnotationBundle {
  int query_frame = 0;
  std::vector<NormPoint> path;
  std::vector<NormPoint> mask;
  std::string ans;
};

struct PipelineConfig {
  double movement_threshold = 0.05;  // relevance filter, fraction of image
  int stop_window = 5;               // look-ahead frames (3 for high-frequency data)
  double still_eps = 0.01;           // stationarity epsilon for stop counting
  int grid_side = 15;                // tracker grid dimension, 15..30
  double rdp_eps_path = 0.05;
  double rdp_eps_mask = 0.1;
  double mask_edge_frac = 0.08;
  int h_label = 30;    // labeling query period
  int h_rollout = 25;  // closed-loop query period
  double trim_frac = 0.2;
  int resample_count = 5;
  int raster_size = 256;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data; message carries the file path and
// trajectory id where known.
class DataError : public Error {
 public:
  using Error::Error;
};

// Per-trajectory condition that makes the trajectory unusable (no gripper
// detections, no task-relevant points). The batch driver records the reason
// and moves on.
class SkipTrajectory : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace peek
