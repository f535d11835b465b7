#include "peek/relevance.hpp"

#include <algorithm>
#include <string>

namespace peek {

namespace {

// Max pairwise displacement > threshold, with a bounding-box shortcut: the
// max pairwise distance is bounded below by either axis extent and above by
// the box diagonal.
bool moves(const TrackSet& tracks, int track, double threshold) {
  const int T = tracks.num_frames;
  double min_x = 1.0, max_x = 0.0, min_y = 1.0, max_y = 0.0;
  for (int t = 0; t < T; ++t) {
    const NormPoint& p = tracks.at(track, t);
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double ext_x = max_x - min_x;
  const double ext_y = max_y - min_y;
  if (std::max(ext_x, ext_y) > threshold) return true;
  if (ext_x * ext_x + ext_y * ext_y <= threshold * threshold) return false;
  const double thr_sq = threshold * threshold;
  for (int a = 0; a < T; ++a) {
    for (int b = a + 1; b < T; ++b) {
      if (squared_distance(tracks.at(track, a), tracks.at(track, b)) > thr_sq)
        return true;
    }
  }
  return false;
}

}  // namespace

std::vector<NormPoint> TaskPointSet::at_frame(int frame) const {
  std::vector<NormPoint> out;
  out.reserve(kept_ids.size());
  for (int k = 0; k < size(); ++k) out.push_back(at(k, frame));
  return out;
}

std::vector<NormPoint> TaskPointSet::final_positions() const {
  return at_frame(num_frames - 1);
}

TaskPointSet filter_moving(const TrackSet& tracks, double threshold) {
  if (threshold <= 0.0 || threshold >= 1.0) {
    throw ConfigError("movement threshold must be in (0,1), got " +
                      std::to_string(threshold));
  }
  if (!tracks.valid()) throw DataError("invalid track set");

  TaskPointSet out;
  out.num_frames = tracks.num_frames;
  for (int i = 0; i < tracks.num_points; ++i) {
    if (!moves(tracks, i, threshold)) continue;
    out.kept_ids.push_back(i);
    for (int t = 0; t < tracks.num_frames; ++t) {
      out.positions.push_back(tracks.at(i, t));
    }
  }
  if (out.kept_ids.empty()) {
    throw SkipTrajectory("no tracks moved more than " +
                         std::to_string(threshold) + " of the image");
  }
  return out;
}

}  // namespace peek
