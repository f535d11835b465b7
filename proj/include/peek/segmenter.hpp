#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "peek/relevance.hpp"
#include "peek/types.hpp"

namespace peek {

// counts[t] = number of kept tracks stationary over frames [t, t+window],
// defined for t in [0, num_frames - window). Empty counts signal the
// single-span fallback (trajectory no longer than the window).
struct StopSeries {
  std::vector<int> counts;
  int window = 5;
  int num_frames = 0;
};

StopSeries stop_counts(const TaskPointSet& points, int window,
                       double still_eps);

// Half-open frame interval [start, end). source_section is the manipulation
// section (first, last count index) whose midpoint produced the span's start
// boundary, when one did.
struct SubtrajectorySpan {
  int start = 0;
  int end = 0;
  std::optional<std::pair<int, int>> source_section;
};

// Optimal 1-D 2-means of a count series, found by scanning threshold
// partitions of the sorted values. Values <= threshold form the low cluster.
// degenerate is set when all values are equal and no 2-clustering exists.
struct TwoMeans {
  double threshold = 0.0;
  double sse = 0.0;
  bool degenerate = false;
};

TwoMeans two_means(const std::vector<int>& values);

// Clusters the stop counts into movement (low) and manipulation (high)
// frames, splits at the midpoint of each maximal manipulation run, and
// returns the resulting partition of [0, num_frames). Spans shorter than 2
// frames are merged into their predecessor (the first span merges forward).
// Degenerate series yield the single span [0, num_frames).
std::vector<SubtrajectorySpan> kmeans2_split(const StopSeries& series);

}  // namespace peek
