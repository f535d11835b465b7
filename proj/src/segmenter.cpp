#include "peek/segmenter.hpp"

#include <algorithm>
#include <string>

namespace peek {

namespace {

// Max pairwise displacement of one kept track inside frames [t0, t0+window]
// stays below still_eps.
bool stationary(const TaskPointSet& points, int k, int t0, int window,
                double eps_sq) {
  for (int a = t0; a <= t0 + window; ++a) {
    for (int b = a + 1; b <= t0 + window; ++b) {
      if (squared_distance(points.at(k, a), points.at(k, b)) >= eps_sq)
        return false;
    }
  }
  return true;
}

}  // namespace

StopSeries stop_counts(const TaskPointSet& points, int window,
                       double still_eps) {
  if (window < 1) {
    throw ConfigError("stop window must be >= 1, got " +
                      std::to_string(window));
  }
  if (still_eps <= 0.0) {
    throw ConfigError("stationarity epsilon must be > 0, got " +
                      std::to_string(still_eps));
  }
  StopSeries series;
  series.window = window;
  series.num_frames = points.num_frames;
  if (points.num_frames <= window) return series;  // single-span fallback

  const double eps_sq = still_eps * still_eps;
  series.counts.resize(points.num_frames - window, 0);
  for (int t = 0; t < points.num_frames - window; ++t) {
    int n = 0;
    for (int k = 0; k < points.size(); ++k) {
      if (stationary(points, k, t, window, eps_sq)) ++n;
    }
    series.counts[t] = n;
  }
  return series;
}

TwoMeans two_means(const std::vector<int>& values) {
  TwoMeans result;
  if (values.empty()) {
    result.degenerate = true;
    return result;
  }
  std::vector<int> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const int n = static_cast<int>(sorted.size());
  if (sorted.front() == sorted.back()) {
    result.degenerate = true;
    result.threshold = sorted.front();
    return result;
  }

  // In 1-D the optimal 2-clustering is contiguous in sorted order, so every
  // candidate is a threshold partition: the first s values vs the rest.
  std::vector<double> sum(n + 1, 0.0), sumsq(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + sorted[i];
    sumsq[i + 1] = sumsq[i] + static_cast<double>(sorted[i]) * sorted[i];
  }
  auto sse_range = [&](int lo, int hi) {  // [lo, hi)
    const double s = sum[hi] - sum[lo];
    const double ss = sumsq[hi] - sumsq[lo];
    return ss - s * s / (hi - lo);
  };

  double best = -1.0;
  int best_s = -1;
  for (int s = 1; s < n; ++s) {
    if (sorted[s - 1] == sorted[s]) continue;  // equal values share a cluster
    const double sse = sse_range(0, s) + sse_range(s, n);
    if (best_s < 0 || sse < best) {  // ties keep the lowest threshold
      best = sse;
      best_s = s;
    }
  }
  result.threshold = sorted[best_s - 1];
  result.sse = best;
  return result;
}

std::vector<SubtrajectorySpan> kmeans2_split(const StopSeries& series) {
  const int T = series.num_frames;
  if (T < 2) throw DataError("cannot split a trajectory shorter than 2 frames");

  const TwoMeans clusters = two_means(series.counts);
  std::vector<SubtrajectorySpan> spans;
  if (clusters.degenerate) {
    spans.push_back({0, T, std::nullopt});
    return spans;
  }

  // Midpoints of maximal runs of manipulation (high-cluster) counts.
  struct Split {
    int frame;
    std::pair<int, int> section;
  };
  std::vector<Split> splits;
  const int n = static_cast<int>(series.counts.size());
  int run_start = -1;
  for (int t = 0; t <= n; ++t) {
    const bool high = t < n && series.counts[t] > clusters.threshold;
    if (high && run_start < 0) run_start = t;
    if (!high && run_start >= 0) {
      const int run_end = t - 1;
      splits.push_back({(run_start + run_end) / 2, {run_start, run_end}});
      run_start = -1;
    }
  }

  int cursor = 0;
  std::optional<std::pair<int, int>> cursor_section;
  for (const Split& s : splits) {
    if (s.frame > cursor) {
      spans.push_back({cursor, s.frame, cursor_section});
      cursor = s.frame;
      cursor_section = s.section;
    } else if (s.frame == cursor) {
      // A split at the current boundary replaces its provenance.
      cursor_section = s.section;
    }
  }
  spans.push_back({cursor, T, cursor_section});

  // A span needs at least a start and an end state.
  while (spans.size() > 1 && spans.front().end - spans.front().start < 2) {
    spans[1].start = spans[0].start;
    spans[1].source_section = std::nullopt;
    spans.erase(spans.begin());
  }
  for (std::size_t i = 1; i < spans.size();) {
    if (spans[i].end - spans[i].start < 2) {
      spans[i - 1].end = spans[i].end;
      spans.erase(spans.begin() + i);
    } else {
      ++i;
    }
  }
  return spans;
}

}  // namespace peek
