#include "peek/metrics.hpp"

#include <algorithm>
#include <deque>

#include "peek/renderer.hpp"

namespace peek {

double dtw_distance(const std::vector<NormPoint>& a,
                    const std::vector<NormPoint>& b) {
  if (a.empty() || b.empty()) throw DataError("DTW over an empty path");
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  std::vector<double> cost(static_cast<std::size_t>(n) * m);
  std::vector<int> len(static_cast<std::size_t>(n) * m);
  auto idx = [m](int i, int j) { return static_cast<std::size_t>(i) * m + j; };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double local = distance(a[i], b[j]);
      if (i == 0 && j == 0) {
        cost[idx(0, 0)] = local;
        len[idx(0, 0)] = 1;
        continue;
      }
      double best = -1.0;
      int best_len = 0;
      auto consider = [&](int pi, int pj) {
        if (pi < 0 || pj < 0) return;
        const double c = cost[idx(pi, pj)];
        const int l = len[idx(pi, pj)];
        if (best < 0.0 || c < best || (c == best && l > best_len)) {
          best = c;
          best_len = l;
        }
      };
      consider(i - 1, j - 1);
      consider(i - 1, j);
      consider(i, j - 1);
      cost[idx(i, j)] = best + local;
      len[idx(i, j)] = best_len + 1;
    }
  }
  return cost[idx(n - 1, m - 1)] / len[idx(n - 1, m - 1)];
}

std::pair<double, double> endpoint_l2(const std::vector<NormPoint>& a,
                                      const std::vector<NormPoint>& b) {
  if (a.empty() || b.empty()) throw DataError("endpoint L2 over an empty path");
  return {distance(a.front(), b.front()), distance(a.back(), b.back())};
}

std::vector<std::uint8_t> rasterize_mask(const std::vector<NormPoint>& mask,
                                         double edge_frac, int raster) {
  if (raster < 1) {
    throw ConfigError("raster size must be >= 1, got " +
                      std::to_string(raster));
  }
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(raster) * raster, 0);
  for (const NormPoint& p : mask) {
    const PixelRect r = mask_square(p, raster, raster, edge_frac);
    if (r.empty()) continue;
    for (int y = r.y0; y <= r.y1; ++y) {
      std::fill(grid.begin() + static_cast<std::size_t>(y) * raster + r.x0,
                grid.begin() + static_cast<std::size_t>(y) * raster + r.x1 + 1,
                std::uint8_t{1});
    }
  }
  return grid;
}

double mask_iou(const std::vector<NormPoint>& a,
                const std::vector<NormPoint>& b, double edge_frac,
                int raster) {
  const auto ga = rasterize_mask(a, edge_frac, raster);
  const auto gb = rasterize_mask(b, edge_frac, raster);
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    inter += ga[i] & gb[i];
    uni += ga[i] | gb[i];
  }
  if (uni == 0) return 1.0;  // two empty rasters agree everywhere
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Deterministic within-frame order for samples sharing a query frame.
std::vector<const AnnotationBundle*> sorted_by_frame(
    const std::vector<AnnotationBundle>& bundles) {
  std::vector<const AnnotationBundle*> out;
  out.reserve(bundles.size());
  for (const auto& b : bundles) out.push_back(&b);
  std::stable_sort(out.begin(), out.end(),
                   [](const AnnotationBundle* x, const AnnotationBundle* y) {
                     if (x->query_frame != y->query_frame)
                       return x->query_frame < y->query_frame;
                     return x->ans < y->ans;
                   });
  return out;
}

}  // namespace

MetricsReport evaluate_corpus(const AnnotationCorpus& pred,
                              const AnnotationCorpus& gt, double edge_frac,
                              int raster) {
  MetricsReport report;
  double sum_dtw = 0.0, sum_first = 0.0, sum_last = 0.0, sum_iou = 0.0;

  static const std::vector<AnnotationBundle> kNone;
  std::vector<std::string> ids;
  for (const auto& [id, _] : pred) ids.push_back(id);
  for (const auto& [id, _] : gt) {
    if (!pred.count(id)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());

  for (const std::string& id : ids) {
    const auto pit = pred.find(id);
    const auto git = gt.find(id);
    const auto ps = sorted_by_frame(pit == pred.end() ? kNone : pit->second);
    const auto gs = sorted_by_frame(git == gt.end() ? kNone : git->second);

    std::map<int, std::deque<const AnnotationBundle*>> gt_by_frame;
    for (const AnnotationBundle* g : gs) gt_by_frame[g->query_frame].push_back(g);

    for (const AnnotationBundle* p : ps) {
      auto it = gt_by_frame.find(p->query_frame);
      if (it == gt_by_frame.end() || it->second.empty()) {
        report.unmatched_pred += 1;
        continue;
      }
      const AnnotationBundle* g = it->second.front();
      it->second.pop_front();
      if (p->path.empty() || g->path.empty()) {
        throw DataError("annotation with an empty path in trajectory " + id);
      }
      sum_dtw += dtw_distance(p->path, g->path);
      const auto [first, last] = endpoint_l2(p->path, g->path);
      sum_first += first;
      sum_last += last;
      sum_iou += mask_iou(p->mask, g->mask, edge_frac, raster);
      report.n_samples += 1;
    }
    for (const auto& [frame, left] : gt_by_frame) {
      report.unmatched_gt += static_cast<int>(left.size());
    }
  }

  if (report.n_samples == 0) {
    throw DataError("no prediction matched any ground-truth sample");
  }
  report.dtw = sum_dtw / report.n_samples;
  report.first_l2 = sum_first / report.n_samples;
  report.last_l2 = sum_last / report.n_samples;
  report.iou = sum_iou / report.n_samples;
  return report;
}

}  // namespace peek
