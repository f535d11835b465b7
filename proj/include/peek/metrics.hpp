#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "peek/types.hpp"

namespace peek {

struct MetricsReport {
  double dtw = 0.0;
  double first_l2 = 0.0;
  double last_l2 = 0.0;
  double iou = 0.0;
  int n_samples = 0;       // matched pairs the averages cover
  int unmatched_pred = 0;  // predictions with no ground-truth partner
  int unmatched_gt = 0;    // ground truth with no prediction
};

// Dynamic time warping with Euclidean local cost, normalized by the length
// of the optimal alignment path (cost ties resolved toward the longest
// alignment).
double dtw_distance(const std::vector<NormPoint>& a,
                    const std::vector<NormPoint>& b);

// (first-point distance, last-point distance).
std::pair<double, double> endpoint_l2(const std::vector<NormPoint>& a,
                                      const std::vector<NormPoint>& b);

// raster x raster binary occupancy grid of the mask squares, row-major.
std::vector<std::uint8_t> rasterize_mask(const std::vector<NormPoint>& mask,
                                         double edge_frac, int raster);

double mask_iou(const std::vector<NormPoint>& a,
                const std::vector<NormPoint>& b, double edge_frac, int raster);

using AnnotationCorpus = std::map<std::string, std::vector<AnnotationBundle>>;

// Pairs samples by trajectory id and query frame (k-th with k-th when a
// frame repeats, both sides ordered by serialized text) and averages the
// per-pair metrics. Unmatched samples are counted, never dropped silently;
// zero matches is an error.
MetricsReport evaluate_corpus(const AnnotationCorpus& pred,
                              const AnnotationCorpus& gt,
                              double edge_frac = 0.08, int raster = 256);

}  // namespace peek
