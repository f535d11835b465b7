#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peek/relevance.hpp"
#include "peek/segmenter.hpp"
#include "peek/types.hpp"

namespace peek {

// Unsimplified annotation for one query frame: the gripper path from the
// query frame to the span's last frame, and the task points at the query
// frame unioned with those at the span's last frame (deduplicated at
// 2-decimal quantization, first occurrence wins).
struct RawAnnotation {
  int query_frame = 0;
  std::vector<NormPoint> path;
  std::vector<NormPoint> mask;
};

RawAnnotation build_annotation(const SubtrajectorySpan& span,
                               const GripperPath& grip,
                               const TaskPointSet& task, int query_frame);

// Ramer-Douglas-Peucker with the point-to-segment distance criterion.
// Endpoints are always retained; every removed point lies within eps of the
// simplified polyline.
std::vector<NormPoint> rdp_simplify(const std::vector<NormPoint>& points,
                                    double eps);

// Greedy eps-packing of an unordered point set: points are visited in (y,x)
// order and dropped when within eps of an already kept point. Every dropped
// point stays within eps of some kept point.
std::vector<NormPoint> simplify_mask(const std::vector<NormPoint>& mask,
                                     double eps);

// `TRAJECTORY: [(x, y), ...] MASK: [(x, y), ...]` with coordinates at 2
// decimals. parse_annotation inverts it at that quantization.
std::string serialize_annotation(const std::vector<NormPoint>& path,
                                 const std::vector<NormPoint>& mask);

struct ParsedAnnotation {
  std::vector<NormPoint> path;
  std::vector<NormPoint> mask;
};

// Whitespace-tolerant parser for the grammar above. Throws ParseError with
// the byte offset of the first offending character.
ParsedAnnotation parse_annotation(const std::string& text);

// Drops frames before floor(trim_frac * num_frames), then emits each
// surviving span followed by resample_count copies whose start and end are
// jittered into the first and last trim_frac of the span. Deterministic for
// a fixed seed.
std::vector<SubtrajectorySpan> augment_spans(
    const std::vector<SubtrajectorySpan>& spans, int num_frames,
    double trim_frac, int resample_count, std::uint64_t seed);

}  // namespace peek
