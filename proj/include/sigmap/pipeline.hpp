#pragma once

// End-to-end wiring: extremes, strokes, similarity layers, and the mapped
// path for a reference/test trajectory pair.

#include <stdexcept>
#include <vector>

#include "sigmap/dtw.hpp"
#include "sigmap/extremes.hpp"
#include "sigmap/segmentation.hpp"
#include "sigmap/similarity.hpp"
#include "sigmap/svc.hpp"

namespace sigmap {

struct MappingRun {
  std::vector<Extreme> ref_extremes;
  std::vector<Extreme> test_extremes;
  std::vector<Stroke> ref_strokes;
  std::vector<Stroke> test_strokes;
  LayeredMatrix layers;
  MapResult result;
};

inline MappingRun run_mapping(const Trajectory& ref, const Trajectory& test,
                              const DetectionParams& params = {}, bool lbr = true) {
  if (ref.empty() || test.empty()) throw std::invalid_argument("empty trajectory");
  MappingRun run;
  run.ref_extremes = detect_extremes(ref, params);
  run.test_extremes = detect_extremes(test, params);
  run.ref_strokes = segment_strokes(ref, run.ref_extremes);
  run.test_strokes = segment_strokes(test, run.test_extremes);
  run.layers = build_similarity_layers(run.ref_strokes, run.test_strokes, ref, test);
  run.result = map_strokes(run.layers, lbr);
  return run;
}

}  // namespace sigmap
