#pragma once

// Stroke segmentation. Borders are the y-maxima and pen events of a
// pen-down run; consecutive borders inside one run delimit a stroke, and
// adjacent strokes share their border sample. Pen-up spans produce no
// strokes. A one-sample run is a dot stroke.

#include <string>
#include <vector>

#include "sigmap/extremes.hpp"
#include "sigmap/svc.hpp"

namespace sigmap {

struct Stroke {
  std::string traj_ref;
  std::size_t start_index = 0;
  std::size_t end_index = 0;  // inclusive; equals start_index only for dots
  Extreme border_start;
  Extreme border_end;
  std::vector<Extreme> interior_extremes;  // strictly between the borders

  bool operator==(const Stroke&) const = default;
  bool is_dot() const { return start_index == end_index; }
  std::size_t sample_count() const { return end_index - start_index + 1; }
};

// `extremes` is the sorted union produced by detect_extremes. Runs missing
// their boundary events (possible when a caller hands in a thinner list)
// still segment: the touchdown/takeoff borders are synthesized.
inline std::vector<Stroke> segment_strokes(const Trajectory& traj,
                                           const std::vector<Extreme>& extremes) {
  std::vector<Stroke> strokes;
  for (const PenRun& run : pen_runs(traj)) {
    if (run.kind != RunKind::Down) continue;

    if (run.length() == 1) {
      Extreme dot{run.start, ExtremeKind::Dot, kDotClass, Rotation::None};
      for (const Extreme& e : extremes)
        if (e.index == run.start && e.kind == ExtremeKind::Dot) dot = e;
      strokes.push_back(Stroke{traj.source_id, run.start, run.start, dot, dot, {}});
      continue;
    }

    std::vector<Extreme> borders;
    for (const Extreme& e : extremes) {
      if (e.index < run.start || e.index > run.end || !is_border_kind(e.kind)) continue;
      if (!borders.empty() && borders.back().index == e.index) continue;
      borders.push_back(e);
    }
    if (borders.empty() || borders.front().index != run.start)
      borders.insert(borders.begin(),
                     Extreme{run.start, ExtremeKind::Touchdown, kTouchdownClass, Rotation::None});
    if (borders.back().index != run.end)
      borders.push_back(Extreme{run.end, ExtremeKind::Takeoff, kTakeoffClass, Rotation::None});

    for (std::size_t b = 0; b + 1 < borders.size(); ++b) {
      Stroke s;
      s.traj_ref = traj.source_id;
      s.start_index = borders[b].index;
      s.end_index = borders[b + 1].index;
      s.border_start = borders[b];
      s.border_end = borders[b + 1];
      for (const Extreme& e : extremes)
        if (e.index > s.start_index && e.index < s.end_index) s.interior_extremes.push_back(e);
      strokes.push_back(std::move(s));
    }
  }
  return strokes;
}

// A stroke bounded by two y-maxima should hold a y-minimum between them;
// strokes with a pen-event border (dots included) are exempt.
inline bool validate_stroke(const Stroke& s) {
  if (is_pen_event(s.border_start.kind) || is_pen_event(s.border_end.kind)) return true;
  for (const Extreme& e : s.interior_extremes)
    if (e.kind == ExtremeKind::YMin) return true;
  return false;
}

}  // namespace sigmap
