#pragma once

// Window-unique local extremes and the 19-class extreme taxonomy.
//
// A sample t is an axis extreme when it is the *unique* maximum (or
// minimum) of the index window t-l .. t+l, truncated at the series ends;
// plateaus therefore never qualify. A second rule thins the survivors:
// scanning left to right, an extreme closer than or exactly S samples to
// the previously accepted extreme of the same kind is discarded.
//
// Axis extremes interior to a pen-down run are classified into classes
// 0..15 from three facts about the neighbouring samples:
//
//   bits 3-2  quartet holding the stroke origin p(t-1), relative to p(t):
//               top-left 00, top-right 01, bottom-left 10, bottom-right 11
//             where "top" is the larger raw y value. A neighbour sitting
//             exactly on a quartet axis is rotated about p(t) toward the
//             other neighbour via the shorter way; if that is ambiguous
//             the positive-cross direction (the same sign convention as
//             rotation_of) is used.
//   bit 1     1 when both neighbours fall in the same quartet, 0 when the
//             stroke crosses into an adjacent quartet.
//   bit 0     1 when the turn p(t-1) -> p(t) -> p(t+1) is clockwise.
//
// Pen events occupy classes 16 (touchdown: first sample of a pen-down
// run), 17 (takeoff: last sample) and 18 (dot: a one-sample run, which
// yields a dot instead of a touchdown/takeoff pair). A pen event wins
// over an axis extreme at the same index, and an axis extreme without two
// in-run neighbours resolves to its adjacent pen event.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigmap/svc.hpp"

namespace sigmap {

enum class Polarity { Max, Min };
enum class Rotation { Clockwise, Anticlockwise, None };
enum class ExtremeKind { XMax, XMin, YMax, YMin, Touchdown, Takeoff, Dot };

inline constexpr int kTouchdownClass = 16;
inline constexpr int kTakeoffClass = 17;
inline constexpr int kDotClass = 18;

struct DetectionParams {
  std::size_t window = 3;  // l: half-width of the uniqueness window
  std::size_t gap = 5;     // S: same-kind extremes must be > S samples apart
};

struct Extreme {
  std::size_t index = 0;
  ExtremeKind kind = ExtremeKind::XMax;
  int class_id = 0;
  Rotation rotation = Rotation::None;
  bool operator==(const Extreme&) const = default;
};

inline bool is_pen_event(ExtremeKind k) {
  return k == ExtremeKind::Touchdown || k == ExtremeKind::Takeoff || k == ExtremeKind::Dot;
}

inline bool is_border_kind(ExtremeKind k) {
  return k == ExtremeKind::YMax || is_pen_event(k);
}

inline const char* to_string(ExtremeKind k) {
  switch (k) {
    case ExtremeKind::XMax: return "xmax";
    case ExtremeKind::XMin: return "xmin";
    case ExtremeKind::YMax: return "ymax";
    case ExtremeKind::YMin: return "ymin";
    case ExtremeKind::Touchdown: return "touchdown";
    case ExtremeKind::Takeoff: return "takeoff";
    case ExtremeKind::Dot: return "dot";
  }
  return "?";
}

inline const char* to_string(Rotation r) {
  switch (r) {
    case Rotation::Clockwise: return "cw";
    case Rotation::Anticlockwise: return "acw";
    case Rotation::None: return "-";
  }
  return "?";
}

class ClassifyError : public std::runtime_error {
 public:
  explicit ClassifyError(const std::string& what) : std::runtime_error(what) {}
};

// Indices whose value is the unique max (or min) of the truncated window,
// thinned by the same-kind gap rule. Single-pass monotonic deque; the value
// at the deque front is the window extreme, and a second entry of equal
// value exposes a duplicate.
inline std::vector<std::size_t> detect_axis_extremes(std::span<const std::int64_t> series,
                                                     const DetectionParams& params,
                                                     Polarity polarity) {
  const std::size_t n = series.size();
  const std::size_t l = params.window;
  std::vector<std::size_t> out;
  if (n == 0) return out;

  auto better = [polarity](std::int64_t a, std::int64_t b) {
    return polarity == Polarity::Max ? a > b : a < b;
  };

  std::deque<std::size_t> window;  // indices; values weaken toward the back
  std::size_t fed = 0;
  std::optional<std::size_t> last_accepted;

  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t hi = std::min(n - 1, t + l);
    for (; fed <= hi; ++fed) {
      while (!window.empty() && better(series[fed], series[window.back()])) window.pop_back();
      window.push_back(fed);
    }
    while (t >= l + window.front() + 1) window.pop_front();

    bool unique = window.front() == t &&
                  (window.size() == 1 || series[window[1]] != series[t]);
    if (!unique) continue;
    if (last_accepted && t - *last_accepted <= params.gap) continue;
    out.push_back(t);
    last_accepted = t;
  }
  return out;
}

// Turn direction of p1 -> p2 -> p3 by the cross product of the two step
// vectors; zero (collinear) counts as clockwise.
inline Rotation rotation_of(Point p1, Point p2, Point p3) {
  std::int64_t c = (p2.x - p1.x) * (p3.y - p2.y) - (p2.y - p1.y) * (p3.x - p2.x);
  return c >= 0 ? Rotation::Clockwise : Rotation::Anticlockwise;
}

// 2-bit quartet code of `neighbor` around `center`. On-axis neighbours are
// nudged toward `opposite` via the shorter rotation; when that direction is
// ambiguous (opposite also on the same line, or coincident with the center)
// the positive-cross direction decides.
inline int quartet_of(Point neighbor, Point center, Point opposite) {
  const std::int64_t dx = neighbor.x - center.x;
  const std::int64_t dy = neighbor.y - center.y;
  if (dx == 0 && dy == 0)
    throw ClassifyError("quartet undefined: neighbor coincides with the extreme");

  auto code = [](bool bottom, bool right) { return (bottom ? 2 : 0) | (right ? 1 : 0); };
  if (dx != 0 && dy != 0) return code(dy < 0, dx > 0);

  const std::int64_t wx = opposite.x - center.x;
  const std::int64_t wy = opposite.y - center.y;
  const bool positive = dx * wy - dy * wx >= 0;  // shorter way toward `opposite`
  if (dx == 0)
    return dy > 0 ? code(false, !positive)  // above: -> top-left / top-right
                  : code(true, positive);   // below: -> bottom-right / bottom-left
  return dx > 0 ? code(!positive, true)     // right: -> top-right / bottom-right
                : code(positive, false);    // left:  -> bottom-left / top-left
}

inline int compose_class(int quartet, bool single_quartet, bool clockwise) {
  return (quartet << 2) | (single_quartet ? 2 : 0) | (clockwise ? 1 : 0);
}

// Pen events for every pen-down run: touchdown + takeoff, or a dot for a
// one-sample run.
inline std::vector<Extreme> detect_pen_events(const Trajectory& traj) {
  std::vector<Extreme> events;
  for (const PenRun& run : pen_runs(traj)) {
    if (run.kind != RunKind::Down) continue;
    if (run.length() == 1) {
      events.push_back(Extreme{run.start, ExtremeKind::Dot, kDotClass, Rotation::None});
    } else {
      events.push_back(Extreme{run.start, ExtremeKind::Touchdown, kTouchdownClass, Rotation::None});
      events.push_back(Extreme{run.end, ExtremeKind::Takeoff, kTakeoffClass, Rotation::None});
    }
  }
  return events;
}

namespace detail {

inline std::optional<PenRun> run_containing(const std::vector<PenRun>& runs, std::size_t index) {
  for (const PenRun& run : runs)
    if (index >= run.start && index <= run.end) return run;
  return std::nullopt;
}

// Pen event the index collapses to when quartet classification is not
// possible: the event of its own run boundary, or the nearest boundary
// event of an adjacent pen-down run for indices inside pen-up spans.
inline Extreme adjacent_pen_event(const Trajectory& traj, std::size_t index) {
  std::optional<Extreme> best;
  std::size_t best_dist = 0;
  for (const Extreme& e : detect_pen_events(traj)) {
    std::size_t dist = e.index > index ? e.index - index : index - e.index;
    if (!best || dist < best_dist) {
      best = e;
      best_dist = dist;
    }
  }
  if (!best) throw ClassifyError("no pen-down run to resolve the extreme against");
  return *best;
}

inline Extreme classify_with_runs(const Trajectory& traj, const std::vector<PenRun>& runs,
                                  std::size_t e, ExtremeKind kind) {
  if (e >= traj.size()) throw std::out_of_range("extreme index out of range");
  std::optional<PenRun> run = run_containing(runs, e);
  if (!run || run->kind == RunKind::Up || e == run->start || e == run->end)
    return adjacent_pen_event(traj, e);

  const Point p1 = traj.points[e - 1].pos();
  const Point p2 = traj.points[e].pos();
  const Point p3 = traj.points[e + 1].pos();
  if (p1 == p2 && p2 == p3)
    throw ClassifyError("degenerate geometry: all three points coincide");

  const int origin = quartet_of(p1, p2, p3);
  const int destination = quartet_of(p3, p2, p1);
  const Rotation rot = rotation_of(p1, p2, p3);
  const int cls = compose_class(origin, origin == destination, rot == Rotation::Clockwise);
  return Extreme{e, kind, cls, rot};
}

}  // namespace detail

// Classification of one detected axis extreme. Interior extremes get a
// quartet class; indices that are (or have no in-run neighbours other than)
// a pen event resolve to that pen event's record.
inline Extreme classify_extreme(const Trajectory& traj, std::size_t e, ExtremeKind kind) {
  return detail::classify_with_runs(traj, pen_runs(traj), e, kind);
}

// Full detector: pen events plus classified axis extremes, sorted by index.
// An axis extreme coinciding with a pen event, or falling outside a
// pen-down run's interior, is absorbed by the adjacent pen event and emits
// no record of its own.
inline std::vector<Extreme> detect_extremes(const Trajectory& traj,
                                            const DetectionParams& params = {}) {
  const std::vector<PenRun> runs = pen_runs(traj);
  std::vector<Extreme> out = detect_pen_events(traj);

  std::vector<bool> taken(traj.size(), false);
  for (const Extreme& e : out) taken[e.index] = true;

  const std::vector<std::int64_t> xs = x_series(traj);
  const std::vector<std::int64_t> ys = y_series(traj);
  struct Pass {
    ExtremeKind kind;
    const std::vector<std::int64_t>* series;
    Polarity polarity;
  };
  const Pass passes[4] = {
      {ExtremeKind::XMax, &xs, Polarity::Max},
      {ExtremeKind::XMin, &xs, Polarity::Min},
      {ExtremeKind::YMax, &ys, Polarity::Max},
      {ExtremeKind::YMin, &ys, Polarity::Min},
  };
  for (const Pass& pass : passes) {
    for (std::size_t idx : detect_axis_extremes(*pass.series, params, pass.polarity)) {
      if (taken[idx]) continue;  // pen events win
      std::optional<PenRun> run = detail::run_containing(runs, idx);
      if (!run || run->kind == RunKind::Up) continue;  // pen-up travel: not drawn
      out.push_back(detail::classify_with_runs(traj, runs, idx, pass.kind));
    }
  }

  std::sort(out.begin(), out.end(), [](const Extreme& a, const Extreme& b) {
    if (a.index != b.index) return a.index < b.index;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return out;
}

}  // namespace sigmap
