#pragma once

// Five-section mapping-error evaluation and SVG rendering of a mapped pair.
//
// The machine cannot judge whether a stroke mapping is right, so judgment
// lives in a human-edited verdict file: one CSV row per (pair, section)
// with a 0/1 failed flag. A signature's strokes are split into five
// contiguous sections of near-equal size; a section fails when any mapping
// inside it does. The error is failed sections / (5 * pairs).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigmap/dtw.hpp"
#include "sigmap/segmentation.hpp"
#include "sigmap/svc.hpp"

namespace sigmap {

struct SectionVerdict {
  std::string pair_id;
  int section = 0;  // 1..5
  bool failed = false;
  bool operator==(const SectionVerdict&) const = default;
};

struct MappingErrorReport {
  std::size_t pairs_evaluated = 0;
  std::size_t failed_sections = 0;
  double error = 0;  // failed_sections / (5 * pairs_evaluated)
};

class VerdictError : public std::runtime_error {
 public:
  explicit VerdictError(const std::string& what) : std::runtime_error(what) {}
};

struct SectionRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open over stroke ordinals
  std::size_t size() const { return end - begin; }
  bool operator==(const SectionRange&) const = default;
};

// Five contiguous near-equal groups; the remainder goes to the earliest
// groups, so 7 -> [2,2,1,1,1] and 3 -> [1,1,1,0,0].
inline std::array<SectionRange, 5> divide_sections(std::size_t stroke_count) {
  if (stroke_count == 0) throw std::invalid_argument("divide_sections: no strokes");
  std::array<SectionRange, 5> out{};
  const std::size_t base = stroke_count / 5, extra = stroke_count % 5;
  std::size_t at = 0;
  for (std::size_t s = 0; s < 5; ++s) {
    const std::size_t len = base + (s < extra ? 1 : 0);
    out[s] = SectionRange{at, at + len};
    at += len;
  }
  return out;
}

namespace detail {

inline std::string quoted_pair(const std::string& id) { return "pair \"" + id + "\""; }

}  // namespace detail

// Exact arithmetic over complete verdict sets; every pair must carry
// sections 1..5 exactly once.
inline MappingErrorReport mapping_error(const std::vector<SectionVerdict>& verdicts) {
  if (verdicts.empty()) throw VerdictError("no verdicts given");

  std::vector<std::string> order;
  std::map<std::string, std::array<int, 6>> seen;
  std::map<std::string, std::size_t> failed;
  for (const SectionVerdict& v : verdicts) {
    if (v.section < 1 || v.section > 5)
      throw VerdictError(detail::quoted_pair(v.pair_id) + ": section out of range 1..5");
    if (!seen.count(v.pair_id)) order.push_back(v.pair_id);
    int& count = seen[v.pair_id][static_cast<std::size_t>(v.section)];
    if (count++)
      throw VerdictError(detail::quoted_pair(v.pair_id) + ": duplicate verdict for section " +
                         std::to_string(v.section));
    if (v.failed) ++failed[v.pair_id];
  }
  for (const std::string& id : order)
    for (int s = 1; s <= 5; ++s)
      if (!seen[id][static_cast<std::size_t>(s)])
        throw VerdictError(detail::quoted_pair(id) + ": missing verdict for section " +
                           std::to_string(s));

  MappingErrorReport report;
  report.pairs_evaluated = order.size();
  for (const auto& [id, n] : failed) report.failed_sections += n;
  report.error = static_cast<double>(report.failed_sections) /
                 (5.0 * static_cast<double>(report.pairs_evaluated));
  return report;
}

// CSV with a fixed header; '#' lines and blank lines are skipped.
inline std::vector<SectionVerdict> parse_verdicts(std::string_view text) {
  const std::vector<std::string_view> lines = detail::split_lines(text);
  std::vector<SectionVerdict> out;
  bool header_seen = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    const std::string where = "line " + std::to_string(li + 1) + ": ";
    if (detail::blank(line) || (!line.empty() && line.front() == '#')) continue;
    if (!header_seen) {
      if (line != "pair_id,section,failed")
        throw VerdictError(where + "expected header \"pair_id,section,failed\"");
      header_seen = true;
      continue;
    }
    std::array<std::string_view, 3> fields;
    std::size_t nfields = 0, start = 0;
    for (std::size_t p = 0; p <= line.size(); ++p) {
      if (p == line.size() || line[p] == ',') {
        if (nfields == 3) throw VerdictError(where + "expected 3 comma-separated fields");
        fields[nfields++] = line.substr(start, p - start);
        start = p + 1;
      }
    }
    if (nfields != 3) throw VerdictError(where + "expected 3 comma-separated fields");

    SectionVerdict v;
    v.pair_id = std::string(fields[0]);
    if (v.pair_id.empty()) throw VerdictError(where + "empty pair_id");
    try {
      const std::int64_t s = detail::parse_int(fields[1], li + 1);
      if (s < 1 || s > 5) throw VerdictError(where + "section must be an integer in 1..5");
      v.section = static_cast<int>(s);
    } catch (const ParseError&) {
      throw VerdictError(where + "section must be an integer in 1..5");
    }
    if (fields[2] == "0")
      v.failed = false;
    else if (fields[2] == "1")
      v.failed = true;
    else
      throw VerdictError(where + "failed must be 0 or 1");
    out.push_back(std::move(v));
  }
  if (!header_seen) throw VerdictError("line 1: expected header \"pair_id,section,failed\"");
  return out;
}

inline std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
  return buf;
}

inline std::string format_report(const MappingErrorReport& r) {
  std::string out;
  out += "pairs evaluated: " + std::to_string(r.pairs_evaluated) + "\n";
  out += "failed sections: " + std::to_string(r.failed_sections) + "\n";
  out += "mapping error: " + format_percent(r.error) + "\n";
  return out;
}

// Side-by-side table contrasting the plain and recovery-corrected runs.
inline std::string format_comparison(const MappingErrorReport& plain,
                                     const MappingErrorReport& with_recovery) {
  std::string out;
  out += "Technique Name\tError Percentage\n";
  out += "Similarity Maximization\t" + format_percent(plain.error) + "\n";
  out += "Similarity Maximization with Lost Box Recovery\t" +
         format_percent(with_recovery.error) + "\n";
  return out;
}

struct RenderOptions {
  bool flip_y = false;  // set when raw y already grows downward
  double width = 1000;
  double height = 640;
};

namespace detail {

struct Band {
  double top = 0;
  double height = 0;
};

struct Fit {
  double scale = 1;
  double off_x = 0;
  double off_y = 0;
  std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool flip_y = false;
  Band band;

  double sx(double x) const { return off_x + (x - static_cast<double>(min_x)) * scale; }
  double sy(double y) const {
    const double up = flip_y ? y - static_cast<double>(min_y) : static_cast<double>(max_y) - y;
    return band.top + off_y + up * scale;
  }
};

inline Fit fit_band(const Trajectory& traj, const Band& band, double margin_x, double usable_w,
                    double common_scale, bool flip_y) {
  Fit f;
  f.band = band;
  f.flip_y = flip_y;
  f.scale = common_scale;
  if (traj.empty()) return f;
  f.min_x = f.max_x = traj.points.front().x;
  f.min_y = f.max_y = traj.points.front().y;
  for (const SamplePoint& p : traj.points) {
    f.min_x = std::min(f.min_x, p.x);
    f.max_x = std::max(f.max_x, p.x);
    f.min_y = std::min(f.min_y, p.y);
    f.max_y = std::max(f.max_y, p.y);
  }
  const double w = static_cast<double>(f.max_x - f.min_x) * common_scale;
  const double h = static_cast<double>(f.max_y - f.min_y) * common_scale;
  f.off_x = margin_x + (usable_w - w) / 2.0;
  f.off_y = (band.height - h) / 2.0;
  return f;
}

inline double extent_or_one(std::int64_t lo, std::int64_t hi) {
  return std::max(static_cast<double>(hi - lo), 1.0);
}

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Centroid {
  double x = 0, y = 0;
};

// Mean over the inclusive sample range of strokes [a..b] (adjacent strokes
// are contiguous, so the union is one index run).
inline Centroid stroke_centroid(const Trajectory& traj, const std::vector<Stroke>& strokes,
                                std::size_t a, std::size_t b) {
  const std::size_t lo = strokes[a].start_index, hi = strokes[b].end_index;
  Centroid c;
  for (std::size_t k = lo; k <= hi; ++k) {
    c.x += static_cast<double>(traj.points[k].x);
    c.y += static_cast<double>(traj.points[k].y);
  }
  const double n = static_cast<double>(hi - lo + 1);
  c.x /= n;
  c.y /= n;
  return c;
}

inline void append_polylines(std::string& svg, const Trajectory& traj, const Fit& fit,
                             const char* color) {
  for (const PenRun& run : pen_runs(traj)) {
    if (run.kind != RunKind::Down) continue;
    if (run.length() == 1) {
      const SamplePoint& p = traj.points[run.start];
      svg += "  <circle cx=\"" + fmt2(fit.sx(static_cast<double>(p.x))) + "\" cy=\"" +
             fmt2(fit.sy(static_cast<double>(p.y))) + "\" r=\"2\" fill=\"" + color + "\"/>\n";
      continue;
    }
    svg += "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = run.start; k <= run.end; ++k) {
      const SamplePoint& p = traj.points[k];
      if (k != run.start) svg += ' ';
      svg += fmt2(fit.sx(static_cast<double>(p.x))) + "," +
             fmt2(fit.sy(static_cast<double>(p.y)));
    }
    svg += "\"/>\n";
  }
}

}  // namespace detail

// Deterministic standalone SVG: the reference signature in an upper band,
// the test signature in a lower band under a shared uniform scale, one
// line per path node joining the centroids of the mapped strokes, and the
// internal boundaries of the five test-side sections as dashed dividers.
inline std::string render_mapping(const Trajectory& ref, const Trajectory& test,
                                  const DtwPath& path, const std::vector<Stroke>& ref_strokes,
                                  const std::vector<Stroke>& test_strokes,
                                  const RenderOptions& opt = {}) {
  using detail::fmt2;

  for (const PathNode& n : path.nodes) {
    const std::size_t need_i = n.i + (n.layer == 3 ? 1 : 0);
    const std::size_t need_j = n.j + (n.layer == 2 ? 1 : 0);
    if (need_i >= ref_strokes.size() || need_j >= test_strokes.size())
      throw std::invalid_argument("path node outside the stroke lists");
  }

  const double margin_x = 40;
  const double usable_w = opt.width - 2 * margin_x;
  const detail::Band ref_band{40, 240};
  const detail::Band test_band{360, 240};

  double ref_w = 1, ref_h = 1, test_w = 1, test_h = 1;
  if (!ref.empty()) {
    auto [rx0, rx1] = std::minmax_element(ref.points.begin(), ref.points.end(),
                                          [](auto& a, auto& b) { return a.x < b.x; });
    auto [ry0, ry1] = std::minmax_element(ref.points.begin(), ref.points.end(),
                                          [](auto& a, auto& b) { return a.y < b.y; });
    ref_w = detail::extent_or_one(rx0->x, rx1->x);
    ref_h = detail::extent_or_one(ry0->y, ry1->y);
  }
  if (!test.empty()) {
    auto [tx0, tx1] = std::minmax_element(test.points.begin(), test.points.end(),
                                          [](auto& a, auto& b) { return a.x < b.x; });
    auto [ty0, ty1] = std::minmax_element(test.points.begin(), test.points.end(),
                                          [](auto& a, auto& b) { return a.y < b.y; });
    test_w = detail::extent_or_one(tx0->x, tx1->x);
    test_h = detail::extent_or_one(ty0->y, ty1->y);
  }
  const double scale = std::min(usable_w / std::max(ref_w, test_w),
                                ref_band.height / std::max(ref_h, test_h));

  const detail::Fit ref_fit =
      detail::fit_band(ref, ref_band, margin_x, usable_w, scale, opt.flip_y);
  const detail::Fit test_fit =
      detail::fit_band(test, test_band, margin_x, usable_w, scale, opt.flip_y);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(opt.width) +
         "\" height=\"" + fmt2(opt.height) + "\" viewBox=\"0 0 " + fmt2(opt.width) + " " +
         fmt2(opt.height) + "\">\n";
  svg += "  <rect width=\"" + fmt2(opt.width) + "\" height=\"" + fmt2(opt.height) +
         "\" fill=\"white\"/>\n";

  detail::append_polylines(svg, ref, ref_fit, "#1f3a93");
  detail::append_polylines(svg, test, test_fit, "#7d3c98");

  if (!test_strokes.empty()) {
    const std::array<SectionRange, 5> sections = divide_sections(test_strokes.size());
    for (std::size_t s = 0; s + 1 < sections.size(); ++s) {
      if (sections[s].size() == 0 || sections[s + 1].size() == 0) continue;
      const detail::Centroid left = detail::stroke_centroid(test, test_strokes,
                                                            sections[s].end - 1,
                                                            sections[s].end - 1);
      const detail::Centroid right = detail::stroke_centroid(test, test_strokes,
                                                             sections[s + 1].begin,
                                                             sections[s + 1].begin);
      const double x = (test_fit.sx(left.x) + test_fit.sx(right.x)) / 2.0;
      svg += "  <line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(test_band.top) + "\" x2=\"" +
             fmt2(x) + "\" y2=\"" + fmt2(test_band.top + test_band.height) +
             "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }
  }

  for (const PathNode& n : path.nodes) {
    const std::size_t ri_hi = n.i + (n.layer == 3 ? 1 : 0);
    const std::size_t tj_hi = n.j + (n.layer == 2 ? 1 : 0);
    const detail::Centroid rc = detail::stroke_centroid(ref, ref_strokes, n.i, ri_hi);
    const detail::Centroid tc = detail::stroke_centroid(test, test_strokes, n.j, tj_hi);
    svg += "  <line x1=\"" + fmt2(ref_fit.sx(rc.x)) + "\" y1=\"" + fmt2(ref_fit.sy(rc.y)) +
           "\" x2=\"" + fmt2(test_fit.sx(tc.x)) + "\" y2=\"" + fmt2(test_fit.sy(tc.y)) +
           "\" stroke=\"#2e8b57\" stroke-width=\"0.8\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace sigmap
